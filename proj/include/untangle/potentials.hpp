#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "untangle/configuration.hpp"

namespace untangle {

enum class LineSetKind : std::uint8_t { Full, NearConvex };

/// Lines used by a line potential.
///
/// Full holds every line through two points. NearConvex, for a designated
/// subset C in convex position, holds the union of
///   - lines through two points at least one of which is outside C, and
///   - lines through consecutive vertices of the hull of C (cyclic, |C| lines).
struct LineSet {
  LineSetKind kind = LineSetKind::Full;
  std::vector<Line> lines;               // sorted, unique
  std::vector<PointId> convex_subset;    // NearConvex only, sorted
};

/// Throws std::invalid_argument when a NearConvex subset is not in convex
/// position or references unknown points.
LineSet build_line_set(const PointSet& pts, LineSetKind kind, std::span<const PointId> convex_subset = {});

struct PotentialReport {
  std::uint64_t phi_x = 0;
  std::uint64_t phi_l_total = 0;
  std::vector<std::uint32_t> per_line;  // aligned with LineSet::lines

  std::uint64_t total() const { return phi_x + phi_l_total; }
};

std::uint64_t phi_x(const Configuration& c);

/// Number of edges (with multiplicity) crossed by l.
std::uint32_t phi_line(const Line& l, const Configuration& c);

PotentialReport phi_L(const Configuration& c, const LineSet& lines);

/// Crossings of l with the removed pair minus crossings with the added pair.
/// Depends only on the flip and the line.
int line_delta(const Flip& f, const Line& l, const PointSet& pts);

enum class LineClass : std::uint8_t { Dropping, Critical, Stable };

/// Dropping: l strictly separates the added segments.
/// Critical: l weakly separates them and contains exactly one flipped point.
/// Stable: anything else. Reporting only; line_delta is authoritative.
LineClass classify_line(const Flip& f, const Line& l, const PointSet& pts);

std::int64_t flip_drop(const Flip& f, const LineSet& lines, const PointSet& pts);

/// Position (1-based) of `target` among the points of P \ {p1, p4} lying on
/// target's side of the directed line p1 -> p4, ordered by angle from the ray
/// p1 -> p4. Uses orientation comparisons only.
std::size_t angular_rank(PointId p1, PointId p4, PointId target, const PointSet& pts);

}  // namespace untangle
