#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "untangle/configuration.hpp"

namespace untangle {

enum class ReductionKind : std::uint8_t { GtoMM, MMtoRB, RBtoTSP };

std::string_view to_string(ReductionKind kind);

/// A source configuration rebuilt in a stronger version by cloning points
/// within L-infinity distance `epsilon` of their originals.
///
///   GtoMM    a point of degree d > 1 becomes d clones, one per incident
///            segment copy; degree-1 points stay put, isolated points vanish.
///            point_map[p] lists clones in incident-copy order.
///   MMtoRB   every point becomes a red and a blue clone (point_map[p] =
///            {red, blue}); segment pq becomes p_red q_blue and p_blue q_red.
///   RBtoTSP  every red point r becomes r and r' (point_map[r] = {r, r'}),
///            blue points keep one clone; the tour is r1 b1 r1' r2 b2 r2' ...
///            closed by the connector segments r_i' r_{i+1}.
struct Reduction {
  ReductionKind kind;
  Configuration source;
  Configuration target;
  std::map<PointId, std::vector<PointId>> point_map;
  std::map<PointId, PointId> origin;  // target id -> source id
  Coord epsilon;
  Coord tilt;  // offset skew along the segment, from a fixed candidate list
  std::vector<Segment> connectors;          // RBtoTSP only
  std::size_t connector_crossings = 0;      // RBtoTSP: crossings involving a connector

  /// Target segment projected onto source ids.
  Segment project(const Segment& target_segment) const;
};

class ReductionError : public std::runtime_error {
 public:
  ReductionError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(what), step_(step) {}
  /// 1-based index of the first failing source flip, when a sequence failed.
  std::optional<std::size_t> step() const { return step_; }

 private:
  std::optional<std::size_t> step_;
};

/// min(L-inf distance between two points, L-inf distance between a point and
/// a segment not incident to it) / 1024. Always positive for distinct points.
Coord safe_epsilon(const PointSet& pts, std::span<const Segment> edges);

/// Maximum number of epsilon halvings before giving up.
inline constexpr int kMaxHalvings = 64;

Reduction reduce_g_to_mm(const Configuration& c);
Reduction reduce_mm_to_rb(const Configuration& c);
Reduction reduce_rb_to_tsp(const Configuration& c);

/// Builds the reduction with a given starting epsilon. Each epsilon is tried
/// with a few offset skews before it is halved.
Reduction build_reduction(ReductionKind kind, const Configuration& source, const Coord& epsilon);

struct TransformedSequence {
  Reduction reduction;  // may carry a smaller epsilon than the input
  std::vector<Flip> flips;
};

/// Simulates a source flip sequence on the target: one flip per source flip
/// for GtoMM, two for MMtoRB and RBtoTSP. Every target step is applied with
/// full legality checks and the final target must correspond to the final
/// source state. On a failed target step the reduction is rebuilt with half
/// the epsilon and the whole sequence retried.
TransformedSequence transform_sequence(const Reduction& r, const std::vector<Flip>& source_flips);

/// Final-state correspondence between a target and a source configuration
/// under the reduction's clone pairing.
bool corresponds(const Reduction& r, const Configuration& source_state, const Configuration& target_state);

}  // namespace untangle
