#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "untangle/geometry.hpp"

namespace untangle {

// MM: monochromatic perfect matching, RB: red-blue perfect matching,
// TSP: Hamiltonian cycle, G: arbitrary multigraph.
enum class Version : std::uint8_t { MM, RB, TSP, G };

std::string_view to_string(Version v);
Version parse_version(std::string_view text);

/// Segment multiset: canonical segment -> multiplicity (always >= 1).
using EdgeMultiset = std::map<Segment, std::uint32_t>;

class Configuration {
 public:
  Configuration(PointSetPtr points, Version version, const std::vector<Segment>& edges);
  Configuration(PointSetPtr points, Version version, EdgeMultiset edges);

  const PointSet& points() const { return *points_; }
  const PointSetPtr& point_set() const { return points_; }
  Version version() const { return version_; }
  const EdgeMultiset& edges() const { return edges_; }

  std::size_t edge_count() const { return edge_count_; }
  std::uint32_t multiplicity(const Segment& s) const;
  bool contains(const Segment& s) const { return multiplicity(s) > 0; }
  /// Expanded multiset in ascending order.
  std::vector<Segment> edge_list() const;
  /// Degree per point, indexed like points().points().
  std::vector<std::uint32_t> degrees() const;

  /// Same points, same edges, different property tag. Leaving RB clears colors.
  Configuration with_version(Version v) const;

  /// Equal point set (by identity or by value) and equal edge multiset and tag.
  bool operator==(const Configuration& other) const;

 private:
  PointSetPtr points_;
  Version version_;
  EdgeMultiset edges_;
  std::size_t edge_count_ = 0;
};

bool same_points(const PointSet& a, const PointSet& b);

enum class ViolationKind : std::uint8_t {
  NotGeneralPosition,
  DegreeNotOne,
  DegreeNotTwo,
  RepeatedSegment,
  NotSingleCycle,
  TooFewPoints,
  MonochromaticEdge,
  UncoloredPoint,
  ColorImbalance,
  UnexpectedColor,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Version invariants plus general position. Empty result means valid.
std::vector<Violation> validate(const Configuration& c);

/// One entry per unordered pair of edge copies that cross, first < second.
/// Copies of the same segment never cross, so a pair (s, t) of crossing
/// segments appears multiplicity(s) * multiplicity(t) times.
std::vector<SegmentPair> crossings(const Configuration& c);

/// Canonical identity of a flip: the sorted set of its four segments.
struct FlipKey {
  std::array<Segment, 4> segments;

  auto operator<=>(const FlipKey&) const = default;
  std::string to_string() const;
};

struct FlipKeyHash {
  std::size_t operator()(const FlipKey& k) const noexcept;
};

/// <removed[0], removed[1] -> added[0], added[1]>, each pair sorted.
struct Flip {
  std::array<Segment, 2> removed;
  std::array<Segment, 2> added;

  static Flip make(Segment r1, Segment r2, Segment a1, Segment a2);

  FlipKey key() const;
  std::string to_string() const;

  bool operator==(const Flip&) const = default;
};

FlipKey canonical_flip_id(const Flip& f);

/// Removed pair crosses and the added pair is one of its replacement pairs.
bool is_well_formed(const Flip& f, const PointSet& pts);

enum class FlipFailure : std::uint8_t { SegmentNotPresent, NotCrossing, NotReplacementPair, VersionViolation };

class FlipError : public std::runtime_error {
 public:
  FlipError(FlipFailure failure, const std::string& what) : std::runtime_error(what), failure_(failure) {}
  FlipFailure failure() const { return failure_; }

 private:
  FlipFailure failure_;
};

/// Every legal flip, sorted by key. MM and G: both replacement pairs; RB: the
/// color-respecting pair; TSP: the pair that keeps a single cycle.
std::vector<Flip> applicable_flips(const Configuration& c);

/// Throws FlipError naming the failed precondition.
Configuration apply_flip(const Configuration& c, const Flip& f);

/// Number of connected components of the edge graph (isolated points count).
std::size_t component_count(const Configuration& c);

}  // namespace untangle
