#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace untangle {

// Exact rational coordinate. mpq_class keeps values canonical after every
// arithmetic operation; parse_coord canonicalizes string input.
using Coord = mpq_class;

/// Parses "p/q" or "p" (optional leading '-'). Throws std::invalid_argument.
Coord parse_coord(std::string_view text);
/// Always emits "p/q" in lowest terms, q > 0 (integers as "p/1").
std::string format_coord(const Coord& value);

enum class Color : std::uint8_t { None, Red, Blue };

std::string_view to_string(Color color);
Color parse_color(std::string_view text);

struct PointId {
  std::uint32_t value = 0;
  auto operator<=>(const PointId&) const = default;
};

struct Point {
  PointId id;
  Coord x;
  Coord y;
  Color color = Color::None;
};

/// Unordered pair of distinct point ids stored as (min, max).
struct Segment {
  PointId a;
  PointId b;

  static Segment make(PointId p, PointId q);

  bool has(PointId p) const { return a == p || b == p; }
  PointId other(PointId p) const { return p == a ? b : a; }
  bool shares_endpoint(const Segment& s) const { return has(s.a) || has(s.b); }

  auto operator<=>(const Segment&) const = default;
};

/// Supporting line through two points, canonical like Segment.
struct Line {
  PointId p;
  PointId q;

  static Line make(PointId u, PointId v);
  static Line through(const Segment& s) { return Line{s.a, s.b}; }

  auto operator<=>(const Line&) const = default;
};

std::string to_string(const Segment& s);
std::string to_string(const Line& l);

/// Sign of det(b - a, c - a): +1 counterclockwise, -1 clockwise, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

/// Immutable point set with exact orientation queries.
///
/// Coordinates are scaled by the common denominator once at construction so
/// that orientation runs on integers: machine integers with a 128-bit
/// determinant when every scaled coordinate fits in 62 bits, GMP integers
/// otherwise. Both paths are exact. The general-position flag is computed on
/// first request and cached (thread-safe).
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points);

  PointSet(const PointSet&) = delete;
  PointSet& operator=(const PointSet&) = delete;

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  /// Sorted by id.
  std::span<const Point> points() const { return points_; }
  std::vector<PointId> ids() const;

  bool contains(PointId id) const;
  std::size_t index_of(PointId id) const;  // throws std::out_of_range
  const Point& at(PointId id) const { return points_[index_of(id)]; }

  int orientation(PointId a, PointId b, PointId c) const {
    return orientation_at(index_of(a), index_of(b), index_of(c));
  }
  int orientation_at(std::size_t a, std::size_t b, std::size_t c) const;

  /// No three points collinear (exact, all triples). Cached.
  bool general_position() const;

 private:
  std::vector<Point> points_;
  bool dense_ids_ = true;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;

  bool machine_kernel_ = true;
  std::vector<std::int64_t> ix_;
  std::vector<std::int64_t> iy_;
  std::vector<mpz_class> zx_;
  std::vector<mpz_class> zy_;

  mutable std::once_flag general_position_once_;
  mutable bool general_position_ = false;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

PointSetPtr make_point_set(std::vector<Point> points);

/// Closed segments meet in exactly one point that is an endpoint of neither.
/// For segments in general position this is a strict interior crossing.
bool segments_cross(const Segment& s1, const Segment& s2, const PointSet& pts);

/// The line meets s in exactly one point that is not an endpoint of s.
bool line_crosses_segment(const Line& l, const Segment& s, const PointSet& pts);

/// Every point of `subset` is a strict vertex of its convex hull.
/// Subsets with fewer than three points are convex by definition.
bool in_convex_position(std::span<const PointId> subset, const PointSet& pts);

/// Strict hull vertices of `subset` in counterclockwise order, starting at the
/// lexicographically smallest point.
std::vector<PointId> convex_hull(std::span<const PointId> subset, const PointSet& pts);

bool is_general_position(const PointSet& pts);

using SegmentPair = std::pair<Segment, Segment>;

/// The two ways to reconnect the endpoints of a crossing pair, each a pair of
/// mutually non-crossing segments closing a 4-cycle with (s1, s2). Pairs are
/// canonical (first < second) and returned in ascending order.
/// Throws std::invalid_argument("not a crossing pair") when s1, s2 do not cross.
std::array<SegmentPair, 2> replacement_pairs(const Segment& s1, const Segment& s2,
                                             const PointSet& pts);

/// Exact L-infinity distance between a point and a closed segment.
Coord linf_distance(const Point& p, const Point& a, const Point& b);
Coord linf_distance(const Point& p, const Point& q);

}  // namespace untangle
