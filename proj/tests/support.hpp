#pragma once

// Shared fixtures and test-only oracles. The oracles deliberately avoid the
// orientation predicates used by the library: crossings are decided by
// solving for the intersection parameters with Cramer's rule.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "untangle/configuration.hpp"
#include "untangle/random.hpp"

namespace untangle::testing {

inline Point pt(std::uint32_t id, long x, long y, Color c = Color::None) {
  return Point{PointId{id}, Coord(x), Coord(y), c};
}

inline PointId P(std::uint32_t id) { return PointId{id}; }

inline Segment S(std::uint32_t a, std::uint32_t b) { return Segment::make(PointId{a}, PointId{b}); }

inline Line L(std::uint32_t a, std::uint32_t b) { return Line::make(PointId{a}, PointId{b}); }

// p0=(0,0), p1=(2,2), p2=(0,2), p3=(2,0): diagonals are 0-1 and 2-3.
inline PointSetPtr square_points(bool colored = false) {
  return make_point_set({pt(0, 0, 0, colored ? Color::Red : Color::None), pt(1, 2, 2, colored ? Color::Blue : Color::None),
                         pt(2, 0, 2, colored ? Color::Red : Color::None), pt(3, 2, 0, colored ? Color::Blue : Color::None)});
}

inline Configuration square_diagonals(Version v = Version::MM) {
  return Configuration(square_points(v == Version::RB), v, std::vector<Segment>{S(0, 1), S(2, 3)});
}

inline Configuration square_sides() {
  return Configuration(square_points(), Version::MM, std::vector<Segment>{S(0, 2), S(1, 3)});
}

// Parameters (t, u) with a + t(b - a) = c + u(d - c), or nothing if parallel.
inline std::optional<std::pair<Coord, Coord>> intersection_parameters(const Point& a, const Point& b, const Point& c,
                                                                      const Point& d) {
  const Coord rx = b.x - a.x, ry = b.y - a.y;
  const Coord sx = d.x - c.x, sy = d.y - c.y;
  const Coord denom = rx * sy - ry * sx;
  if (denom == 0) return std::nullopt;
  const Coord qx = c.x - a.x, qy = c.y - a.y;
  return std::pair<Coord, Coord>{(qx * sy - qy * sx) / denom, (qx * ry - qy * rx) / denom};
}

// Oracle for segments_cross on points in general position.
inline bool cramer_segments_cross(const Segment& s1, const Segment& s2, const PointSet& pts) {
  if (s1.shares_endpoint(s2)) return false;
  const auto tu = intersection_parameters(pts.at(s1.a), pts.at(s1.b), pts.at(s2.a), pts.at(s2.b));
  if (!tu) return false;
  return tu->first > 0 && tu->first < 1 && tu->second > 0 && tu->second < 1;
}

// Oracle for line_crosses_segment: the line meets the segment at an interior
// parameter.
inline bool cramer_line_crosses(const Line& l, const Segment& s, const PointSet& pts) {
  const auto tu = intersection_parameters(pts.at(s.a), pts.at(s.b), pts.at(l.p), pts.at(l.q));
  if (!tu) return false;
  return tu->first > 0 && tu->first < 1;
}

// Random integer points in general position (rejection on collinear triples).
inline PointSetPtr random_general_points(std::size_t n, std::uint64_t seed, long box = 200) {
  Rng rng(seed);
  std::vector<Point> out;
  while (out.size() < n) {
    Point cand = pt(static_cast<std::uint32_t>(out.size()), rng.between(0, box), rng.between(0, box));
    bool ok = true;
    for (std::size_t i = 0; i < out.size() && ok; ++i) {
      if (out[i].x == cand.x && out[i].y == cand.y) ok = false;
      for (std::size_t j = i + 1; j < out.size() && ok; ++j) {
        if (orientation(out[i], out[j], cand) == 0) ok = false;
      }
    }
    if (ok) out.push_back(cand);
  }
  return make_point_set(std::move(out));
}

// Every perfect matching on the given ids.
inline void all_matchings(std::vector<PointId> ids, std::vector<Segment>& current,
                          std::vector<std::vector<Segment>>& out) {
  if (ids.empty()) {
    out.push_back(current);
    return;
  }
  const PointId first = ids.front();
  for (std::size_t i = 1; i < ids.size(); ++i) {
    std::vector<PointId> rest;
    for (std::size_t j = 1; j < ids.size(); ++j) {
      if (j != i) rest.push_back(ids[j]);
    }
    current.push_back(Segment::make(first, ids[i]));
    all_matchings(rest, current, out);
    current.pop_back();
  }
}

inline std::vector<std::vector<Segment>> all_matchings(const std::vector<PointId>& ids) {
  std::vector<std::vector<Segment>> out;
  std::vector<Segment> current;
  all_matchings(ids, current, out);
  return out;
}

// Every Hamiltonian cycle on ids (as edge lists), fixing ids[0] first and
// breaking the reflection symmetry.
inline std::vector<std::vector<Segment>> all_tours(const std::vector<PointId>& ids) {
  std::vector<std::vector<Segment>> out;
  std::vector<PointId> rest(ids.begin() + 1, ids.end());
  std::sort(rest.begin(), rest.end());
  do {
    if (rest.front() > rest.back()) continue;
    std::vector<Segment> edges;
    PointId prev = ids[0];
    for (PointId p : rest) {
      edges.push_back(Segment::make(prev, p));
      prev = p;
    }
    edges.push_back(Segment::make(prev, ids[0]));
    out.push_back(edges);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

// Every flip on every crossing pair of a point set, ignoring versions.
inline std::vector<Flip> all_geometric_flips(const PointSet& pts) {
  const auto ids = pts.ids();
  std::vector<Flip> out;
  const std::size_t n = ids.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) {
          const PointId q[4] = {ids[a], ids[b], ids[c], ids[d]};
          for (const auto& [i, j, k, l] : {std::array<int, 4>{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}) {
            const Segment s1 = Segment::make(q[i], q[j]), s2 = Segment::make(q[k], q[l]);
            if (!segments_cross(s1, s2, pts)) continue;
            for (const auto& [x, y] : replacement_pairs(s1, s2, pts)) out.push_back(Flip::make(s1, s2, x, y));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace untangle::testing
