#include "untangle/reductions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <variant>

namespace untangle {

namespace {

struct Vec {
  Coord x;
  Coord y;
};

// Direction from -> to scaled to L-infinity length 1.
Vec linf_direction(const Point& from, const Point& to) {
  Coord dx = to.x - from.x;
  Coord dy = to.y - from.y;
  const Coord ax = abs(dx), ay = abs(dy);
  const Coord m = ax > ay ? ax : ay;
  return {dx / m, dy / m};
}

Vec perpendicular(const Vec& v) { return {-v.y, v.x}; }

// Direction from -> to scaled by max(|dx|,|dy|) / |v|^2, so its L-infinity
// length is at most 1. The tips lie on four circles through the origin; tips
// on the L-infinity unit square would put three clones of a point on a line
// whenever three directions hit the same side.
Vec round_direction(const Point& from, const Point& to) {
  const Coord dx = to.x - from.x, dy = to.y - from.y;
  const Coord ax = abs(dx), ay = abs(dy);
  const Coord m = ax > ay ? ax : ay;
  const Coord scale = m / (dx * dx + dy * dy);
  return {dx * scale, dy * scale};
}

// Perpendicular to d, skewed by tilt along d, rescaled to L-infinity length 1.
Vec skewed_normal(const Vec& d, const Coord& tilt) {
  const Vec w{-d.y + tilt * d.x, d.x + tilt * d.y};
  const Coord ax = abs(w.x), ay = abs(w.y);
  const Coord m = ax > ay ? ax : ay;
  return {w.x / m, w.y / m};
}

Point displaced(const Point& p, PointId id, const Vec& w, const Coord& scale, Color color) {
  return Point{id, p.x + scale * w.x, p.y + scale * w.y, color};
}

Point moved(const Point& p, PointId id, Color color) { return Point{id, p.x, p.y, color}; }

Coord min_coord(const Coord& a, const Coord& b) { return a < b ? a : b; }

void require_version(const Configuration& c, Version want, std::string_view what) {
  if (c.version() != want) {
    throw std::invalid_argument(std::string(what) + " expects a " + std::string(to_string(want)) + " configuration");
  }
  if (const auto v = validate(c); !v.empty()) {
    throw std::invalid_argument(std::string(what) + ": invalid source: " + v.front().message);
  }
}

// Bound on the perpendicular spread of parallel copies around a shared
// endpoint, from the smallest angular gap between incident segments.
Coord copy_spread(const Configuration& c) {
  Coord spread(1, 2);
  const auto& pts = c.points();
  std::map<PointId, std::vector<Vec>> incident;
  for (const auto& [s, m] : c.edges()) {
    incident[s.a].push_back(linf_direction(pts.at(s.a), pts.at(s.b)));
    incident[s.b].push_back(linf_direction(pts.at(s.b), pts.at(s.a)));
  }
  for (const auto& [p, dirs] : incident) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = i + 1; j < dirs.size(); ++j) {
        const Coord cross = abs(dirs[i].x * dirs[j].y - dirs[i].y * dirs[j].x);
        spread = min_coord(spread, cross / 4);
      }
    }
  }
  return spread;
}

Reduction construct_g_to_mm(const Configuration& source, const Coord& eps, const Coord& spread, const Coord& tilt) {
  const auto& pts = source.points();
  Reduction r{ReductionKind::GtoMM, source, source, {}, {}, eps, tilt, {}, 0};

  struct Copy {
    Segment segment;
    std::uint32_t index;
    std::uint32_t multiplicity;
  };
  std::map<PointId, std::vector<std::size_t>> incident;
  std::vector<Copy> copies;
  for (const auto& [s, m] : source.edges()) {
    for (std::uint32_t k = 0; k < m; ++k) {
      incident[s.a].push_back(copies.size());
      incident[s.b].push_back(copies.size());
      copies.push_back({s, k, m});
    }
  }

  std::vector<Point> cloned;
  std::vector<std::array<PointId, 2>> ends(copies.size());
  std::uint32_t next_id = 0;
  for (const auto& p : pts.points()) {
    const auto it = incident.find(p.id);
    if (it == incident.end()) {
      r.point_map[p.id] = {};
      continue;
    }
    auto& clones = r.point_map[p.id];
    const bool replicate = it->second.size() > 1;
    for (std::size_t ci : it->second) {
      const Copy& copy = copies[ci];
      const PointId id{next_id++};
      if (!replicate) {
        cloned.push_back(moved(p, id, Color::None));
      } else {
        // Along the segment toward the other endpoint, with parallel copies of
        // one segment fanned out perpendicular to it (same side at both ends).
        const Vec along = round_direction(p, pts.at(copy.segment.other(p.id)));
        const Vec across = perpendicular(linf_direction(pts.at(copy.segment.a), pts.at(copy.segment.b)));
        const Coord lateral = spread * (Coord(copy.index) + tilt) / Coord(copy.multiplicity);
        const Vec w{(along.x + lateral * across.x) / 2, (along.y + lateral * across.y) / 2};
        cloned.push_back(displaced(p, id, w, eps, Color::None));
      }
      clones.push_back(id);
      r.origin[id] = p.id;
      ends[ci][copy.segment.a == p.id ? 0 : 1] = id;
    }
  }

  std::vector<Segment> edges;
  for (const auto& e : ends) edges.push_back(Segment::make(e[0], e[1]));
  r.target = Configuration(make_point_set(std::move(cloned)), Version::MM, edges);
  return r;
}

Reduction construct_mm_to_rb(const Configuration& source, const Coord& eps, const Coord& tilt) {
  const auto& pts = source.points();
  Reduction r{ReductionKind::MMtoRB, source, source, {}, {}, eps, tilt, {}, 0};

  std::map<PointId, Segment> partner;
  for (const auto& [s, m] : source.edges()) {
    partner.emplace(s.a, s);
    partner.emplace(s.b, s);
  }

  std::vector<Point> cloned;
  std::uint32_t k = 0;
  for (const auto& p : pts.points()) {
    const Segment s = partner.at(p.id);
    const Vec n = skewed_normal(linf_direction(pts.at(s.a), pts.at(s.b)), tilt);
    // a_red and b_blue on the +n side, a_blue and b_red on the -n side, so the
    // two copies of ab are parallel and do not cross.
    const Coord red_side = p.id == s.a ? eps : -eps;
    const PointId red{2 * k}, blue{2 * k + 1};
    cloned.push_back(displaced(p, red, n, red_side, Color::Red));
    cloned.push_back(displaced(p, blue, n, -red_side, Color::Blue));
    r.point_map[p.id] = {red, blue};
    r.origin[red] = p.id;
    r.origin[blue] = p.id;
    ++k;
  }

  std::vector<Segment> edges;
  for (const auto& [s, m] : source.edges()) {
    const auto& a = r.point_map.at(s.a);
    const auto& b = r.point_map.at(s.b);
    edges.push_back(Segment::make(a[0], b[1]));
    edges.push_back(Segment::make(a[1], b[0]));
  }
  r.target = Configuration(make_point_set(std::move(cloned)), Version::RB, edges);
  return r;
}

Reduction construct_rb_to_tsp(const Configuration& source, const Coord& eps, const Coord& tilt) {
  const auto& pts = source.points();
  Reduction r{ReductionKind::RBtoTSP, source, source, {}, {}, eps, tilt, {}, 0};

  std::vector<Point> cloned;
  std::vector<Segment> edges;
  std::uint32_t i = 0;
  const std::size_t n = source.edges().size();
  for (const auto& [s, m] : source.edges()) {
    const PointId red_src = pts.at(s.a).color == Color::Red ? s.a : s.b;
    const PointId blue_src = s.other(red_src);
    const Point& red = pts.at(red_src);
    const Point& blue = pts.at(blue_src);
    const Vec nrm = skewed_normal(linf_direction(red, blue), tilt);
    const PointId r_id{3 * i}, b_id{3 * i + 1}, rp_id{3 * i + 2};
    cloned.push_back(displaced(red, r_id, nrm, eps, Color::None));
    cloned.push_back(moved(blue, b_id, Color::None));
    cloned.push_back(displaced(red, rp_id, nrm, -eps, Color::None));
    r.point_map[red_src] = {r_id, rp_id};
    r.point_map[blue_src] = {b_id};
    r.origin[r_id] = red_src;
    r.origin[rp_id] = red_src;
    r.origin[b_id] = blue_src;
    edges.push_back(Segment::make(r_id, b_id));
    edges.push_back(Segment::make(b_id, rp_id));
    const Segment connector = Segment::make(rp_id, PointId{static_cast<std::uint32_t>(3 * ((i + 1) % n))});
    edges.push_back(connector);
    r.connectors.push_back(connector);
    ++i;
  }
  r.target = Configuration(make_point_set(std::move(cloned)), Version::TSP, edges);
  return r;
}

// Target crossings restricted to `considered` must be exactly `per_source`
// lifts of each source crossing.
std::optional<std::string> check_crossing_lift(const Reduction& r, std::size_t per_source,
                                               const std::set<Segment>& excluded) {
  std::uint64_t lifted = 0;
  for (const auto& [x, y] : crossings(r.target)) {
    if (excluded.contains(x) || excluded.contains(y)) continue;
    const Segment sx = r.project(x), sy = r.project(y);
    if (sx == sy || !segments_cross(sx, sy, r.source.points())) {
      return "target crossing " + to_string(x) + " x " + to_string(y) + " has no source counterpart";
    }
    ++lifted;
  }
  const auto expected = per_source * crossings(r.source).size();
  if (lifted != expected) {
    return "target has " + std::to_string(lifted) + " lifted crossings, expected " + std::to_string(expected);
  }
  return std::nullopt;
}

std::optional<std::string> check_reduction(Reduction& r) {
  if (const auto v = validate(r.target); !v.empty()) return v.front().message;
  switch (r.kind) {
    case ReductionKind::GtoMM:
      return check_crossing_lift(r, 1, {});
    case ReductionKind::MMtoRB:
      return check_crossing_lift(r, 4, {});
    case ReductionKind::RBtoTSP: {
      const std::set<Segment> excluded(r.connectors.begin(), r.connectors.end());
      r.connector_crossings = 0;
      for (const auto& [x, y] : crossings(r.target)) {
        if (excluded.contains(x) || excluded.contains(y)) ++r.connector_crossings;
      }
      return check_crossing_lift(r, 4, excluded);
    }
  }
  return std::nullopt;
}

std::vector<Segment> distinct_edges(const Configuration& c) {
  std::vector<Segment> out;
  for (const auto& [s, m] : c.edges()) out.push_back(s);
  return out;
}

}  // namespace

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::GtoMM: return "G->MM";
    case ReductionKind::MMtoRB: return "MM->RB";
    case ReductionKind::RBtoTSP: return "RB->TSP";
  }
  return "?";
}

Segment Reduction::project(const Segment& target_segment) const {
  return Segment::make(origin.at(target_segment.a), origin.at(target_segment.b));
}

Coord safe_epsilon(const PointSet& pts, std::span<const Segment> edges) {
  std::optional<Coord> clearance;
  const auto consider = [&](Coord d) {
    if (!clearance || d < *clearance) clearance = std::move(d);
  };
  const auto all = pts.points();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) consider(linf_distance(all[i], all[j]));
  }
  for (const auto& s : edges) {
    const Point& a = pts.at(s.a);
    const Point& b = pts.at(s.b);
    for (const auto& p : all) {
      if (s.has(p.id)) continue;
      consider(linf_distance(p, a, b));
    }
  }
  Coord eps = clearance.value_or(Coord(1)) / 1024;
  eps.canonicalize();
  return eps;
}

Reduction build_reduction(ReductionKind kind, const Configuration& source, const Coord& epsilon) {
  switch (kind) {
    case ReductionKind::GtoMM: require_version(source, Version::G, "G->MM reduction"); break;
    case ReductionKind::MMtoRB: require_version(source, Version::MM, "MM->RB reduction"); break;
    case ReductionKind::RBtoTSP: require_version(source, Version::RB, "RB->TSP reduction"); break;
  }
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");

  Coord eps = epsilon;
  Coord spread = kind == ReductionKind::GtoMM ? copy_spread(source) : Coord(0);
  // Symmetric inputs (axis-parallel segments, equal offsets) can put clones on
  // a common line for every epsilon; a skewed offset direction breaks that.
  static const std::array<Coord, 6> tilts{Coord(0), Coord(1, 3), Coord(2, 7), Coord(3, 11), Coord(1, 13),
                                          Coord(5, 17)};
  std::string last_failure;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
    for (const auto& tilt : tilts) {
      Reduction r = [&] {
        switch (kind) {
          case ReductionKind::GtoMM: return construct_g_to_mm(source, eps, spread, tilt);
          case ReductionKind::MMtoRB: return construct_mm_to_rb(source, eps, tilt);
          case ReductionKind::RBtoTSP: break;
        }
        return construct_rb_to_tsp(source, eps, tilt);
      }();
      const auto failure = check_reduction(r);
      if (!failure) return r;
      last_failure = *failure;
    }
    eps /= 2;
    spread /= 2;
  }
  throw ReductionError("epsilon refinement failed after " + std::to_string(kMaxHalvings) +
                       " halvings: " + last_failure);
}

Reduction reduce_g_to_mm(const Configuration& c) {
  return build_reduction(ReductionKind::GtoMM, c, safe_epsilon(c.points(), distinct_edges(c)));
}

Reduction reduce_mm_to_rb(const Configuration& c) {
  return build_reduction(ReductionKind::MMtoRB, c, safe_epsilon(c.points(), distinct_edges(c)));
}

Reduction reduce_rb_to_tsp(const Configuration& c) {
  return build_reduction(ReductionKind::RBtoTSP, c, safe_epsilon(c.points(), distinct_edges(c)));
}

bool corresponds(const Reduction& r, const Configuration& source_state, const Configuration& target_state) {
  EdgeMultiset expected;
  switch (r.kind) {
    case ReductionKind::GtoMM: {
      EdgeMultiset projected;
      for (const auto& [s, m] : target_state.edges()) projected[r.project(s)] += m;
      return projected == source_state.edges();
    }
    case ReductionKind::MMtoRB:
      for (const auto& [s, m] : source_state.edges()) {
        const auto& a = r.point_map.at(s.a);
        const auto& b = r.point_map.at(s.b);
        expected[Segment::make(a[0], b[1])] += m;
        expected[Segment::make(a[1], b[0])] += m;
      }
      break;
    case ReductionKind::RBtoTSP:
      for (const auto& [s, m] : source_state.edges()) {
        const PointId red = source_state.points().at(s.a).color == Color::Red ? s.a : s.b;
        const auto& clones = r.point_map.at(red);
        const PointId blue = r.point_map.at(s.other(red)).front();
        expected[Segment::make(clones[0], blue)] += m;
        expected[Segment::make(clones[1], blue)] += m;
      }
      for (const auto& c : r.connectors) ++expected[c];
      break;
  }
  return expected == target_state.edges();
}

namespace {

struct SimulationFailure {
  std::size_t step;
  std::string message;
};

using Simulation = std::variant<std::vector<Flip>, SimulationFailure>;

Simulation simulate(const Reduction& r, const std::vector<Flip>& source_flips) {
  Configuration src = r.source;
  Configuration tgt = r.target;
  std::vector<Flip> out;

  // GtoMM: which target segments currently stand for each source segment.
  std::map<Segment, std::vector<Segment>> copies;
  if (r.kind == ReductionKind::GtoMM) {
    for (const auto& [t, m] : tgt.edges()) copies[r.project(t)].push_back(t);
  }

  for (std::size_t i = 0; i < source_flips.size(); ++i) {
    const Flip& f = source_flips[i];
    const std::size_t step = i + 1;
    std::vector<Flip> expanded;

    try {
      switch (r.kind) {
        case ReductionKind::GtoMM: {
          auto& c0 = copies.at(f.removed[0]);
          auto& c1 = copies.at(f.removed[1]);
          std::sort(c0.begin(), c0.end());
          std::sort(c1.begin(), c1.end());
          const Segment t0 = c0.front(), t1 = c1.front();
          std::map<PointId, PointId> clone_of;
          for (PointId t : {t0.a, t0.b, t1.a, t1.b}) clone_of[r.origin.at(t)] = t;
          const auto lift = [&](const Segment& s) { return Segment::make(clone_of.at(s.a), clone_of.at(s.b)); };
          expanded.push_back(Flip::make(t0, t1, lift(f.added[0]), lift(f.added[1])));
          c0.erase(c0.begin());
          c1.erase(c1.begin());
          copies[f.added[0]].push_back(lift(f.added[0]));
          copies[f.added[1]].push_back(lift(f.added[1]));
          break;
        }
        case ReductionKind::MMtoRB: {
          // Orient the removed pair so the added pair is {x1 x2, y1 y2}.
          PointId x1 = f.removed[0].a, y1 = f.removed[0].b;
          PointId x2 = f.removed[1].a, y2 = f.removed[1].b;
          const Segment want = Segment::make(x1, x2);
          if (f.added[0] != want && f.added[1] != want) std::swap(x2, y2);
          const auto red = [&](PointId p) { return r.point_map.at(p)[0]; };
          const auto blue = [&](PointId p) { return r.point_map.at(p)[1]; };
          expanded.push_back(Flip::make(Segment::make(red(x1), blue(y1)), Segment::make(blue(x2), red(y2)),
                                        Segment::make(red(x1), blue(x2)), Segment::make(blue(y1), red(y2))));
          expanded.push_back(Flip::make(Segment::make(blue(x1), red(y1)), Segment::make(red(x2), blue(y2)),
                                        Segment::make(blue(x1), red(x2)), Segment::make(red(y1), blue(y2))));
          break;
        }
        case ReductionKind::RBtoTSP: {
          const auto& pts = src.points();
          const auto split = [&](const Segment& s) {
            const PointId red = pts.at(s.a).color == Color::Red ? s.a : s.b;
            return std::pair{red, s.other(red)};
          };
          const auto [r1, b1] = split(f.removed[0]);
          const auto [r2, b2] = split(f.removed[1]);
          const PointId R1 = r.point_map.at(r1)[0], R1p = r.point_map.at(r1)[1];
          const PointId R2 = r.point_map.at(r2)[0], R2p = r.point_map.at(r2)[1];
          const PointId B1 = r.point_map.at(b1)[0], B2 = r.point_map.at(b2)[0];
          // The clone of r2 that pairs with r1 first depends on how the two
          // blocks are oriented along the current tour; try the r2' pairing
          // first and fall back to r2.
          for (const auto& [c, cbar] : {std::pair{R2p, R2}, std::pair{R2, R2p}}) {
            Flip a = Flip::make(Segment::make(R1, B1), Segment::make(c, B2), Segment::make(R1, B2),
                                Segment::make(c, B1));
            try {
              (void)apply_flip(tgt, a);
            } catch (const FlipError& e) {
              if (e.failure() == FlipFailure::VersionViolation) continue;
              throw;
            }
            expanded.push_back(a);
            expanded.push_back(Flip::make(Segment::make(R1p, B1), Segment::make(cbar, B2), Segment::make(R1p, B2),
                                          Segment::make(cbar, B1)));
            break;
          }
          if (expanded.empty()) return SimulationFailure{step, "no tour-preserving first flip"};
          break;
        }
      }

      if (expanded.size() == 2) {
        const std::set<Segment> touched{expanded[0].removed[0], expanded[0].removed[1], expanded[1].removed[0],
                                        expanded[1].removed[1]};
        if (touched.size() != 4) return SimulationFailure{step, "simulating flips share a segment"};
      }
      for (const auto& g : expanded) {
        tgt = apply_flip(tgt, g);
        out.push_back(g);
      }
    } catch (const FlipError& e) {
      return SimulationFailure{step, e.what()};
    }
    src = apply_flip(src, f);
  }

  if (!corresponds(r, src, tgt)) {
    return SimulationFailure{source_flips.size(), "final target does not correspond to the final source"};
  }
  return out;
}

}  // namespace

TransformedSequence transform_sequence(const Reduction& r, const std::vector<Flip>& source_flips) {
  {
    Configuration check = r.source;
    for (std::size_t i = 0; i < source_flips.size(); ++i) {
      try {
        check = apply_flip(check, source_flips[i]);
      } catch (const FlipError& e) {
        throw ReductionError(std::string("source sequence invalid: ") + e.what(), i + 1);
      }
    }
  }

  Reduction current = r;
  std::optional<SimulationFailure> first_failure;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
    auto outcome = simulate(current, source_flips);
    if (auto* flips = std::get_if<std::vector<Flip>>(&outcome)) {
      return TransformedSequence{std::move(current), std::move(*flips)};
    }
    if (!first_failure) first_failure = std::get<SimulationFailure>(outcome);
    current = build_reduction(r.kind, r.source, current.epsilon / 2);
  }
  throw ReductionError("retry budget exhausted; first failure: " + first_failure->message, first_failure->step);
}

}  // namespace untangle
