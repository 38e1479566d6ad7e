#include "untangle/generators.hpp"

#include <algorithm>
#include <set>

#include "untangle/random.hpp"

namespace untangle {

namespace {

bool collinear(const Point& a, const Point& b, const Point& c) { return orientation(a, b, c) == 0; }

bool fits(const std::vector<Point>& placed, const Point& candidate) {
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (placed[i].x == candidate.x && placed[i].y == candidate.y) return false;
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      if (collinear(placed[i], placed[j], candidate)) return false;
    }
  }
  return true;
}

std::vector<Point> parabola_points(std::size_t count, std::int64_t box, Rng& rng) {
  if (box < static_cast<std::int64_t>(count)) {
    throw GenerationError("box " + std::to_string(box) + " cannot host " + std::to_string(count) +
                          " distinct parabola abscissae");
  }
  std::set<std::int64_t> picked;
  while (picked.size() < count) picked.insert(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(box))));
  std::vector<Point> out;
  std::uint32_t id = 0;
  for (std::int64_t i : picked) {
    out.push_back(Point{PointId{id++}, Coord(static_cast<long>(i)), Coord(static_cast<long>(i * i)), Color::None});
  }
  return out;
}

}  // namespace

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::RandomGeneral: return "random";
    case GenKind::Convex: return "convex";
    case GenKind::NearConvex: return "nearconvex";
  }
  return "?";
}

GenKind parse_gen_kind(std::string_view text) {
  if (text == "random") return GenKind::RandomGeneral;
  if (text == "convex") return GenKind::Convex;
  if (text == "nearconvex") return GenKind::NearConvex;
  throw std::invalid_argument("unknown generator kind '" + std::string(text) + "'");
}

GeneratedPoints gen_points(const GenSpec& spec) {
  if (spec.n_points < 2) throw std::invalid_argument("need at least 2 points");
  if (spec.box <= 0) throw std::invalid_argument("box must be positive");
  Rng rng(spec.seed);
  GeneratedPoints out;

  switch (spec.kind) {
    case GenKind::RandomGeneral: {
      std::vector<Point> placed;
      std::size_t attempts = 0;
      while (placed.size() < spec.n_points) {
        if (attempts++ >= spec.max_attempts) {
          throw GenerationError("could not place " + std::to_string(spec.n_points) +
                                " points in general position inside box " + std::to_string(spec.box));
        }
        Point candidate{PointId{static_cast<std::uint32_t>(placed.size())},
                        Coord(static_cast<long>(rng.below(static_cast<std::uint64_t>(spec.box)))),
                        Coord(static_cast<long>(rng.below(static_cast<std::uint64_t>(spec.box)))), Color::None};
        if (fits(placed, candidate)) placed.push_back(std::move(candidate));
      }
      out.points = make_point_set(std::move(placed));
      return out;
    }
    case GenKind::Convex: {
      auto pts = parabola_points(spec.n_points, spec.box, rng);
      for (const auto& p : pts) out.convex_subset.push_back(p.id);
      out.points = make_point_set(std::move(pts));
      return out;
    }
    case GenKind::NearConvex: {
      if (spec.interior + 2 >= spec.n_points) {
        throw std::invalid_argument("near-convex instances need fewer than n - 2 interior points");
      }
      auto placed = parabola_points(spec.n_points - spec.interior, spec.box, rng);
      const std::size_t hull_size = placed.size();
      for (const auto& p : placed) out.convex_subset.push_back(p.id);

      std::size_t attempts = 0;
      while (placed.size() < spec.n_points) {
        if (attempts++ >= spec.max_attempts) {
          throw GenerationError("could not place interior points in general position");
        }
        // Strictly positive barycentric weights with a small common denominator.
        std::array<std::size_t, 3> corner{};
        do {
          for (auto& c : corner) c = rng.below(hull_size);
        } while (corner[0] == corner[1] || corner[1] == corner[2] || corner[0] == corner[2]);
        std::array<long, 3> w{};
        for (auto& x : w) x = rng.between(1, 8);
        const Coord total(w[0] + w[1] + w[2]);
        Coord x(0), y(0);
        for (std::size_t k = 0; k < 3; ++k) {
          x += Coord(w[k]) * placed[corner[k]].x;
          y += Coord(w[k]) * placed[corner[k]].y;
        }
        Point candidate{PointId{static_cast<std::uint32_t>(placed.size())}, x / total, y / total, Color::None};
        if (fits(placed, candidate)) placed.push_back(std::move(candidate));
      }
      out.points = make_point_set(std::move(placed));
      return out;
    }
  }
  return out;
}

Configuration gen_configuration(const PointSetPtr& pts, Version version, std::uint64_t seed,
                                const ConfigOptions& options) {
  Rng rng(seed);
  auto ids = pts->ids();
  const std::size_t n = ids.size();

  PointSetPtr base = pts;
  const bool colored = std::any_of(pts->points().begin(), pts->points().end(),
                                   [](const Point& p) { return p.color != Color::None; });
  if (version != Version::RB && colored) {
    std::vector<Point> stripped(pts->points().begin(), pts->points().end());
    for (auto& p : stripped) p.color = Color::None;
    base = make_point_set(std::move(stripped));
  }

  std::vector<Segment> edges;
  switch (version) {
    case Version::MM: {
      if (n % 2 != 0) throw std::invalid_argument("a perfect matching needs an even number of points");
      rng.shuffle(ids);
      for (std::size_t i = 0; i < n; i += 2) edges.push_back(Segment::make(ids[i], ids[i + 1]));
      break;
    }
    case Version::RB: {
      if (n % 2 != 0) throw std::invalid_argument("a red-blue matching needs an even number of points");
      rng.shuffle(ids);
      std::vector<PointId> red(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n / 2));
      std::vector<PointId> blue(ids.begin() + static_cast<std::ptrdiff_t>(n / 2), ids.end());
      std::set<PointId> red_set(red.begin(), red.end());
      std::vector<Point> recolored(pts->points().begin(), pts->points().end());
      for (auto& p : recolored) p.color = red_set.contains(p.id) ? Color::Red : Color::Blue;
      base = make_point_set(std::move(recolored));
      rng.shuffle(blue);
      for (std::size_t i = 0; i < red.size(); ++i) edges.push_back(Segment::make(red[i], blue[i]));
      break;
    }
    case Version::TSP: {
      if (n < 3) throw std::invalid_argument("a tour needs at least 3 points");
      rng.shuffle(ids);
      for (std::size_t i = 0; i < n; ++i) edges.push_back(Segment::make(ids[i], ids[(i + 1) % n]));
      break;
    }
    case Version::G: {
      if (n < 2) throw std::invalid_argument("a multigraph segment needs two points");
      const std::size_t want = options.g_edges == 0 ? n : options.g_edges;
      std::vector<std::uint32_t> deg(n, 0);
      std::size_t attempts = 0;
      while (edges.size() < want) {
        if (attempts++ >= options.max_attempts) {
          throw GenerationError("degree bound too tight for " + std::to_string(want) + " segments");
        }
        const auto i = rng.below(n);
        const auto j = rng.below(n);
        if (i == j) continue;
        if (options.g_max_degree != 0 && (deg[i] >= options.g_max_degree || deg[j] >= options.g_max_degree)) continue;
        ++deg[i];
        ++deg[j];
        edges.push_back(Segment::make(ids[i], ids[j]));
      }
      break;
    }
  }
  return Configuration(base, version, edges);
}

Configuration gen_max_crossing_matching(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least 2 segments");
  GenSpec spec;
  spec.kind = GenKind::Convex;
  spec.n_points = 2 * n;
  spec.seed = seed;
  spec.box = std::max<std::int64_t>(1000, static_cast<std::int64_t>(8 * n));
  auto generated = gen_points(spec);
  std::vector<Segment> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back(Segment::make(generated.convex_subset[i], generated.convex_subset[i + n]));
  }
  return Configuration(generated.points, Version::MM, edges);
}

}  // namespace untangle
