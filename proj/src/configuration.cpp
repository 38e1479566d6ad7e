#include "untangle/configuration.hpp"

#include <algorithm>
#include <numeric>

namespace untangle {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

bool single_cycle(const Configuration& c) {
  const auto deg = c.degrees();
  if (c.points().size() < 3) return false;
  if (std::any_of(deg.begin(), deg.end(), [](std::uint32_t d) { return d != 2; })) return false;
  for (const auto& [s, m] : c.edges()) {
    if (m != 1) return false;
  }
  return component_count(c) == 1;
}

bool color_respecting(const Segment& s, const PointSet& pts) {
  const Color a = pts.at(s.a).color;
  const Color b = pts.at(s.b).color;
  return a != Color::None && b != Color::None && a != b;
}

}  // namespace

std::string_view to_string(Version v) {
  switch (v) {
    case Version::MM: return "MM";
    case Version::RB: return "RB";
    case Version::TSP: return "TSP";
    case Version::G: return "G";
  }
  return "?";
}

Version parse_version(std::string_view text) {
  if (text == "MM" || text == "mm") return Version::MM;
  if (text == "RB" || text == "rb") return Version::RB;
  if (text == "TSP" || text == "tsp") return Version::TSP;
  if (text == "G" || text == "g") return Version::G;
  throw std::invalid_argument("unknown version '" + std::string(text) + "'");
}

Configuration::Configuration(PointSetPtr points, Version version, const std::vector<Segment>& edges)
    : points_(std::move(points)), version_(version) {
  for (const auto& s : edges) {
    const Segment canonical = Segment::make(s.a, s.b);
    if (!points_->contains(canonical.a) || !points_->contains(canonical.b)) {
      throw std::invalid_argument("segment " + untangle::to_string(canonical) + " references an unknown point");
    }
    ++edges_[canonical];
    ++edge_count_;
  }
}

Configuration::Configuration(PointSetPtr points, Version version, EdgeMultiset edges)
    : points_(std::move(points)), version_(version), edges_(std::move(edges)) {
  for (auto it = edges_.begin(); it != edges_.end();) {
    if (it->first.a >= it->first.b) throw std::invalid_argument("non-canonical segment in multiset");
    if (!points_->contains(it->first.a) || !points_->contains(it->first.b)) {
      throw std::invalid_argument("segment " + untangle::to_string(it->first) + " references an unknown point");
    }
    if (it->second == 0) {
      it = edges_.erase(it);
      continue;
    }
    edge_count_ += it->second;
    ++it;
  }
}

std::uint32_t Configuration::multiplicity(const Segment& s) const {
  const auto it = edges_.find(s);
  return it == edges_.end() ? 0 : it->second;
}

std::vector<Segment> Configuration::edge_list() const {
  std::vector<Segment> out;
  out.reserve(edge_count_);
  for (const auto& [s, m] : edges_) out.insert(out.end(), m, s);
  return out;
}

std::vector<std::uint32_t> Configuration::degrees() const {
  std::vector<std::uint32_t> deg(points_->size(), 0);
  for (const auto& [s, m] : edges_) {
    deg[points_->index_of(s.a)] += m;
    deg[points_->index_of(s.b)] += m;
  }
  return deg;
}

Configuration Configuration::with_version(Version v) const {
  if (v == Version::RB || version_ != Version::RB) return Configuration(points_, v, edges_);
  std::vector<Point> stripped(points_->points().begin(), points_->points().end());
  for (auto& p : stripped) p.color = Color::None;
  return Configuration(make_point_set(std::move(stripped)), v, edges_);
}

bool same_points(const PointSet& a, const PointSet& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& p = a.points()[i];
    const auto& q = b.points()[i];
    if (p.id != q.id || p.x != q.x || p.y != q.y || p.color != q.color) return false;
  }
  return true;
}

bool Configuration::operator==(const Configuration& other) const {
  return version_ == other.version_ && edges_ == other.edges_ && same_points(*points_, *other.points_);
}

std::size_t component_count(const Configuration& c) {
  const auto& pts = c.points();
  DisjointSets sets(pts.size());
  std::size_t components = pts.size();
  for (const auto& [s, m] : c.edges()) {
    if (sets.unite(pts.index_of(s.a), pts.index_of(s.b))) --components;
  }
  return components;
}

std::vector<Violation> validate(const Configuration& c) {
  std::vector<Violation> out;
  const auto& pts = c.points();
  if (!pts.general_position()) {
    out.push_back({ViolationKind::NotGeneralPosition, "three or more points are collinear"});
  }

  const auto deg = c.degrees();
  const auto repeated = [&] {
    for (const auto& [s, m] : c.edges()) {
      if (m > 1) {
        out.push_back({ViolationKind::RepeatedSegment,
                       "segment " + to_string(s) + " has multiplicity " + std::to_string(m)});
      }
    }
  };

  if (c.version() != Version::RB) {
    for (const auto& p : pts.points()) {
      if (p.color != Color::None) {
        out.push_back({ViolationKind::UnexpectedColor,
                       "point " + std::to_string(p.id.value) + " is colored outside an RB instance"});
        break;
      }
    }
  }

  switch (c.version()) {
    case Version::MM:
    case Version::RB: {
      for (std::size_t i = 0; i < deg.size(); ++i) {
        if (deg[i] != 1) {
          out.push_back({ViolationKind::DegreeNotOne, "point " + std::to_string(pts.points()[i].id.value) +
                                                          " has degree " + std::to_string(deg[i])});
        }
      }
      repeated();
      if (c.version() == Version::RB) {
        std::size_t red = 0, blue = 0;
        for (const auto& p : pts.points()) {
          if (p.color == Color::Red) ++red;
          else if (p.color == Color::Blue) ++blue;
          else out.push_back({ViolationKind::UncoloredPoint, "point " + std::to_string(p.id.value) + " has no color"});
        }
        if (red != blue) {
          out.push_back({ViolationKind::ColorImbalance,
                         std::to_string(red) + " red vs " + std::to_string(blue) + " blue points"});
        }
        for (const auto& [s, m] : c.edges()) {
          if (pts.at(s.a).color == pts.at(s.b).color) {
            out.push_back({ViolationKind::MonochromaticEdge, "monochromatic edge " + to_string(s)});
          }
        }
      }
      break;
    }
    case Version::TSP: {
      if (pts.size() < 3) out.push_back({ViolationKind::TooFewPoints, "a tour needs at least 3 points"});
      bool degrees_ok = true;
      for (std::size_t i = 0; i < deg.size(); ++i) {
        if (deg[i] != 2) {
          degrees_ok = false;
          out.push_back({ViolationKind::DegreeNotTwo, "point " + std::to_string(pts.points()[i].id.value) +
                                                          " has degree " + std::to_string(deg[i])});
        }
      }
      repeated();
      if (!degrees_ok || component_count(c) != 1) {
        out.push_back({ViolationKind::NotSingleCycle, "not a single cycle"});
      }
      break;
    }
    case Version::G:
      break;
  }
  return out;
}

std::vector<SegmentPair> crossings(const Configuration& c) {
  std::vector<std::pair<Segment, std::uint32_t>> distinct(c.edges().begin(), c.edges().end());
  std::vector<SegmentPair> out;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (!segments_cross(distinct[i].first, distinct[j].first, c.points())) continue;
      out.insert(out.end(), std::size_t{distinct[i].second} * distinct[j].second,
                 SegmentPair{distinct[i].first, distinct[j].first});
    }
  }
  return out;
}

std::string FlipKey::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += '|';
    out += untangle::to_string(segments[i]);
  }
  return out;
}

std::size_t FlipKeyHash::operator()(const FlipKey& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : k.segments) {
    for (std::uint32_t v : {s.a.value, s.b.value}) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  }
  return h;
}

Flip Flip::make(Segment r1, Segment r2, Segment a1, Segment a2) {
  r1 = Segment::make(r1.a, r1.b);
  r2 = Segment::make(r2.a, r2.b);
  a1 = Segment::make(a1.a, a1.b);
  a2 = Segment::make(a2.a, a2.b);
  if (r2 < r1) std::swap(r1, r2);
  if (a2 < a1) std::swap(a1, a2);
  return Flip{{r1, r2}, {a1, a2}};
}

FlipKey Flip::key() const {
  FlipKey k{{removed[0], removed[1], added[0], added[1]}};
  std::sort(k.segments.begin(), k.segments.end());
  return k;
}

std::string Flip::to_string() const {
  return "<" + untangle::to_string(removed[0]) + "," + untangle::to_string(removed[1]) + " -> " +
         untangle::to_string(added[0]) + "," + untangle::to_string(added[1]) + ">";
}

FlipKey canonical_flip_id(const Flip& f) { return f.key(); }

bool is_well_formed(const Flip& f, const PointSet& pts) {
  if (!segments_cross(f.removed[0], f.removed[1], pts)) return false;
  const SegmentPair added{f.added[0], f.added[1]};
  for (const auto& pair : replacement_pairs(f.removed[0], f.removed[1], pts)) {
    if (pair == added) return true;
  }
  return false;
}

namespace {

// Version legality of a well-formed flip whose removed pair is present.
bool version_allows(const Configuration& c, const Flip& f) {
  switch (c.version()) {
    case Version::MM:
      return !c.contains(f.added[0]) && !c.contains(f.added[1]);
    case Version::RB:
      return color_respecting(f.added[0], c.points()) && color_respecting(f.added[1], c.points());
    case Version::TSP: {
      EdgeMultiset trial = c.edges();
      for (const auto& s : f.removed) {
        if (--trial[s] == 0) trial.erase(s);
      }
      for (const auto& s : f.added) ++trial[s];
      return single_cycle(Configuration(c.point_set(), Version::TSP, std::move(trial)));
    }
    case Version::G:
      return true;
  }
  return false;
}

}  // namespace

std::vector<Flip> applicable_flips(const Configuration& c) {
  std::vector<Flip> out;
  std::vector<Segment> distinct;
  distinct.reserve(c.edges().size());
  for (const auto& [s, m] : c.edges()) distinct.push_back(s);

  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (!segments_cross(distinct[i], distinct[j], c.points())) continue;
      for (const auto& [a1, a2] : replacement_pairs(distinct[i], distinct[j], c.points())) {
        Flip f{{distinct[i], distinct[j]}, {a1, a2}};
        if (version_allows(c, f)) out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Flip& l, const Flip& r) { return l.key() < r.key(); });
  return out;
}

Configuration apply_flip(const Configuration& c, const Flip& f) {
  const auto removed_present = [&] {
    if (f.removed[0] == f.removed[1]) return c.multiplicity(f.removed[0]) >= 2;
    return c.contains(f.removed[0]) && c.contains(f.removed[1]);
  };
  if (!removed_present()) {
    throw FlipError(FlipFailure::SegmentNotPresent, "segment not present: " + f.to_string());
  }
  if (!segments_cross(f.removed[0], f.removed[1], c.points())) {
    throw FlipError(FlipFailure::NotCrossing, "not a crossing pair: " + f.to_string());
  }
  if (!is_well_formed(f, c.points())) {
    throw FlipError(FlipFailure::NotReplacementPair, "added pair does not close a 4-cycle: " + f.to_string());
  }
  if (!version_allows(c, f)) {
    throw FlipError(FlipFailure::VersionViolation,
                    std::string("flip breaks the ") + std::string(to_string(c.version())) + " property: " + f.to_string());
  }

  EdgeMultiset next = c.edges();
  for (const auto& s : f.removed) {
    if (--next[s] == 0) next.erase(s);
  }
  for (const auto& s : f.added) ++next[s];
  return Configuration(c.point_set(), c.version(), std::move(next));
}

}  // namespace untangle
