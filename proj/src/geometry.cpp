#include "untangle/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace untangle {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

int sign_of(const mpz_class& v) { return sgn(v); }

int sign_of(__int128 v) { return (v > 0) - (v < 0); }

}  // namespace

Coord parse_coord(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  Coord value(n, d);
  value.canonicalize();
  return value;
}

std::string format_coord(const Coord& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string_view to_string(Color color) {
  switch (color) {
    case Color::Red: return "red";
    case Color::Blue: return "blue";
    case Color::None: break;
  }
  return "none";
}

Color parse_color(std::string_view text) {
  if (text == "red") return Color::Red;
  if (text == "blue") return Color::Blue;
  if (text == "none") return Color::None;
  throw std::invalid_argument("unknown color '" + std::string(text) + "'");
}

Segment Segment::make(PointId p, PointId q) {
  if (p == q) throw std::invalid_argument("degenerate segment on point " + std::to_string(p.value));
  return p < q ? Segment{p, q} : Segment{q, p};
}

Line Line::make(PointId u, PointId v) {
  if (u == v) throw std::invalid_argument("degenerate line on point " + std::to_string(u.value));
  return u < v ? Line{u, v} : Line{v, u};
}

std::string to_string(const Segment& s) { return std::to_string(s.a.value) + "-" + std::to_string(s.b.value); }

std::string to_string(const Line& l) { return std::to_string(l.p.value) + "~" + std::to_string(l.q.value); }

int orientation(const Point& a, const Point& b, const Point& c) {
  const Coord det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), [](const Point& l, const Point& r) { return l.id < r.id; });
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i > 0 && points_[i].id == points_[i - 1].id) {
      throw std::invalid_argument("duplicate point id " + std::to_string(points_[i].id.value));
    }
    if (points_[i].id.value != i) dense_ids_ = false;
  }
  if (!dense_ids_) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      index_.emplace(points_[i].id.value, static_cast<std::uint32_t>(i));
    }
  }

  mpz_class common = 1;
  for (const auto& p : points_) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.y.get_den_mpz_t());
  }
  zx_.reserve(points_.size());
  zy_.reserve(points_.size());
  const mpz_class limit = mpz_class(1) << 62;
  for (const auto& p : points_) {
    mpz_class sx = p.x.get_num() * (common / p.x.get_den());
    mpz_class sy = p.y.get_num() * (common / p.y.get_den());
    if (abs(sx) >= limit || abs(sy) >= limit) machine_kernel_ = false;
    zx_.push_back(std::move(sx));
    zy_.push_back(std::move(sy));
  }
  if (machine_kernel_) {
    ix_.reserve(points_.size());
    iy_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      ix_.push_back(zx_[i].get_si());
      iy_.push_back(zy_[i].get_si());
    }
    zx_.clear();
    zy_.clear();
  }
}

std::vector<PointId> PointSet::ids() const {
  std::vector<PointId> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.id);
  return out;
}

bool PointSet::contains(PointId id) const {
  if (dense_ids_) return id.value < points_.size();
  return index_.contains(id.value);
}

std::size_t PointSet::index_of(PointId id) const {
  if (dense_ids_) {
    if (id.value >= points_.size()) throw std::out_of_range("unknown point id " + std::to_string(id.value));
    return id.value;
  }
  const auto it = index_.find(id.value);
  if (it == index_.end()) throw std::out_of_range("unknown point id " + std::to_string(id.value));
  return it->second;
}

int PointSet::orientation_at(std::size_t a, std::size_t b, std::size_t c) const {
  if (machine_kernel_) {
    const __int128 bx = static_cast<__int128>(ix_[b]) - ix_[a];
    const __int128 by = static_cast<__int128>(iy_[b]) - iy_[a];
    const __int128 cx = static_cast<__int128>(ix_[c]) - ix_[a];
    const __int128 cy = static_cast<__int128>(iy_[c]) - iy_[a];
    return sign_of(bx * cy - by * cx);
  }
  const mpz_class det = (zx_[b] - zx_[a]) * (zy_[c] - zy_[a]) - (zy_[b] - zy_[a]) * (zx_[c] - zx_[a]);
  return sign_of(det);
}

bool PointSet::general_position() const {
  std::call_once(general_position_once_, [this] {
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          if (orientation_at(i, j, k) == 0) return;
        }
      }
    }
    general_position_ = true;
  });
  return general_position_;
}

PointSetPtr make_point_set(std::vector<Point> points) { return std::make_shared<const PointSet>(std::move(points)); }

bool segments_cross(const Segment& s1, const Segment& s2, const PointSet& pts) {
  if (s1.shares_endpoint(s2)) return false;
  const auto a = pts.index_of(s1.a), b = pts.index_of(s1.b);
  const auto c = pts.index_of(s2.a), d = pts.index_of(s2.b);
  // Any zero orientation means the only possible contact is at an endpoint or
  // along a collinear overlap; neither counts as a crossing.
  return pts.orientation_at(a, b, c) * pts.orientation_at(a, b, d) < 0 &&
         pts.orientation_at(c, d, a) * pts.orientation_at(c, d, b) < 0;
}

bool line_crosses_segment(const Line& l, const Segment& s, const PointSet& pts) {
  const auto p = pts.index_of(l.p), q = pts.index_of(l.q);
  return pts.orientation_at(p, q, pts.index_of(s.a)) * pts.orientation_at(p, q, pts.index_of(s.b)) < 0;
}

std::vector<PointId> convex_hull(std::span<const PointId> subset, const PointSet& pts) {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  for (PointId id : subset) idx.push_back(pts.index_of(id));
  std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
    const auto& pl = pts.points()[l];
    const auto& pr = pts.points()[r];
    if (pl.x != pr.x) return pl.x < pr.x;
    if (pl.y != pr.y) return pl.y < pr.y;
    return l < r;
  });
  if (idx.size() < 3) {
    std::vector<PointId> out;
    for (auto i : idx) out.push_back(pts.points()[i].id);
    return out;
  }

  // Andrew's monotone chain; collinear and repeated points are popped so only
  // strict vertices survive.
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && pts.orientation_at(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && pts.orientation_at(hull[k - 2], hull[k - 1], idx[i]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);

  std::vector<PointId> out;
  out.reserve(hull.size());
  for (auto i : hull) out.push_back(pts.points()[i].id);
  return out;
}

bool in_convex_position(std::span<const PointId> subset, const PointSet& pts) {
  if (subset.size() < 3) return true;
  return convex_hull(subset, pts).size() == subset.size();
}

bool is_general_position(const PointSet& pts) { return pts.general_position(); }

std::array<SegmentPair, 2> replacement_pairs(const Segment& s1, const Segment& s2, const PointSet& pts) {
  if (!segments_cross(s1, s2, pts)) throw std::invalid_argument("not a crossing pair");
  auto canonical = [](Segment x, Segment y) { return x < y ? SegmentPair{x, y} : SegmentPair{y, x}; };
  std::array<SegmentPair, 2> out{canonical(Segment::make(s1.a, s2.a), Segment::make(s1.b, s2.b)),
                                 canonical(Segment::make(s1.a, s2.b), Segment::make(s1.b, s2.a))};
  if (out[1] < out[0]) std::swap(out[0], out[1]);
  return out;
}

Coord linf_distance(const Point& p, const Point& q) {
  Coord dx = abs(p.x - q.x);
  Coord dy = abs(p.y - q.y);
  return dx > dy ? dx : dy;
}

Coord linf_distance(const Point& p, const Point& a, const Point& b) {
  // g(t) = max(|u - t dx|, |v - t dy|) is convex piecewise linear on [0, 1];
  // its minimum sits at an endpoint or at a kink.
  const Coord u = p.x - a.x, v = p.y - a.y;
  const Coord dx = b.x - a.x, dy = b.y - a.y;
  std::vector<Coord> candidates{Coord(0), Coord(1)};
  if (dx != 0) candidates.emplace_back(u / dx);
  if (dy != 0) candidates.emplace_back(v / dy);
  if (dx != dy) candidates.emplace_back((u - v) / (dx - dy));
  if (dx != -dy) candidates.emplace_back((u + v) / (dx + dy));

  bool first = true;
  Coord best;
  for (const Coord& t : candidates) {
    if (t < 0 || t > 1) continue;
    Coord ex = abs(u - t * dx);
    Coord ey = abs(v - t * dy);
    Coord g = ex > ey ? ex : ey;
    if (first || g < best) {
      best = g;
      first = false;
    }
  }
  return best;
}

}  // namespace untangle
