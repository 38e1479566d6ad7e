#include "untangle/potentials.hpp"

#include <algorithm>
#include <set>

namespace untangle {

LineSet build_line_set(const PointSet& pts, LineSetKind kind, std::span<const PointId> convex_subset) {
  LineSet out;
  out.kind = kind;
  const auto ids = pts.ids();

  if (kind == LineSetKind::Full) {
    out.lines.reserve(ids.size() * (ids.size() - (ids.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) out.lines.push_back(Line{ids[i], ids[j]});
    }
    return out;
  }

  std::set<PointId> in_c;
  for (PointId id : convex_subset) {
    if (!pts.contains(id)) throw std::invalid_argument("convex subset references unknown point " + std::to_string(id.value));
    if (!in_c.insert(id).second) throw std::invalid_argument("convex subset repeats point " + std::to_string(id.value));
  }
  out.convex_subset.assign(in_c.begin(), in_c.end());
  if (!in_convex_position(out.convex_subset, pts)) {
    throw std::invalid_argument("designated convex subset is not in convex position");
  }

  std::set<Line> lines;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!in_c.contains(ids[i]) || !in_c.contains(ids[j])) lines.insert(Line{ids[i], ids[j]});
    }
  }
  if (out.convex_subset.size() >= 2) {
    const auto hull = convex_hull(out.convex_subset, pts);
    for (std::size_t i = 0; i < hull.size(); ++i) lines.insert(Line::make(hull[i], hull[(i + 1) % hull.size()]));
  }
  out.lines.assign(lines.begin(), lines.end());
  return out;
}

std::uint64_t phi_x(const Configuration& c) { return crossings(c).size(); }

std::uint32_t phi_line(const Line& l, const Configuration& c) {
  std::uint32_t count = 0;
  for (const auto& [s, m] : c.edges()) {
    if (line_crosses_segment(l, s, c.points())) count += m;
  }
  return count;
}

PotentialReport phi_L(const Configuration& c, const LineSet& lines) {
  PotentialReport report;
  report.phi_x = phi_x(c);
  report.per_line.reserve(lines.lines.size());
  for (const auto& l : lines.lines) {
    const auto v = phi_line(l, c);
    report.per_line.push_back(v);
    report.phi_l_total += v;
  }
  return report;
}

int line_delta(const Flip& f, const Line& l, const PointSet& pts) {
  int delta = 0;
  for (const auto& s : f.removed) delta += line_crosses_segment(l, s, pts) ? 1 : 0;
  for (const auto& s : f.added) delta -= line_crosses_segment(l, s, pts) ? 1 : 0;
  return delta;
}

LineClass classify_line(const Flip& f, const Line& l, const PointSet& pts) {
  const auto side = [&](PointId x) { return pts.orientation(l.p, l.q, x); };
  const std::array<int, 2> first{side(f.added[0].a), side(f.added[0].b)};
  const std::array<int, 2> second{side(f.added[1].a), side(f.added[1].b)};

  for (int s : {1, -1}) {
    if (first[0] == s && first[1] == s && second[0] == -s && second[1] == -s) return LineClass::Dropping;
  }

  const int on_line = static_cast<int>(std::count(first.begin(), first.end(), 0) +
                                       std::count(second.begin(), second.end(), 0));
  if (on_line != 1) return LineClass::Stable;
  for (int s : {1, -1}) {
    const bool a_side = first[0] != -s && first[1] != -s;
    const bool b_side = second[0] != s && second[1] != s;
    if (a_side && b_side) return LineClass::Critical;
  }
  return LineClass::Stable;
}

std::int64_t flip_drop(const Flip& f, const LineSet& lines, const PointSet& pts) {
  std::int64_t total = 0;
  for (const auto& l : lines.lines) total += line_delta(f, l, pts);
  return total;
}

std::size_t angular_rank(PointId p1, PointId p4, PointId target, const PointSet& pts) {
  const int side = pts.orientation(p1, p4, target);
  std::size_t rank = 1;
  for (const auto& q : pts.points()) {
    if (q.id == p1 || q.id == p4 || q.id == target) continue;
    if (pts.orientation(p1, p4, q.id) != side) continue;
    // q comes first when target lies further from the ray, on the same turn.
    if (pts.orientation(p1, q.id, target) == side) ++rank;
  }
  return rank;
}

}  // namespace untangle
