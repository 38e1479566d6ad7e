#include "untangle/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace untangle {

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string_view fill_for(Color c) {
  switch (c) {
    case Color::Red: return "#d62728";
    case Color::Blue: return "#1f77b4";
    case Color::None: break;
  }
  return "#222222";
}

}  // namespace

std::string render_svg(const Configuration& c, const std::optional<Flip>& highlight, const SvgStyle& style) {
  const auto& pts = c.points();
  Coord min_x, max_x, min_y, max_y;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts.points()[i];
    if (i == 0 || p.x < min_x) min_x = p.x;
    if (i == 0 || p.x > max_x) max_x = p.x;
    if (i == 0 || p.y < min_y) min_y = p.y;
    if (i == 0 || p.y > max_y) max_y = p.y;
  }
  Coord span = std::max<Coord>(max_x - min_x, max_y - min_y);
  if (span == 0) span = 1;
  const double inner = style.canvas - 2 * style.margin;

  // Exact offsets first, then a single conversion to double per coordinate.
  const auto sx = [&](const Coord& x) { return style.margin + Coord((x - min_x) / span).get_d() * inner; };
  const auto sy = [&](const Coord& y) { return style.canvas - style.margin - Coord((y - min_y) / span).get_d() * inner; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(style.canvas) + "\" height=\"" +
         fixed(style.canvas) + "\" viewBox=\"0 0 " + fixed(style.canvas) + " " + fixed(style.canvas) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  const auto line = [&](const Segment& s, std::string_view attrs) {
    const auto& a = pts.at(s.a);
    const auto& b = pts.at(s.b);
    out += "  <line x1=\"" + fixed(sx(a.x)) + "\" y1=\"" + fixed(sy(a.y)) + "\" x2=\"" + fixed(sx(b.x)) + "\" y2=\"" +
           fixed(sy(b.y)) + "\" " + std::string(attrs) + "/>\n";
  };

  std::multiset<Segment> dashed;
  if (highlight) dashed.insert(highlight->removed.begin(), highlight->removed.end());
  for (const auto& s : c.edge_list()) {
    if (const auto it = dashed.find(s); it != dashed.end()) {
      dashed.erase(it);
      line(s, "stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
    } else {
      line(s, "stroke=\"#555555\" stroke-width=\"1.5\"");
    }
  }
  if (highlight) {
    for (const auto& s : highlight->added) line(s, "stroke=\"#2ca02c\" stroke-width=\"4\"");
  }

  for (const auto& p : pts.points()) {
    out += "  <circle cx=\"" + fixed(sx(p.x)) + "\" cy=\"" + fixed(sy(p.y)) + "\" r=\"" + fixed(style.point_radius) +
           "\" fill=\"" + std::string(fill_for(p.color)) + "\"><title>" + std::to_string(p.id.value) +
           "</title></circle>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace untangle
