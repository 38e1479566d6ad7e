#pragma once

#include <optional>
#include <string>

#include "untangle/configuration.hpp"

namespace untangle {

struct SvgStyle {
  double canvas = 800.0;
  double margin = 40.0;
  double point_radius = 5.0;
};

/// Points as circles (red/blue for RB), segments as lines. With a highlight
/// the flip's removed pair is drawn dashed and its added pair bold. Output is
/// byte-for-byte deterministic; coordinates are rounded only here.
std::string render_svg(const Configuration& c, const std::optional<Flip>& highlight = std::nullopt,
                       const SvgStyle& style = {});

}  // namespace untangle
