#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "untangle/configuration.hpp"

namespace untangle {

enum class GenKind : std::uint8_t { RandomGeneral, Convex, NearConvex };

std::string_view to_string(GenKind kind);
GenKind parse_gen_kind(std::string_view text);

struct GenSpec {
  GenKind kind = GenKind::RandomGeneral;
  std::size_t n_points = 0;
  std::uint64_t seed = 0;
  std::int64_t box = 1000;        // coordinates / parabola abscissae drawn from [0, box)
  std::size_t interior = 0;       // NearConvex: number t of points inside the hull
  std::size_t max_attempts = 10000;
};

struct GeneratedPoints {
  PointSetPtr points;
  /// Ids in convex position, in counterclockwise hull order. Empty for
  /// RandomGeneral.
  std::vector<PointId> convex_subset;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ids are 0..n-1. Convex and NearConvex place the convex part on the parabola
/// y = x^2 with ids following hull order; NearConvex interior points take the
/// trailing ids.
GeneratedPoints gen_points(const GenSpec& spec);

struct ConfigOptions {
  std::size_t g_edges = 0;       // G: number of segments (0 -> number of points)
  std::uint32_t g_max_degree = 3;  // G: 0 disables the bound
  std::size_t max_attempts = 10000;
};

/// Random valid configuration of the requested version. RB assigns a fresh
/// balanced coloring; other versions strip colors.
Configuration gen_configuration(const PointSetPtr& pts, Version version, std::uint64_t seed,
                                const ConfigOptions& options = {});

/// 2n points in convex position matched across the hull (i with i + n), which
/// makes every pair of segments cross.
Configuration gen_max_crossing_matching(std::size_t n, std::uint64_t seed);

}  // namespace untangle
