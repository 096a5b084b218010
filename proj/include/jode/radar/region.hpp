#pragma once

#include <string_view>
#include <vector>

#include "jode/radar/scene.hpp"

namespace jode::radar {

enum class RegionMode {
  EllipseUnion,  ///< some tx/rx pair has bistatic path <= c T
  Disc,          ///< |theta| <= disc_radius
};

[[nodiscard]] RegionMode parse_region_mode(std::string_view text);
[[nodiscard]] std::string_view to_string(RegionMode mode) noexcept;

/// Surveillance region and its quadrature grid: an origin-anchored square
/// lattice restricted to the points that satisfy the membership predicate.
struct SurveillanceRegion {
  RegionMode mode = RegionMode::Disc;
  double max_range = 150.0;    ///< c T
  double disc_radius = 75.0;
  double cell_size = 10.0;
  std::vector<Position> grid;

  [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }
};

[[nodiscard]] bool region_contains(const RadarScene& scene, RegionMode mode, double disc_radius, Position p);

/// Throws DomainError when cell_size <= 0 or no lattice point qualifies.
[[nodiscard]] SurveillanceRegion build_region_grid(const RadarScene& scene, RegionMode mode, double cell_size,
                                                   double disc_radius = 75.0);

}  // namespace jode::radar
