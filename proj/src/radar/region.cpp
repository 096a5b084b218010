#include "jode/radar/region.hpp"

#include <cmath>
#include <string>

#include "jode/core/errors.hpp"

namespace jode::radar {

RegionMode parse_region_mode(std::string_view text) {
  if (text == "ellipse" || text == "EllipseUnion") return RegionMode::EllipseUnion;
  if (text == "disc" || text == "Disc") return RegionMode::Disc;
  throw DomainError("unknown region mode '" + std::string(text) + "' (expected ellipse or disc)");
}

std::string_view to_string(RegionMode mode) noexcept {
  return mode == RegionMode::Disc ? "disc" : "ellipse";
}

bool region_contains(const RadarScene& scene, RegionMode mode, double disc_radius, Position p) {
  if (mode == RegionMode::Disc) return norm(p) <= disc_radius;
  const double limit = scene.max_range();
  for (std::size_t m = 0; m < scene.num_tx(); ++m) {
    for (std::size_t n = 0; n < scene.num_rx(); ++n) {
      if (bistatic_path(scene, p, m, n) <= limit) return true;
    }
  }
  return false;
}

SurveillanceRegion build_region_grid(const RadarScene& scene, RegionMode mode, double cell_size, double disc_radius) {
  if (!(cell_size > 0.0)) throw DomainError("cell size must be positive");
  scene.validate();
  SurveillanceRegion region;
  region.mode = mode;
  region.max_range = scene.max_range();
  region.disc_radius = disc_radius;
  region.cell_size = cell_size;

  // Any member lies within c T of the origin-ish antennas; pad by the antenna spread.
  double reach = mode == RegionMode::Disc ? disc_radius : region.max_range;
  if (mode == RegionMode::EllipseUnion) {
    for (const auto& a : scene.tx) reach = std::max(reach, region.max_range + norm(a));
    for (const auto& a : scene.rx) reach = std::max(reach, region.max_range + norm(a));
  }
  const auto k = static_cast<long>(std::ceil(reach / cell_size));
  for (long i = -k; i <= k; ++i) {
    for (long j = -k; j <= k; ++j) {
      const Position p{static_cast<double>(i) * cell_size, static_cast<double>(j) * cell_size};
      if (region_contains(scene, mode, disc_radius, p)) region.grid.push_back(p);
    }
  }
  if (region.grid.empty()) throw DomainError("surveillance grid is empty");
  return region;
}

}  // namespace jode::radar
