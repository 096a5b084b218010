#include "jode/radar/model.hpp"

namespace jode::radar {

namespace {

ParameterDomain grid_domain(const SurveillanceRegion& region) {
  std::vector<double> coords;
  coords.reserve(2 * region.grid.size());
  for (const auto& p : region.grid) {
    coords.push_back(p.x);
    coords.push_back(p.y);
  }
  return ParameterDomain::uniform(2, std::move(coords));
}

}  // namespace

RadarJointModel::RadarJointModel(RadarScene scene, SurveillanceRegion region)
    : region_(std::move(region)), bank_(std::move(scene), region_.grid), domain_(grid_domain(region_)) {}

double RadarJointModel::cond_llr(const MatchedStats& x, std::size_t l) const { return bank_.cond_llr(x, l); }

void RadarJointModel::cond_llrs(const MatchedStats& x, std::span<double> out) const { bank_.cond_llrs(x, out); }

MatchedStats RadarJointModel::sample_h0(RngStream& rng) const { return synthesize_r(bank_, std::nullopt, rng); }

H1Draw<MatchedStats> RadarJointModel::sample_h1(RngStream& rng) const {
  auto target = draw_target(bank_.scene(), region_, rng);
  const Point truth{target.theta_o.x, target.theta_o.y};
  return {synthesize_r(bank_, target, rng), truth};
}

}  // namespace jode::radar
