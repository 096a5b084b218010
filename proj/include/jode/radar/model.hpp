#pragma once

#include <memory>

#include "jode/core/model.hpp"
#include "jode/radar/matched_filter.hpp"
#include "jode/radar/region.hpp"

namespace jode::radar {

/// Target detection/localization as a JointModel: uniform prior over the
/// surveillance grid, squared-error cost on the 2-D location.
class RadarJointModel final : public JointModel<MatchedStats> {
 public:
  RadarJointModel(RadarScene scene, SurveillanceRegion region);

  [[nodiscard]] const ParameterDomain& domain() const override { return domain_; }
  [[nodiscard]] CostKind cost_kind() const override { return CostKind::MSE; }
  [[nodiscard]] double cond_llr(const MatchedStats& x, std::size_t l) const override;
  void cond_llrs(const MatchedStats& x, std::span<double> out) const override;
  [[nodiscard]] MatchedStats sample_h0(RngStream& rng) const override;
  [[nodiscard]] H1Draw<MatchedStats> sample_h1(RngStream& rng) const override;

  [[nodiscard]] const MatchedFilterBank& bank() const noexcept { return bank_; }
  [[nodiscard]] const SurveillanceRegion& region() const noexcept { return region_; }
  [[nodiscard]] const RadarScene& scene() const noexcept { return bank_.scene(); }

 private:
  SurveillanceRegion region_;
  MatchedFilterBank bank_;
  ParameterDomain domain_;
};

}  // namespace jode::radar
