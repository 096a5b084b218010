#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "jode/core/model.hpp"

namespace jode::changepoint {

struct GaussianDensity {
  double mean = 0.0;
  double sd = 1.0;

  [[nodiscard]] double log_pdf(double x) const;
};

/// log density of x_k given x_1..x_{k-1}; used for dependent (non-iid) data.
using ConditionalLogDensity = std::function<double(std::span<const double> past, double x)>;

/// Retrospective change model: x_1..x_tau follow the nominal density and
/// x_{tau+1}..x_N the alternative, tau in {0, ..., N-1} (tau = 0 means every
/// sample is post-change). H0 is "no change at all".
struct ChangepointModel {
  std::size_t n_samples = 1;
  GaussianDensity nominal{0.0, 1.0};
  GaussianDensity alternative{1.0, 1.0};
  std::vector<double> prior;  ///< over tau; empty means uniform
  bool iid = true;
  /// Only consulted when iid is false. Both must be set in that case.
  ConditionalLogDensity nominal_conditional;
  ConditionalLogDensity alternative_conditional;

  /// N(0,1) before the change, N(mu,1) after, uniform prior.
  static ChangepointModel gaussian_mean_shift(std::size_t n, double mu);

  void validate() const;
  [[nodiscard]] std::vector<double> prior_weights() const;
};

struct DataSeries {
  std::vector<double> values;
  std::optional<std::size_t> change;  ///< nullopt marks an H0 series
};

/// H0 when `change` is empty, otherwise the first `*change` samples are nominal.
[[nodiscard]] DataSeries sample_series(const ChangepointModel& model, std::optional<std::size_t> change,
                                       RngStream& rng);

/// log h(x_k | past) - log f(x_k | past) for 0-based sample k.
[[nodiscard]] double sample_log_ratio(const ChangepointModel& model, std::span<const double> x, std::size_t k);

/// log L(X | tau) = sum_{k = tau+1}^{N} of the per-sample log ratios.
[[nodiscard]] double cond_llr(const ChangepointModel& model, const DataSeries& x, std::size_t tau);

/// All N conditional log-LRs via suffix sums, index = tau.
[[nodiscard]] std::vector<double> cond_llrs(const ChangepointModel& model, const DataSeries& x);

/// JointModel view with 0-1 cost over the change time; posterior_summary on
/// it yields the MAP change time and c_o = 1 - max_U pi_U L(X|U) / L(X).
class ChangepointJointModel final : public JointModel<DataSeries> {
 public:
  explicit ChangepointJointModel(ChangepointModel model);

  [[nodiscard]] const ParameterDomain& domain() const override { return domain_; }
  [[nodiscard]] CostKind cost_kind() const override { return CostKind::ZeroOne; }
  [[nodiscard]] double cond_llr(const DataSeries& x, std::size_t l) const override;
  void cond_llrs(const DataSeries& x, std::span<double> out) const override;
  [[nodiscard]] DataSeries sample_h0(RngStream& rng) const override;
  [[nodiscard]] H1Draw<DataSeries> sample_h1(RngStream& rng) const override;

  [[nodiscard]] const ChangepointModel& model() const noexcept { return model_; }

 private:
  ChangepointModel model_;
  ParameterDomain domain_;
};

[[nodiscard]] ChangepointJointModel as_joint_model(const ChangepointModel& model);

struct GlrtResult {
  double max_llr = 0.0;
  std::size_t tau_hat = 0;  ///< smallest maximizing index
};

[[nodiscard]] GlrtResult glrt_stat(const ChangepointModel& model, const DataSeries& x);
[[nodiscard]] GlrtResult glrt_from_llrs(std::span<const double> cond_llrs);

/// Debug export: header "k,value" then one row per sample.
void write_series_csv(std::ostream& os, const DataSeries& x);

}  // namespace jode::changepoint
