#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jode/core/model.hpp"

namespace jode {

/// Per-observation triple shared by every decision rule.
struct PosteriorSummary {
  double log_lr = 0.0;  ///< log L(X) = log sum_l pi_l L(X | theta_l)
  Point theta_hat;      ///< Bayes estimate under the model's cost
  double c_o = 0.0;     ///< optimum posterior cost (quality index), >= 0
  std::size_t map_index = 0;  ///< domain index of the largest posterior weight
  std::optional<std::vector<double>> posterior_weights;
};

/// Numerically stable log(sum_l exp(log_prior_l + llr_l)).
[[nodiscard]] double log_marginal_lr(const ParameterDomain& domain, std::span<const double> cond_llrs);

/// Posterior summary from precomputed conditional log-LRs (one per domain
/// point). Weights are formed with a max shift so they never all underflow.
///   MSE:     theta_hat = posterior mean, c_o = posterior variance (trace)
///   ZeroOne: theta_hat = MAP point (smallest index on ties), c_o = 1 - max weight
[[nodiscard]] PosteriorSummary posterior_summary(const ParameterDomain& domain, CostKind cost,
                                                 std::span<const double> cond_llrs,
                                                 bool keep_weights = false);

template <class Obs>
[[nodiscard]] PosteriorSummary posterior_summary(const JointModel<Obs>& model, const Obs& x,
                                                 bool keep_weights = false) {
  const auto llrs = model.cond_llrs(x);
  return posterior_summary(model.domain(), model.cost_kind(), llrs, keep_weights);
}

/// Posterior cost C(U | X) of a candidate estimate U.
[[nodiscard]] double posterior_cost(const ParameterDomain& domain, CostKind cost,
                                    std::span<const double> cond_llrs, std::span<const double> candidate);

struct BruteForceEstimate {
  Point point;
  double cost = 0.0;
};

/// Exhaustive minimization of C(U | X) over a candidate grid (first minimum
/// wins). Test oracle for the closed forms in posterior_summary.
[[nodiscard]] BruteForceEstimate brute_force_bayes(const ParameterDomain& domain, CostKind cost,
                                                   std::span<const double> cond_llrs,
                                                   std::span<const Point> candidate_grid);

}  // namespace jode
