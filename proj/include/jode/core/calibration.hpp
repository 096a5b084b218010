#pragma once

#include <cstddef>
#include <span>

#include "jode/core/decision.hpp"

namespace jode {

// Quantile convention used throughout: the q-quantile of n samples is the
// order statistic at 1-based index ceil(q * n), clamped to [1, n].

struct QuantileEstimate {
  double value = 0.0;
  std::size_t n = 0;
  bool low_sample_warning = false;  ///< n * tail < 10
};

/// 1-based order-statistic index ceil(q * n) with a guard against q*n
/// landing a rounding error above an integer.
[[nodiscard]] std::size_t order_statistic_index(double q, std::size_t n);

/// Empirical q-quantile (order statistic at ceil(q n)) of an unsorted sample.
[[nodiscard]] double empirical_quantile(std::span<const double> sample, double q);

/// Empirical (1 - alpha)-quantile of H0 log-LRs. With the strict NP rule the
/// resulting empirical false alarm on the same sample is <= alpha.
[[nodiscard]] QuantileEstimate calibrate_gamma_np(std::span<const double> h0_log_lrs, double alpha);

/// Empirical (1 - beta)-quantile of c_o under H1: P1(c_o <= lambda_o) = 1 - beta.
[[nodiscard]] QuantileEstimate solve_lambda_o(std::span<const double> h1_c_o, double beta);

/// target_fraction-quantile of c_o over NP detections; fraction 1 maps to +inf.
/// Throws CalibrationError on an empty list.
[[nodiscard]] double calibrate_reliability_lambda(std::span<const double> h1_detected_c_o,
                                                  double target_fraction);

struct StatisticPair {
  double log_lr = 0.0;
  double c_o = 0.0;
};

struct SingleStepOptions {
  int max_doublings = 40;
  int max_bisection_steps = 60;
};

/// Single-step thresholds from H0 and H1 calibration samples.
///
/// lambda_o is the (1 - beta) quantile of H1 costs. If the cost-only test
/// c_o <= lambda_o already meets the false alarm level the CostThresholdOnly
/// regime is returned. Otherwise gamma(lambda) is pinned on the H1 sample so
/// the coupled test detects with probability 1 - beta, and lambda is found by
/// doubling from lambda_o + 1 and then bisecting until the H0 false alarm of
/// the coupled test is within tolerance of alpha.
///
/// Throws PreconditionError when beta is below the NP miss rate beta(alpha)
/// and CalibrationError when no bracketing lambda is found.
[[nodiscard]] ThresholdSet calibrate_single_step(std::span<const StatisticPair> h0,
                                                 std::span<const StatisticPair> h1, double alpha,
                                                 double beta, const SingleStepOptions& opts = {});

/// Fraction of H1 samples the NP test misses at gamma_np (empirical beta(alpha)).
[[nodiscard]] double empirical_miss_rate(std::span<const StatisticPair> h1, double gamma_np);

/// Log gamma(lambda): pins P1(coupled statistic >= gamma) = 1 - beta on the sample.
[[nodiscard]] double coupled_log_gamma(std::span<const StatisticPair> h1, double lambda, double beta);

}  // namespace jode
