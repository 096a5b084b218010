#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "jode/core/posterior.hpp"

namespace jode {

enum class Hypothesis { H0, H1 };

enum class Verdict { H0, H1Reliable, H1Unreliable };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct Decision {
  Verdict verdict = Verdict::H0;
  std::optional<Point> estimate;  // present iff verdict != H0
  std::optional<double> c_o;
};

/// Which branch of the single-step rule the calibration selected.
enum class Regime {
  CostThresholdOnly,  ///< H1 iff c_o <= lambda_o
  Coupled,            ///< H1 iff L(X) (lambda - c_o) >= gamma
};

[[nodiscard]] std::string_view to_string(Regime r) noexcept;

/// Sample counts and solver diagnostics recorded during calibration.
struct CalibrationProvenance {
  std::size_t n_h0 = 0;
  std::size_t n_h1 = 0;
  bool low_sample_warning = false;  ///< n * tail probability < 10 for some quantile
  int doublings = 0;
  int bisection_steps = 0;
  double miss_rate_np = 0.0;         ///< empirical beta(alpha) at gamma_np
  double achieved_false_alarm = 0.0;  ///< on the calibration H0 sample
  double achieved_detection = 0.0;    ///< on the calibration H1 sample
};

/// Calibrated decision constants. gamma_np and gamma are stored as natural
/// logarithms of the linear thresholds (gamma may be -inf, i.e. gamma = 0).
struct ThresholdSet {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_np = 0.0;
  double lambda_o = 0.0;
  Regime regime = Regime::CostThresholdOnly;
  double lambda = 0.0;
  double gamma = 0.0;
  CalibrationProvenance provenance;
};

/// Neyman-Pearson test on the log likelihood ratio. Ties go to H0.
[[nodiscard]] constexpr Hypothesis np_decide(double log_lr, double gamma_np) noexcept {
  return log_lr > gamma_np ? Hypothesis::H1 : Hypothesis::H0;
}
[[nodiscard]] Hypothesis np_decide(const PosteriorSummary& s, double gamma_np) noexcept;

/// NP detection followed by the reliability test c_o <= lambda (inclusive).
[[nodiscard]] Decision two_step_decide(const PosteriorSummary& s, double gamma_np, double lambda);

/// Coupled statistic L(X)(lambda - c_o) >= exp(log_gamma), evaluated in log form.
/// Returns false whenever lambda - c_o <= 0.
[[nodiscard]] bool coupled_accepts(double log_lr, double c_o, double lambda, double log_gamma) noexcept;

/// log(L(X)(lambda - c_o)), -inf when lambda <= c_o.
[[nodiscard]] double coupled_log_statistic(double log_lr, double c_o, double lambda) noexcept;

/// Single-step rule; verdict is H0 or H1Reliable.
/// Throws CalibrationError for a Coupled set whose gamma is not positive.
[[nodiscard]] Decision single_step_decide(const PosteriorSummary& s, const ThresholdSet& t);
[[nodiscard]] bool single_step_accepts(double log_lr, double c_o, const ThresholdSet& t);

}  // namespace jode
