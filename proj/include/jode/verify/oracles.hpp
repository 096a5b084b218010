#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace jode::verify {

struct OracleResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct OracleOptions {
  std::uint64_t seed = 20240917;
  std::size_t girsanov_scenes = 10;
  std::size_t girsanov_draws = 1000000;
  std::size_t identity_cases = 100;
  std::size_t estimator_models = 50;
  std::size_t rescaling_models = 50;
  std::size_t changepoint_series = 10000;
  std::size_t changepoint_samples = 16;
  double changepoint_mu = 1.0;
};

/// Averages the conditional likelihood ratio exp(-G^H Q G + 2 Re(R^H G)) over
/// G ~ N_C(0, I) on random single-receiver scenes (M <= 2, L_t = 50) and
/// compares with exp(log_clr_radar) at 3 standard errors.
[[nodiscard]] OracleResult girsanov_average(const OracleOptions& opts);

/// ln|Q + I| against half the log-determinant of the real 2M x 2M embedding
/// and against an eigenvalue sum; quadratic form against its real embedding.
/// Random Hermitian PSD Q with M in 1..6, relative error <= 1e-9.
[[nodiscard]] OracleResult determinant_identity(const OracleOptions& opts);

/// Exhaustive enumeration of every grid-valued estimator on random finite
/// models (<= 5 parameters, <= 6 observations) and weightings phi >= 0: the
/// per-observation Bayes estimator attains the minimal weighted cost ratio.
[[nodiscard]] OracleResult bayes_estimator_brute_force(const OracleOptions& opts);

/// Scaling a detector with slack in its miss constraint so the constraint
/// binds leaves the average conditional cost unchanged (finite models).
[[nodiscard]] OracleResult rescaling_invariance(const OracleOptions& opts);

/// Generic posterior machinery against closed-form changepoint statistics:
/// MAP change time, c_o = 1 - max pi L(X|U) / L(X), reliability, both
/// single-step forms, and the GLRT argmax against a direct scan.
[[nodiscard]] OracleResult changepoint_identities(const OracleOptions& opts);

[[nodiscard]] std::vector<OracleResult> run_all(const OracleOptions& opts);

}  // namespace jode::verify
