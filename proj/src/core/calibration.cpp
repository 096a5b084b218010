#include "jode/core/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "jode/core/errors.hpp"

namespace jode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw PreconditionError(std::string(name) + " must lie in (0, 1), got " + std::to_string(p));
  }
}

QuantileEstimate upper_tail_quantile(std::span<const double> sample, double tail, const char* what) {
  if (sample.empty()) throw PreconditionError(std::string(what) + ": empty sample");
  require_probability(tail, what);
  QuantileEstimate q;
  q.n = sample.size();
  q.value = empirical_quantile(sample, 1.0 - tail);
  q.low_sample_warning = static_cast<double>(q.n) * tail < 10.0;
  return q;
}

double fraction_if(std::span<const StatisticPair> sample, const std::function<bool(const StatisticPair&)>& pred) {
  std::size_t hits = 0;
  for (const auto& s : sample) hits += pred(s) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

double coupled_false_alarm(std::span<const StatisticPair> h0, double lambda, double log_gamma) {
  return fraction_if(h0, [&](const StatisticPair& s) { return coupled_accepts(s.log_lr, s.c_o, lambda, log_gamma); });
}

}  // namespace

std::size_t order_statistic_index(double q, std::size_t n) {
  const double scaled = q * static_cast<double>(n);
  // Relative guard: 0.95 * 100 must give 95, not 96.
  auto k = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
  return std::clamp<std::size_t>(k, 1, n);
}

double empirical_quantile(std::span<const double> sample, double q) {
  if (sample.empty()) throw PreconditionError("quantile of an empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  const std::size_t k = order_statistic_index(q, v.size());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end());
  return v[k - 1];
}

QuantileEstimate calibrate_gamma_np(std::span<const double> h0_log_lrs, double alpha) {
  return upper_tail_quantile(h0_log_lrs, alpha, "calibrate_gamma_np");
}

QuantileEstimate solve_lambda_o(std::span<const double> h1_c_o, double beta) {
  return upper_tail_quantile(h1_c_o, beta, "solve_lambda_o");
}

double calibrate_reliability_lambda(std::span<const double> h1_detected_c_o, double target_fraction) {
  if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
    throw PreconditionError("target fraction must lie in (0, 1]");
  }
  if (target_fraction == 1.0) return kInf;
  if (h1_detected_c_o.empty()) {
    throw CalibrationError("no NP detections available to calibrate the reliability threshold");
  }
  return empirical_quantile(h1_detected_c_o, target_fraction);
}

double empirical_miss_rate(std::span<const StatisticPair> h1, double gamma_np) {
  if (h1.empty()) throw PreconditionError("empty H1 sample");
  return fraction_if(h1, [&](const StatisticPair& s) { return np_decide(s.log_lr, gamma_np) == Hypothesis::H0; });
}

double coupled_log_gamma(std::span<const StatisticPair> h1, double lambda, double beta) {
  if (h1.empty()) throw PreconditionError("empty H1 sample");
  std::vector<double> stat(h1.size());
  for (std::size_t i = 0; i < h1.size(); ++i) stat[i] = coupled_log_statistic(h1[i].log_lr, h1[i].c_o, lambda);
  // k-th largest, so at least k = ceil((1 - beta) n) samples satisfy stat >= gamma.
  const std::size_t k = order_statistic_index(1.0 - beta, stat.size());
  std::nth_element(stat.begin(), stat.begin() + static_cast<std::ptrdiff_t>(k - 1), stat.end(), std::greater<>());
  return stat[k - 1];
}

ThresholdSet calibrate_single_step(std::span<const StatisticPair> h0, std::span<const StatisticPair> h1,
                                   double alpha, double beta, const SingleStepOptions& opts) {
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  if (h0.empty() || h1.empty()) throw PreconditionError("calibrate_single_step needs H0 and H1 samples");

  ThresholdSet t;
  t.alpha = alpha;
  t.beta = beta;
  t.provenance.n_h0 = h0.size();
  t.provenance.n_h1 = h1.size();

  std::vector<double> h0_llr(h0.size());
  std::transform(h0.begin(), h0.end(), h0_llr.begin(), [](const StatisticPair& s) { return s.log_lr; });
  std::vector<double> h1_cost(h1.size());
  std::transform(h1.begin(), h1.end(), h1_cost.begin(), [](const StatisticPair& s) { return s.c_o; });

  const auto gnp = calibrate_gamma_np(h0_llr, alpha);
  t.gamma_np = gnp.value;
  t.provenance.miss_rate_np = empirical_miss_rate(h1, t.gamma_np);
  if (beta < t.provenance.miss_rate_np) {
    std::ostringstream msg;
    msg << "beta = " << beta << " is below the NP miss rate beta(alpha) = " << t.provenance.miss_rate_np;
    throw PreconditionError(msg.str());
  }

  const auto lo = solve_lambda_o(h1_cost, beta);
  t.lambda_o = lo.value;
  t.provenance.low_sample_warning = gnp.low_sample_warning || lo.low_sample_warning;

  const double cost_only_fa = fraction_if(h0, [&](const StatisticPair& s) { return s.c_o <= t.lambda_o; });
  auto finish_cost_only = [&]() {
    t.regime = Regime::CostThresholdOnly;
    t.lambda = t.lambda_o;
    t.gamma = -kInf;
    t.provenance.achieved_false_alarm = cost_only_fa;
    t.provenance.achieved_detection = fraction_if(h1, [&](const StatisticPair& s) { return s.c_o <= t.lambda_o; });
    return t;
  };
  if (cost_only_fa <= alpha) return finish_cost_only();

  const double n0 = static_cast<double>(h0.size());
  const double tol = std::min(1.0 / std::sqrt(n0), std::sqrt(alpha * (1.0 - alpha) / n0));

  struct Probe {
    double lambda;
    double log_gamma;
    double phi;
  };
  auto probe = [&](double lambda) {
    const double lg = coupled_log_gamma(h1, lambda, beta);
    return Probe{lambda, lg, coupled_false_alarm(h0, lambda, lg) - alpha};
  };

  Probe low = probe(t.lambda_o);
  double span = 1.0;
  Probe high = probe(t.lambda_o + span);
  while (high.phi > tol) {
    if (t.provenance.doublings >= opts.max_doublings) {
      std::ostringstream msg;
      msg << "single-step calibration: false alarm stays above alpha after " << opts.max_doublings
          << " doublings (lambda_o = " << t.lambda_o << ", last lambda = " << high.lambda
          << ", false alarm = " << high.phi + alpha << ")";
      throw CalibrationError(msg.str());
    }
    low = high;
    span *= 2.0;
    high = probe(t.lambda_o + span);
    ++t.provenance.doublings;
  }

  Probe chosen = high;
  if (std::abs(high.phi) > tol) {
    for (int step = 0; step < opts.max_bisection_steps; ++step) {
      ++t.provenance.bisection_steps;
      const Probe mid = probe(0.5 * (low.lambda + high.lambda));
      if (std::abs(mid.phi) <= tol) {
        chosen = mid;
        break;
      }
      (mid.phi > 0.0 ? low : high) = mid;
      chosen = high;
    }
  }

  // gamma(lambda) = 0 coincides with the cost-only comparison.
  if (!std::isfinite(chosen.log_gamma)) return finish_cost_only();

  t.regime = Regime::Coupled;
  t.lambda = chosen.lambda;
  t.gamma = chosen.log_gamma;
  t.provenance.achieved_false_alarm = chosen.phi + alpha;
  t.provenance.achieved_detection =
      fraction_if(h1, [&](const StatisticPair& s) { return coupled_accepts(s.log_lr, s.c_o, t.lambda, t.gamma); });
  return t;
}

}  // namespace jode
