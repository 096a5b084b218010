#include "jode/core/decision.hpp"

#include <cmath>
#include <limits>

#include "jode/core/errors.hpp"

namespace jode {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::H0: return "H0";
    case Verdict::H1Reliable: return "H1Reliable";
    case Verdict::H1Unreliable: return "H1Unreliable";
  }
  return "?";
}

std::string_view to_string(Regime r) noexcept {
  return r == Regime::Coupled ? "Coupled" : "CostThresholdOnly";
}

Hypothesis np_decide(const PosteriorSummary& s, double gamma_np) noexcept {
  return np_decide(s.log_lr, gamma_np);
}

Decision two_step_decide(const PosteriorSummary& s, double gamma_np, double lambda) {
  if (np_decide(s, gamma_np) == Hypothesis::H0) return {};
  Decision d;
  d.verdict = s.c_o <= lambda ? Verdict::H1Reliable : Verdict::H1Unreliable;
  d.estimate = s.theta_hat;
  d.c_o = s.c_o;
  return d;
}

double coupled_log_statistic(double log_lr, double c_o, double lambda) noexcept {
  const double margin = lambda - c_o;
  if (!(margin > 0.0)) return -std::numeric_limits<double>::infinity();
  return log_lr + std::log(margin);
}

bool coupled_accepts(double log_lr, double c_o, double lambda, double log_gamma) noexcept {
  const double margin = lambda - c_o;
  return margin > 0.0 && log_lr + std::log(margin) >= log_gamma;
}

bool single_step_accepts(double log_lr, double c_o, const ThresholdSet& t) {
  if (t.regime == Regime::CostThresholdOnly) return c_o <= t.lambda_o;
  if (std::isnan(t.gamma) || t.gamma == -std::numeric_limits<double>::infinity()) {
    throw CalibrationError("coupled single-step thresholds require gamma > 0 (finite log gamma)");
  }
  return coupled_accepts(log_lr, c_o, t.lambda, t.gamma);
}

Decision single_step_decide(const PosteriorSummary& s, const ThresholdSet& t) {
  if (!single_step_accepts(s.log_lr, s.c_o, t)) return {};
  return {Verdict::H1Reliable, s.theta_hat, s.c_o};
}

}  // namespace jode
