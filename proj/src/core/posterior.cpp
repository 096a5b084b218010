#include "jode/core/posterior.hpp"

#include <cassert>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "jode/core/errors.hpp"

namespace jode {

namespace {

constexpr double kRoundoffTolerance = 1e-12;
constexpr double kHardNegativeLimit = -1e-9;

// Variances computed from weights can dip a hair below zero.
double checked_nonnegative(double raw) {
  if (raw >= 0.0) return raw;
  if (raw < kHardNegativeLimit) {
    throw NumericError("posterior cost " + std::to_string(raw) + " is negative beyond tolerance");
  }
  if (raw < -kRoundoffTolerance) std::clog << "jode: clamping posterior cost " << raw << " to 0\n";
  return 0.0;
}

void check_sizes(const ParameterDomain& domain, std::span<const double> cond_llrs) {
  if (cond_llrs.size() != domain.size()) {
    throw DomainError("expected " + std::to_string(domain.size()) + " conditional log-LRs, got " +
                      std::to_string(cond_llrs.size()));
  }
}

// Shifted log weights a_l = log pi_l + llr_l; returns max_l a_l and its index.
std::pair<double, std::size_t> max_shift(const ParameterDomain& domain, std::span<const double> cond_llrs) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t l = 0; l < cond_llrs.size(); ++l) {
    if (!std::isfinite(cond_llrs[l])) {
      throw DomainError("conditional log-LR at index " + std::to_string(l) + " is not finite");
    }
    const double a = domain.log_prior(l) + cond_llrs[l];
    if (a > best) {
      best = a;
      arg = l;
    }
  }
  return {best, arg};
}

bool same_point(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

double log_marginal_lr(const ParameterDomain& domain, std::span<const double> cond_llrs) {
  check_sizes(domain, cond_llrs);
  const auto [shift, arg] = max_shift(domain, cond_llrs);
  double sum = 0.0;
  for (std::size_t l = 0; l < cond_llrs.size(); ++l) {
    sum += std::exp(domain.log_prior(l) + cond_llrs[l] - shift);
  }
  return shift + std::log(sum);
}

PosteriorSummary posterior_summary(const ParameterDomain& domain, CostKind cost,
                                   std::span<const double> cond_llrs, bool keep_weights) {
  check_sizes(domain, cond_llrs);
  const auto [shift, arg] = max_shift(domain, cond_llrs);
  assert(std::isfinite(shift));

  const std::size_t n = domain.size();
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    w[l] = std::exp(domain.log_prior(l) + cond_llrs[l] - shift);
    sum += w[l];
  }
  // The arg-max term contributes exp(0) = 1, so sum >= 1.
  assert(sum >= 1.0);
  for (auto& v : w) v /= sum;

  PosteriorSummary out;
  out.log_lr = shift + std::log(sum);
  out.map_index = arg;

  const std::size_t dim = domain.dim();
  if (cost == CostKind::MSE) {
    out.theta_hat.assign(dim, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
      const auto p = domain.point(l);
      for (std::size_t d = 0; d < dim; ++d) out.theta_hat[d] += w[l] * p[d];
    }
    // Centered second moment: equals sum w|theta|^2 - |theta_hat|^2 without the cancellation.
    double var = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const auto p = domain.point(l);
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double e = p[d] - out.theta_hat[d];
        sq += e * e;
      }
      var += w[l] * sq;
    }
    out.c_o = checked_nonnegative(var);
  } else {
    out.theta_hat = domain.point_copy(arg);
    out.c_o = checked_nonnegative(1.0 - w[arg]);
  }
  if (keep_weights) out.posterior_weights = std::move(w);
  return out;
}

double posterior_cost(const ParameterDomain& domain, CostKind cost, std::span<const double> cond_llrs,
                      std::span<const double> candidate) {
  check_sizes(domain, cond_llrs);
  if (candidate.size() != domain.dim()) throw DomainError("candidate dimension mismatch");
  const auto [shift, arg] = max_shift(domain, cond_llrs);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < domain.size(); ++l) {
    const double w = std::exp(domain.log_prior(l) + cond_llrs[l] - shift);
    const auto p = domain.point(l);
    double c = 0.0;
    if (cost == CostKind::MSE) {
      for (std::size_t d = 0; d < p.size(); ++d) c += (candidate[d] - p[d]) * (candidate[d] - p[d]);
    } else {
      c = same_point(candidate, p) ? 0.0 : 1.0;
    }
    num += w * c;
    den += w;
  }
  return num / den;
}

BruteForceEstimate brute_force_bayes(const ParameterDomain& domain, CostKind cost,
                                     std::span<const double> cond_llrs, std::span<const Point> candidate_grid) {
  if (candidate_grid.empty()) throw DomainError("candidate grid is empty");
  BruteForceEstimate best{candidate_grid.front(), std::numeric_limits<double>::infinity()};
  for (const auto& u : candidate_grid) {
    const double c = posterior_cost(domain, cost, cond_llrs, u);
    if (c < best.cost) best = {u, c};
  }
  return best;
}

}  // namespace jode
