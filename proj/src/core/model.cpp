#include "jode/core/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "jode/core/errors.hpp"

namespace jode {

ParameterDomain::ParameterDomain(std::size_t dim, std::vector<double> coords, std::vector<double> prior)
    : dim_(dim), coords_(std::move(coords)), prior_(std::move(prior)) {
  if (dim_ == 0) throw DomainError("parameter dimension must be positive");
  if (prior_.empty()) throw DomainError("parameter domain is empty");
  if (coords_.size() != prior_.size() * dim_) {
    throw DomainError("coordinate count " + std::to_string(coords_.size()) + " does not match " +
                      std::to_string(prior_.size()) + " points of dimension " + std::to_string(dim_));
  }
  double total = 0.0;
  for (double w : prior_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("prior weights must be finite and nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("prior weights sum to " + std::to_string(total) + ", expected 1");
  }
  log_prior_.resize(prior_.size());
  for (std::size_t l = 0; l < prior_.size(); ++l) {
    log_prior_[l] = prior_[l] > 0.0 ? std::log(prior_[l]) : -std::numeric_limits<double>::infinity();
  }
}

ParameterDomain ParameterDomain::uniform(std::size_t dim, std::vector<double> coords) {
  if (dim == 0 || coords.empty() || coords.size() % dim != 0) {
    throw DomainError("uniform domain needs a nonempty coordinate list divisible by dim");
  }
  const std::size_t n = coords.size() / dim;
  std::vector<double> prior(n, 1.0 / static_cast<double>(n));
  // Renormalize so the 1e-12 sum check holds for any n.
  const double s = std::accumulate(prior.begin(), prior.end(), 0.0);
  for (auto& w : prior) w /= s;
  return ParameterDomain(dim, std::move(coords), std::move(prior));
}

}  // namespace jode
