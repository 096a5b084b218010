#include "jode/core/cost.hpp"

#include "jode/core/errors.hpp"

namespace jode {

ConditionalCost conditional_cost(std::span<const Verdict> verdicts, std::span<const double> costs, Verdict selector) {
  if (verdicts.size() != costs.size()) throw DomainError("verdict and cost lists differ in length");
  ConditionalCost out;
  double sum = 0.0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i] != selector) continue;
    sum += costs[i];
    ++out.count;
  }
  if (out.count > 0) out.mean = sum / static_cast<double>(out.count);
  return out;
}

double estimate_cost(CostKind cost, std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size()) throw DomainError("estimate and truth dimensions differ");
  if (cost == CostKind::ZeroOne) {
    for (std::size_t d = 0; d < truth.size(); ++d) {
      if (estimate[d] != truth[d]) return 1.0;
    }
    return 0.0;
  }
  double sq = 0.0;
  for (std::size_t d = 0; d < truth.size(); ++d) sq += (estimate[d] - truth[d]) * (estimate[d] - truth[d]);
  return sq;
}

}  // namespace jode
