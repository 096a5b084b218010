#include "jode/harness/trial.hpp"

#include "jode/core/cost.hpp"

namespace jode::harness {

TrialRecord make_record(const ParameterDomain& domain, CostKind cost, std::size_t index,
                        std::span<const double> llrs, const Point* truth) {
  TrialRecord r;
  r.index = index;
  const auto s = posterior_summary(domain, cost, llrs);
  r.log_lr = s.log_lr;
  r.theta_hat = s.theta_hat;
  r.c_o = s.c_o;

  std::size_t best = 0;
  for (std::size_t l = 1; l < llrs.size(); ++l) {
    if (llrs[l] > llrs[best]) best = l;
  }
  r.glrt_llr = llrs[best];
  r.glrt_index = best;
  r.glrt_estimate = domain.point_copy(best);

  if (truth) {
    r.hypothesis = Hypothesis::H1;
    r.truth = *truth;
    r.cost = estimate_cost(cost, r.theta_hat, r.truth);
    r.glrt_cost = estimate_cost(cost, r.glrt_estimate, r.truth);
  }
  return r;
}

}  // namespace jode::harness
