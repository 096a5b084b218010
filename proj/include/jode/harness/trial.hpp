#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jode/core/decision.hpp"
#include "jode/core/model.hpp"
#include "jode/core/posterior.hpp"
#include "jode/harness/streams.hpp"

namespace jode::harness {

/// One Monte-Carlo draw. Statistics are filled by simulate_trial; the
/// verdict fields are filled later by the sweep.
struct TrialRecord {
  std::size_t index = 0;
  Hypothesis hypothesis = Hypothesis::H0;
  Point truth;  ///< empty under H0

  double log_lr = 0.0;
  Point theta_hat;
  double c_o = 0.0;
  std::optional<double> cost;  ///< Bayes estimate vs truth; H1 only

  double glrt_llr = 0.0;  ///< max_l cond_llr
  std::size_t glrt_index = 0;
  Point glrt_estimate;
  std::optional<double> glrt_cost;

  Hypothesis np = Hypothesis::H0;
  std::vector<Verdict> two_step;  ///< one entry per calibrated fraction
  std::optional<Verdict> single_step;
  Hypothesis glrt = Hypothesis::H0;
};

/// Builds the record for an observation whose conditional log-LRs are known.
[[nodiscard]] TrialRecord make_record(const ParameterDomain& domain, CostKind cost, std::size_t index,
                                      std::span<const double> llrs, const Point* truth);

template <class Obs>
[[nodiscard]] TrialRecord simulate_trial(const JointModel<Obs>& model, Hypothesis h, std::uint64_t seed,
                                         std::size_t index, std::string_view tag) {
  RngStream rng = derive_stream(seed, index, tag);
  if (h == Hypothesis::H0) {
    const Obs x = model.sample_h0(rng);
    const auto llrs = model.cond_llrs(x);
    return make_record(model.domain(), model.cost_kind(), index, llrs, nullptr);
  }
  const H1Draw<Obs> d = model.sample_h1(rng);
  const auto llrs = model.cond_llrs(d.observation);
  return make_record(model.domain(), model.cost_kind(), index, llrs, &d.truth);
}

/// n independent trials, record i drawn from derive_stream(seed, i, tag).
/// Runs in parallel; the result does not depend on the worker count.
template <class Obs>
[[nodiscard]] std::vector<TrialRecord> simulate_batch(const JointModel<Obs>& model, Hypothesis h, std::size_t n,
                                                      std::uint64_t seed, std::string_view tag) {
  std::vector<TrialRecord> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = simulate_trial(model, h, seed, i, tag); });
  return out;
}

}  // namespace jode::harness
