#include <gtest/gtest.h>

#include "jode/verify/oracles.hpp"

namespace jode::verify {
namespace {

OracleOptions small() {
  OracleOptions o;
  o.girsanov_scenes = 4;
  o.girsanov_draws = 200000;
  o.identity_cases = 40;
  o.estimator_models = 20;
  o.rescaling_models = 20;
  o.changepoint_series = 2000;
  return o;
}

TEST(Oracles, GirsanovAverage) {
  const auto r = girsanov_average(small());
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Oracles, DeterminantIdentity) {
  const auto r = determinant_identity(small());
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Oracles, BayesEstimatorIsOptimalOnFiniteModels) {
  const auto r = bayes_estimator_brute_force(small());
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Oracles, RescalingInvariance) {
  const auto r = rescaling_invariance(small());
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Oracles, ChangepointIdentities) {
  const auto r = changepoint_identities(small());
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Oracles, OtherSeedsAlsoPass) {
  auto o = small();
  for (std::uint64_t seed : {1ULL, 99ULL}) {
    o.seed = seed;
    for (const auto& r : run_all(o)) EXPECT_TRUE(r.pass) << seed << " " << r.name << ": " << r.detail;
  }
}

}  // namespace
}  // namespace jode::verify
