#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "jode/core/errors.hpp"
#include "jode/core/posterior.hpp"

namespace jode {
namespace {

TEST(ParameterDomain, RejectsPriorNotSummingToOne) {
  EXPECT_THROW(ParameterDomain(1, {0.0, 1.0}, {0.5, 0.6}), DomainError);
  EXPECT_NO_THROW(ParameterDomain(1, {0.0, 1.0}, {0.25, 0.75}));
}

TEST(ParameterDomain, UniformSplitsMassEvenly) {
  const auto d = ParameterDomain::uniform(2, {0, 0, 1, 1, 2, 2});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.dim(), 2u);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_NEAR(d.prior(l), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(d.point(2)[1], 2.0);
}

TEST(PosteriorSummary, SinglePointDomainIsDegenerate) {
  const auto d = ParameterDomain::uniform(2, {3.0, -4.0});
  const std::vector<double> llr{1.75};
  for (CostKind kind : {CostKind::MSE, CostKind::ZeroOne}) {
    const auto s = posterior_summary(d, kind, llr);
    EXPECT_EQ(s.theta_hat, (Point{3.0, -4.0}));
    EXPECT_EQ(s.c_o, 0.0);
    EXPECT_DOUBLE_EQ(s.log_lr, 1.75);
  }
}

TEST(PosteriorSummary, SymmetricTwoPointMse) {
  const auto d = ParameterDomain::uniform(1, {-1.0, 1.0});
  const std::vector<double> llr{0.3, 0.3};
  const auto s = posterior_summary(d, CostKind::MSE, llr);
  EXPECT_NEAR(s.theta_hat[0], 0.0, 1e-15);
  EXPECT_NEAR(s.c_o, 1.0, 1e-15);
  EXPECT_NEAR(s.log_lr, 0.3, 1e-15);
}

TEST(PosteriorSummary, ThreePointMseMatchesHandComputation) {
  const ParameterDomain d(1, {0.0, 1.0, 2.0}, {0.5, 0.25, 0.25});
  const std::vector<double> llr{0.0, std::log(2.0), std::log(4.0)};
  const auto s = posterior_summary(d, CostKind::MSE, llr, true);
  ASSERT_TRUE(s.posterior_weights);
  EXPECT_NEAR((*s.posterior_weights)[0], 0.25, 1e-15);
  EXPECT_NEAR((*s.posterior_weights)[1], 0.25, 1e-15);
  EXPECT_NEAR((*s.posterior_weights)[2], 0.5, 1e-15);
  EXPECT_NEAR(s.theta_hat[0], 1.25, 1e-14);
  EXPECT_NEAR(s.c_o, 0.6875, 1e-14);
  EXPECT_NEAR(s.log_lr, std::log(0.5 + 0.5 + 1.0), 1e-14);
}

TEST(PosteriorSummary, ZeroOneUsesMapAndMaxWeight) {
  const ParameterDomain d(1, {0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
  const std::vector<double> llr{2.0, 1.0, 0.5};
  const auto s = posterior_summary(d, CostKind::ZeroOne, llr);
  std::vector<double> w{0.2 * std::exp(2.0), 0.3 * std::exp(1.0), 0.5 * std::exp(0.5)};
  const double total = w[0] + w[1] + w[2];
  EXPECT_EQ(s.theta_hat[0], 0.0);
  EXPECT_EQ(s.map_index, 0u);
  EXPECT_NEAR(s.c_o, 1.0 - w[0] / total, 1e-14);
  EXPECT_NEAR(s.log_lr, std::log(total), 1e-14);
}

TEST(PosteriorSummary, ZeroOneTieGoesToSmallestIndex) {
  const auto d = ParameterDomain::uniform(1, {5.0, 6.0, 7.0});
  const auto s = posterior_summary(d, CostKind::ZeroOne, std::vector<double>{1.0, 3.0, 3.0});
  EXPECT_EQ(s.map_index, 1u);
}

TEST(PosteriorSummary, NonFiniteLikelihoodIsRejected) {
  const auto d = ParameterDomain::uniform(1, {0.0, 1.0});
  EXPECT_THROW((void)posterior_summary(d, CostKind::MSE, std::vector<double>{0.0, std::nan("")}), DomainError);
  EXPECT_THROW((void)posterior_summary(d, CostKind::MSE,
                                       std::vector<double>{0.0, std::numeric_limits<double>::infinity()}),
               DomainError);
}

TEST(PosteriorSummary, HugeExponentsStayNormalized) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-800.0, 800.0);
  std::uniform_real_distribution<double> c(-50.0, 50.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 9;
    std::vector<double> coords(2 * n);
    for (auto& x : coords) x = c(rng);
    const auto d = ParameterDomain::uniform(2, coords);
    std::vector<double> llr(n);
    for (auto& v : llr) v = u(rng);
    for (CostKind kind : {CostKind::MSE, CostKind::ZeroOne}) {
      const auto s = posterior_summary(d, kind, llr, true);
      double sum = 0.0;
      for (double w : *s.posterior_weights) sum += w;
      EXPECT_NEAR(sum, 1.0, 1e-10);
      EXPECT_GE(s.c_o, 0.0);
      EXPECT_TRUE(std::isfinite(s.log_lr));
      if (kind == CostKind::ZeroOne) EXPECT_LT(s.c_o, 1.0);
      if (kind == CostKind::MSE) {
        double second = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
          const auto p = d.point(l);
          second += (*s.posterior_weights)[l] * (p[0] * p[0] + p[1] * p[1]);
        }
        const double mean_sq = s.theta_hat[0] * s.theta_hat[0] + s.theta_hat[1] * s.theta_hat[1];
        EXPECT_NEAR(s.c_o, std::max(0.0, second - mean_sq), 1e-8 * std::max(1.0, second));
      }
    }
  }
}

TEST(PosteriorSummary, LogMarginalMatchesDirectSum) {
  const ParameterDomain d(1, {0.0, 1.0, 2.0, 3.0}, {0.1, 0.2, 0.3, 0.4});
  const std::vector<double> llr{-1.0, 0.5, 2.0, -0.25};
  double direct = 0.0;
  for (std::size_t l = 0; l < 4; ++l) direct += d.prior(l) * std::exp(llr[l]);
  EXPECT_NEAR(log_marginal_lr(d, llr), std::log(direct), 1e-14);
}

TEST(BruteForceBayes, ZeroOneOnDomainGridIsMap) {
  const ParameterDomain d(1, {0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
  const std::vector<double> llr{0.1, 1.2, 0.4};
  const std::vector<Point> grid{{0.0}, {1.0}, {2.0}};
  const auto bf = brute_force_bayes(d, CostKind::ZeroOne, llr, grid);
  const auto s = posterior_summary(d, CostKind::ZeroOne, llr);
  EXPECT_EQ(bf.point, s.theta_hat);
  EXPECT_NEAR(bf.cost, s.c_o, 1e-14);
}

TEST(BruteForceBayes, SymmetricTwoPointMsePicksZero) {
  const auto d = ParameterDomain::uniform(1, {-1.0, 1.0});
  const std::vector<Point> grid{{-1.0}, {-0.5}, {0.0}, {0.5}, {1.0}};
  const auto bf = brute_force_bayes(d, CostKind::MSE, std::vector<double>{0.0, 0.0}, grid);
  EXPECT_EQ(bf.point, Point{0.0});
  EXPECT_NEAR(bf.cost, 1.0, 1e-15);
}

TEST(BruteForceBayes, DenseGridArgminIsWithinOneCellOfPosteriorMean) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> coords(8);
    for (auto& x : coords) x = -2.0 + 4.0 * u(rng);
    const auto d = ParameterDomain::uniform(2, coords);
    std::vector<double> llr(4);
    for (auto& v : llr) v = -3.0 + 6.0 * u(rng);
    const double cell = 0.05;
    std::vector<Point> grid;
    for (int i = -40; i <= 40; ++i) {
      for (int j = -40; j <= 40; ++j) grid.push_back({i * cell, j * cell});
    }
    const auto bf = brute_force_bayes(d, CostKind::MSE, llr, grid);
    const auto s = posterior_summary(d, CostKind::MSE, llr);
    EXPECT_LE(std::abs(bf.point[0] - s.theta_hat[0]), cell);
    EXPECT_LE(std::abs(bf.point[1] - s.theta_hat[1]), cell);
    EXPECT_GE(bf.cost + 1e-12, s.c_o);
    EXPECT_NEAR(posterior_cost(d, CostKind::MSE, llr, s.theta_hat), s.c_o, 1e-10);
  }
}

}  // namespace
}  // namespace jode
