#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "jode/changepoint/changepoint.hpp"
#include "jode/core/errors.hpp"
#include "jode/core/posterior.hpp"

namespace jode::changepoint {
namespace {

double normal_log_pdf(double x, double mean) { return -0.5 * (x - mean) * (x - mean) - 0.5 * std::log(2.0 * std::numbers::pi); }

TEST(SampleSeries, ChangeAtZeroIsAllAlternative) {
  const auto m = ChangepointModel::gaussian_mean_shift(12, 1000.0);
  RngStream rng(1);
  const auto x = sample_series(m, std::size_t{0}, rng);
  ASSERT_EQ(x.values.size(), 12u);
  EXPECT_EQ(x.change, std::size_t{0});
  for (double v : x.values) EXPECT_GT(v, 500.0);
}

TEST(SampleSeries, NoChangeIsAllNominal) {
  const auto m = ChangepointModel::gaussian_mean_shift(12, 1000.0);
  RngStream rng(2);
  const auto x = sample_series(m, std::nullopt, rng);
  EXPECT_FALSE(x.change);
  for (double v : x.values) EXPECT_LT(v, 500.0);
}

TEST(SampleSeries, LastChangeTimeLeavesOneAlternativeSample) {
  const auto m = ChangepointModel::gaussian_mean_shift(9, 1000.0);
  RngStream rng(3);
  const auto x = sample_series(m, std::size_t{8}, rng);
  EXPECT_EQ(std::count_if(x.values.begin(), x.values.end(), [](double v) { return v > 500.0; }), 1);
  EXPECT_GT(x.values.back(), 500.0);
  EXPECT_THROW((void)sample_series(m, std::size_t{9}, rng), DomainError);
}

TEST(CondLlr, UnitShiftAlgebra) {
  const auto m = ChangepointModel::gaussian_mean_shift(5, 1.0);
  DataSeries x{{0.1, -0.4, 2.0, 1.3, 0.5}, std::nullopt};
  EXPECT_NEAR(cond_llr(m, x, 4), 0.0, 1e-15);
  EXPECT_NEAR(cond_llr(m, x, 3), 1.3 - 0.5, 1e-15);
  EXPECT_NEAR(cond_llr(m, x, 0), (0.1 + -0.4 + 2.0 + 1.3 + 0.5) - 2.5, 1e-14);
}

TEST(CondLlr, MatchesDensityProductOracle) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (double mu : {0.3, 1.0, -2.0}) {
    const auto m = ChangepointModel::gaussian_mean_shift(20, mu);
    DataSeries x;
    for (int k = 0; k < 20; ++k) x.values.push_back(z(rng) + (k > 10 ? mu : 0.0));
    const auto all = cond_llrs(m, x);
    for (std::size_t tau = 0; tau < 20; ++tau) {
      double h = 0.0, f = 0.0;
      for (std::size_t k = tau; k < 20; ++k) {
        h += normal_log_pdf(x.values[k], mu);
        f += normal_log_pdf(x.values[k], 0.0);
      }
      EXPECT_NEAR(all[tau], h - f, 1e-12);
      EXPECT_NEAR(cond_llr(m, x, tau), h - f, 1e-12);
    }
  }
}

TEST(CondLlr, UnequalVarianceDensities) {
  ChangepointModel m;
  m.n_samples = 6;
  m.alternative = {0.5, 2.0};
  DataSeries x{{0.3, -1.2, 0.8, 2.2, -0.1, 1.7}, std::nullopt};
  for (std::size_t tau = 0; tau < 6; ++tau) {
    double expected = 0.0;
    for (std::size_t k = tau; k < 6; ++k) {
      const double v = x.values[k];
      expected += (-0.5 * (v - 0.5) * (v - 0.5) / 4.0 - std::log(2.0)) - (-0.5 * v * v);
    }
    EXPECT_NEAR(cond_llr(m, x, tau), expected, 1e-12);
  }
}

TEST(CondLlr, DependentHooksReproduceIidCase) {
  auto iid = ChangepointModel::gaussian_mean_shift(10, 0.8);
  auto dep = iid;
  dep.iid = false;
  dep.nominal_conditional = [](std::span<const double>, double v) { return normal_log_pdf(v, 0.0); };
  dep.alternative_conditional = [](std::span<const double>, double v) { return normal_log_pdf(v, 0.8); };
  RngStream rng(6);
  const auto x = sample_series(iid, std::size_t{4}, rng);
  const auto a = cond_llrs(iid, x);
  const auto b = cond_llrs(dep, x);
  for (std::size_t t = 0; t < a.size(); ++t) EXPECT_NEAR(a[t], b[t], 1e-12);
}

TEST(CondLlr, AutoregressiveHookUsesThePast) {
  ChangepointModel m;
  m.n_samples = 4;
  m.iid = false;
  m.nominal_conditional = [](std::span<const double> past, double v) {
    const double mean = past.empty() ? 0.0 : 0.5 * past.back();
    return normal_log_pdf(v, mean);
  };
  m.alternative_conditional = [](std::span<const double> past, double v) {
    const double mean = past.empty() ? 1.0 : 0.5 * past.back() + 1.0;
    return normal_log_pdf(v, mean);
  };
  DataSeries x{{0.2, 1.1, -0.3, 0.9}, std::nullopt};
  double expected = 0.0;
  for (std::size_t k = 2; k < 4; ++k) {
    const double prev = 0.5 * x.values[k - 1];
    expected += normal_log_pdf(x.values[k], prev + 1.0) - normal_log_pdf(x.values[k], prev);
  }
  EXPECT_NEAR(cond_llr(m, x, 2), expected, 1e-12);
}

TEST(CondLlr, NoShiftMeansUnitLikelihoodRatio) {
  const auto m = ChangepointModel::gaussian_mean_shift(16, 0.0);
  const auto jm = as_joint_model(m);
  RngStream rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto x = jm.sample_h1(rng).observation;
    EXPECT_NEAR(posterior_summary(jm, x).log_lr, 0.0, 1e-12);
  }
}

TEST(JointModel, SingleSampleIsAlwaysReliable) {
  const auto jm = as_joint_model(ChangepointModel::gaussian_mean_shift(1, 1.0));
  RngStream rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto s = posterior_summary(jm, jm.sample_h0(rng));
    EXPECT_EQ(s.theta_hat, Point{0.0});
    EXPECT_EQ(s.c_o, 0.0);
  }
}

TEST(JointModel, DominantChangeTimeDrivesCostToZero) {
  const auto m = ChangepointModel::gaussian_mean_shift(10, 8.0);
  DataSeries x{{0, 0, 0, 0, 0, 0, 8, 8, 8, 8}, std::nullopt};
  const auto s = posterior_summary(as_joint_model(m), x);
  EXPECT_EQ(s.theta_hat, Point{6.0});
  EXPECT_LT(s.c_o, 1e-12);
}

TEST(JointModel, CostMatchesDirectSummation) {
  const auto m = ChangepointModel::gaussian_mean_shift(4, 1.0);
  const auto jm = as_joint_model(m);
  RngStream rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto x = jm.sample_h1(rng).observation;
    double total = 0.0, best = 0.0;
    std::size_t arg = 0;
    for (std::size_t tau = 0; tau < 4; ++tau) {
      double llr = 0.0;
      for (std::size_t k = tau; k < 4; ++k) llr += x.values[k] - 0.5;
      const double w = 0.25 * std::exp(llr);
      total += w;
      if (w > best) {
        best = w;
        arg = tau;
      }
    }
    const auto s = posterior_summary(jm, x);
    EXPECT_NEAR(s.c_o, 1.0 - best / total, 1e-12);
    EXPECT_EQ(s.theta_hat[0], static_cast<double>(arg));
    EXPECT_NEAR(s.log_lr, std::log(total), 1e-12);
  }
}

TEST(JointModel, NonUniformPriorEntersTheMap) {
  auto m = ChangepointModel::gaussian_mean_shift(3, 1.0);
  m.prior = {0.98, 0.01, 0.01};
  const auto jm = as_joint_model(m);
  DataSeries x{{0.5, 0.5, 0.6}, std::nullopt};
  EXPECT_EQ(posterior_summary(jm, x).theta_hat, Point{0.0});
  m.prior = {0.5, 0.6};
  EXPECT_THROW(m.validate(), DomainError);
}

TEST(Glrt, SingleSample) {
  const auto m = ChangepointModel::gaussian_mean_shift(1, 1.0);
  DataSeries x{{2.0}, std::nullopt};
  const auto g = glrt_stat(m, x);
  EXPECT_EQ(g.tau_hat, 0u);
  EXPECT_NEAR(g.max_llr, 1.5, 1e-15);
}

TEST(Glrt, TiesPickSmallestIndex) {
  const std::vector<double> flat(7, 0.25);
  EXPECT_EQ(glrt_from_llrs(flat).tau_hat, 0u);
  const auto g = glrt_stat(ChangepointModel::gaussian_mean_shift(5, 0.0), DataSeries{{1, 2, 3, 4, 5}, {}});
  EXPECT_EQ(g.tau_hat, 0u);
}

TEST(Glrt, MatchesExhaustiveScan) {
  const auto m = ChangepointModel::gaussian_mean_shift(16, 1.0);
  const auto jm = as_joint_model(m);
  RngStream rng(10);
  for (int i = 0; i < 500; ++i) {
    const auto x = jm.sample_h1(rng).observation;
    std::size_t best = 0;
    double best_v = cond_llr(m, x, 0);
    for (std::size_t t = 1; t < 16; ++t) {
      const double v = cond_llr(m, x, t);
      if (v > best_v) {
        best_v = v;
        best = t;
      }
    }
    const auto g = glrt_stat(m, x);
    EXPECT_EQ(g.tau_hat, best);
    EXPECT_NEAR(g.max_llr, best_v, 1e-12);
  }
}

TEST(SeriesCsv, HeaderAndOneBasedRows) {
  std::ostringstream os;
  write_series_csv(os, DataSeries{{0.5, -1.25}, std::size_t{1}});
  EXPECT_EQ(os.str(), "k,value\n1,0.5\n2,-1.25\n");
}

}  // namespace
}  // namespace jode::changepoint
