#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "jode/core/errors.hpp"
#include "jode/radar/region.hpp"
#include "jode/radar/scene.hpp"

namespace jode::radar {
namespace {

TEST(Geometry, StandardLayout) {
  const auto s = RadarScene::standard(2, 3);
  ASSERT_EQ(s.num_tx(), 2u);
  ASSERT_EQ(s.num_rx(), 3u);
  EXPECT_EQ(s.tx[1], (Position{2.0, 0.0}));
  EXPECT_EQ(s.rx[2], (Position{0.0, 3.0}));
  EXPECT_DOUBLE_EQ(s.max_range(), 150.0);
}

TEST(Geometry, AggregateDistanceAndDelay) {
  const auto s = RadarScene::standard(1, 1);
  EXPECT_NEAR(aggregate_distance(s, {0.0, 0.0}, 0, 0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bistatic_path(s, {0.0, 0.0}, 0, 0), 2.0, 1e-15);

  RadarScene far = s;
  far.tx = {{90.0, 0.0}};
  far.rx = {{0.0, 120.0}};
  EXPECT_NEAR(delay(far, {0.0, 0.0}, 0, 0), 5e-4, 1e-18);

  RadarScene colocated = s;
  colocated.tx = {{7.0, -3.0}};
  colocated.rx = {{7.0, -3.0}};
  EXPECT_EQ(delay(colocated, {7.0, -3.0}, 0, 0), 0.0);

  const double d = 0.5 * 2.5e-4 * 3e5 * std::sqrt(2.0);
  RadarScene symmetric = s;
  symmetric.tx = {{d, 0.0}};
  symmetric.rx = {{0.0, d}};
  EXPECT_NEAR(delay(symmetric, {0.0, 0.0}, 0, 0), d * std::sqrt(2.0) / 3e5, 1e-18);
}

TEST(Waveform, ValuesAndSupport) {
  const double ts = 1e-4;
  EXPECT_NEAR(std::abs(waveform(1, 0.0, ts) - std::complex<double>(1.0 / std::sqrt(ts), 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(waveform(1, ts / 2, ts) + std::complex<double>(1.0 / std::sqrt(ts), 0.0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(waveform(2, ts / 2, ts) - std::complex<double>(1.0 / std::sqrt(ts), 0.0)), 0.0, 1e-9);
  EXPECT_EQ(waveform(1, ts, ts), std::complex<double>{});
  EXPECT_EQ(waveform(1, -1e-12, ts), std::complex<double>{});
}

TEST(Waveform, UnitEnergyAndOrthogonalityOverOnePeriod) {
  const double ts = 1e-4;
  const int samples = 200;
  const double dt = ts / samples;
  double energy = 0.0;
  std::complex<double> cross{};
  for (int k = 0; k < samples; ++k) {
    const double t = k * dt;
    energy += std::norm(waveform(1, t, ts)) * dt;
    cross += waveform(1, t, ts) * std::conj(waveform(2, t, ts)) * dt;
  }
  EXPECT_NEAR(energy, 1.0, 2e-3);
  EXPECT_LT(std::abs(cross), 2e-3);
}

TEST(Steering, SampledEnergyOverTheWindow) {
  auto s = RadarScene::standard(2, 1);
  s.time_samples = 1000;
  s.tx = {{0.0, 0.0}, {0.0, 0.0}};
  s.rx = {{0.0, 0.0}};
  double energy = 0.0;
  std::complex<double> cross{};
  for (std::size_t k = 0; k < s.time_samples; ++k) {
    const auto row = steering_sample(s, 0, k, {0.0, 0.0});
    energy += std::norm(row[0]) * s.dt();
    cross += row[0] * std::conj(row[1]) * s.dt();
  }
  EXPECT_NEAR(energy, 1.0, 1e-12);
  EXPECT_LT(std::abs(cross), 1e-12);
}

TEST(Waveform, SupportWindowAgreesWithPredicate) {
  auto s = RadarScene::standard(2, 2);
  for (double tau : {0.0, 1e-6, 3.3e-6, 2.5e-4, 4.0e-4, 4.95e-4, 5e-4, 7e-4}) {
    const auto w = support_window(s, tau);
    for (std::size_t k = 0; k < s.time_samples; ++k) {
      EXPECT_EQ(in_support(s, k, tau), k >= w.begin && k < w.end) << tau << " " << k;
    }
  }
  EXPECT_EQ(support_window(s, 0.0).size(), 100u);
  EXPECT_EQ(support_window(s, 7e-4).size(), 0u);
}

TEST(Steering, EntriesFollowDelayedWaveforms) {
  auto s = RadarScene::standard(3, 2);
  s.energy = 4.0;
  const Position theta{20.0, -15.0};
  const double t = 2.1e-4;
  const auto row = steering_row(s, 1, t, theta);
  ASSERT_EQ(row.size(), 3u);
  for (std::size_t m = 0; m < 3; ++m) {
    const auto expected = 2.0 * waveform(static_cast<int>(m) + 1, t - delay(s, theta, m, 1), s.signal_duration);
    EXPECT_NEAR(std::abs(row[m] - expected), 0.0, 1e-9);
  }
  const auto k = std::size_t{210};
  const auto sample = steering_sample(s, 1, k, theta);
  const auto direct = steering_row(s, 1, s.sample_time(k), theta);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(std::abs(sample[m] - direct[m]), 0.0, 1e-9);
}

TEST(Steering, PathLossScalesByDistance) {
  auto s = RadarScene::standard(1, 1);
  s.path_loss_eta = 1.0;
  const Position theta{30.0, 40.0};
  const double tau = delay(s, theta, 0, 0);
  const double t = tau + 1e-5;
  const auto row = steering_row(s, 0, t, theta);
  const auto expected = waveform(1, t - tau, s.signal_duration) / aggregate_distance(s, theta, 0, 0);
  EXPECT_NEAR(std::abs(row[0] - expected), 0.0, 1e-9);
}

TEST(Energy, SnrCalibrationWithoutPathLoss) {
  EXPECT_NEAR(calibrate_energy(RadarScene::standard(2, 2), 0.0), 2.5e-4, 1e-18);
  EXPECT_NEAR(calibrate_energy(RadarScene::standard(3, 2), 10.0), 5e-3 / 3.0, 1e-15);
  EXPECT_NEAR(db_to_linear(-10.0), 0.1, 1e-15);
}

TEST(Energy, VanishingPathLossMatchesTheNoLossFormula) {
  auto s = RadarScene::standard(2, 2);
  const auto grid = build_region_grid(s, RegionMode::Disc, 10.0).grid;
  s.path_loss_eta = 1e-6;
  EXPECT_NEAR(calibrate_energy(s, 0.0, grid) / 2.5e-4, 1.0, 1e-2);
  EXPECT_THROW((void)calibrate_energy(s, 0.0), DomainError);
}

TEST(Region, DiscGridHas177Points) {
  const auto s = RadarScene::standard(2, 2);
  const auto r = build_region_grid(s, RegionMode::Disc, 10.0);
  EXPECT_EQ(r.size(), 177u);
  for (const auto& p : r.grid) EXPECT_TRUE(region_contains(s, RegionMode::Disc, 75.0, p));
}

TEST(Region, EllipseGridIsCloseToTheDisc) {
  const auto s = RadarScene::standard(2, 2);
  const auto r = build_region_grid(s, RegionMode::EllipseUnion, 10.0);
  EXPECT_GE(static_cast<double>(r.size()), 161.1);
  EXPECT_LE(static_cast<double>(r.size()), 196.9);
  for (const auto& p : r.grid) EXPECT_TRUE(region_contains(s, RegionMode::EllipseUnion, 75.0, p));
}

TEST(Region, CoarseCellsAndErrors) {
  const auto s = RadarScene::standard(2, 2);
  const auto coarse = build_region_grid(s, RegionMode::Disc, 150.0);
  EXPECT_GE(coarse.size(), 1u);
  EXPECT_LT(coarse.size(), 10u);
  EXPECT_THROW((void)build_region_grid(s, RegionMode::Disc, 0.0), DomainError);
  EXPECT_THROW((void)build_region_grid(s, RegionMode::Disc, 10.0, -1.0), DomainError);
  EXPECT_EQ(parse_region_mode("ellipse"), RegionMode::EllipseUnion);
  EXPECT_EQ(to_string(RegionMode::Disc), "disc");
  EXPECT_THROW((void)parse_region_mode("square"), DomainError);
}

}  // namespace
}  // namespace jode::radar
