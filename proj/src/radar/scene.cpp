#include "jode/radar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jode/core/errors.hpp"

namespace jode::radar {

double norm(Position p) noexcept { return std::hypot(p.x, p.y); }

double distance(Position a, Position b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

RadarScene RadarScene::standard(std::size_t m, std::size_t n) {
  RadarScene s;
  for (std::size_t i = 1; i <= m; ++i) s.tx.push_back({static_cast<double>(i), 0.0});
  for (std::size_t i = 1; i <= n; ++i) s.rx.push_back({0.0, static_cast<double>(i)});
  s.validate();
  return s;
}

void RadarScene::validate() const {
  if (tx.empty() || rx.empty()) throw DomainError("radar scene needs at least one transmitter and one receiver");
  if (!(signal_duration > 0.0)) throw DomainError("signal duration must be positive");
  if (integration_time < signal_duration) throw DomainError("integration time T must be >= signal duration T_s");
  if (!(energy > 0.0)) throw DomainError("energy E must be positive");
  if (!(path_loss_eta >= 0.0)) throw DomainError("path-loss exponent must be nonnegative");
  if (!(light_speed > 0.0)) throw DomainError("propagation speed must be positive");
  if (time_samples < 2) throw DomainError("need at least two time samples");
}

double aggregate_distance(const RadarScene& scene, Position theta, std::size_t m, std::size_t n) {
  const double a = distance(theta, scene.tx.at(m));
  const double b = distance(theta, scene.rx.at(n));
  return std::sqrt(a * a + b * b);
}

double bistatic_path(const RadarScene& scene, Position theta, std::size_t m, std::size_t n) {
  return distance(theta, scene.tx.at(m)) + distance(theta, scene.rx.at(n));
}

double delay(const RadarScene& scene, Position theta, std::size_t m, std::size_t n) {
  return aggregate_distance(scene, theta, m, n) / scene.light_speed;
}

cplx waveform(int freq_index, double t, double signal_duration) {
  if (t < 0.0 || t >= signal_duration) return {0.0, 0.0};
  const double phase = 2.0 * std::numbers::pi * freq_index * t / signal_duration;
  return std::polar(1.0 / std::sqrt(signal_duration), phase);
}

namespace {

// Sample times are products k * dt; without a snap tolerance a boundary that falls
// exactly on a sample would be decided by rounding.
double snap(const RadarScene& scene) noexcept { return 1e-9 * scene.dt(); }

}  // namespace

bool in_support(const RadarScene& scene, std::size_t k, double tau) {
  const double u = scene.sample_time(k) - tau;
  return u >= -snap(scene) && u < scene.signal_duration - snap(scene);
}

SampleWindow support_window(const RadarScene& scene, double tau) {
  const std::size_t n = scene.time_samples;
  const double dt = scene.dt();
  const double eps = snap(scene);
  auto started = [&](std::size_t k) { return scene.sample_time(k) - tau >= -eps; };
  auto finished = [&](std::size_t k) { return scene.sample_time(k) - tau >= scene.signal_duration - eps; };

  auto guess = [&](double t) {
    const double g = std::ceil(t / dt);
    if (!(g > 0.0)) return std::size_t{0};
    return static_cast<std::size_t>(std::min(g, static_cast<double>(n)));
  };
  // Both predicates are monotone in k; nudge the arithmetic guess onto the exact boundary.
  std::size_t b = guess(tau);
  while (b > 0 && started(b - 1)) --b;
  while (b < n && !started(b)) ++b;
  std::size_t e = std::max(b, guess(tau + scene.signal_duration));
  while (e > b && finished(e - 1)) --e;
  while (e < n && !finished(e)) ++e;
  return {b, e};
}

namespace {

cplx steering_entry(const RadarScene& scene, std::size_t m, std::size_t n, double u, Position theta) {
  double gain = std::sqrt(scene.energy / scene.signal_duration);
  if (scene.path_loss_eta != 0.0) gain /= std::pow(aggregate_distance(scene, theta, m, n), scene.path_loss_eta);
  return std::polar(gain, 2.0 * std::numbers::pi * static_cast<double>(m + 1) * u / scene.signal_duration);
}

}  // namespace

std::vector<cplx> steering_row(const RadarScene& scene, std::size_t n, double t, Position theta) {
  std::vector<cplx> row(scene.num_tx());
  for (std::size_t m = 0; m < row.size(); ++m) {
    const double u = t - delay(scene, theta, m, n);
    if (u >= 0.0 && u < scene.signal_duration) row[m] = steering_entry(scene, m, n, u, theta);
  }
  return row;
}

std::vector<cplx> steering_sample(const RadarScene& scene, std::size_t n, std::size_t k, Position theta) {
  std::vector<cplx> row(scene.num_tx());
  const double t = scene.sample_time(k);
  for (std::size_t m = 0; m < row.size(); ++m) {
    const double tau = delay(scene, theta, m, n);
    if (in_support(scene, k, tau)) row[m] = steering_entry(scene, m, n, t - tau, theta);
  }
  return row;
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double calibrate_energy(const RadarScene& scene, double snr_db, const std::vector<Position>& grid) {
  scene.validate();
  const double snr = db_to_linear(snr_db);
  const double m = static_cast<double>(scene.num_tx());
  const double n = static_cast<double>(scene.num_rx());
  if (scene.path_loss_eta == 0.0) return snr * scene.integration_time / m;
  if (grid.empty()) throw DomainError("energy calibration with path loss needs the surveillance grid");
  double acc = 0.0;
  for (const auto& p : grid) {
    for (std::size_t i = 0; i < scene.num_tx(); ++i) {
      for (std::size_t j = 0; j < scene.num_rx(); ++j) {
        acc += std::pow(aggregate_distance(scene, p, i, j), -2.0 * scene.path_loss_eta);
      }
    }
  }
  const double mean_gain = acc / static_cast<double>(grid.size());
  return snr * n * scene.integration_time / mean_gain;
}

}  // namespace jode::radar
