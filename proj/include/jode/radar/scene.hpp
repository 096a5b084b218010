#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace jode::radar {

using cplx = std::complex<double>;

/// Planar position in Km.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

[[nodiscard]] double norm(Position p) noexcept;
[[nodiscard]] double distance(Position a, Position b) noexcept;

/// Half-open index range [begin, end) of time samples.
struct SampleWindow {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
};

/// Antenna geometry, waveform timing and energy of a widely separated MIMO
/// radar. Transmitter m (0-based) emits the complex exponential with
/// frequency index m + 1. Time is sampled at the left endpoints
/// t_k = k T / L_t, k = 0..L_t-1.
struct RadarScene {
  std::vector<Position> tx;
  std::vector<Position> rx;
  double signal_duration = 1e-4;    ///< T_s [s]
  double integration_time = 5e-4;   ///< T [s]
  double energy = 1.0;              ///< E, combined with reflectivity/noise variances
  double path_loss_eta = 0.0;
  double light_speed = 3e5;         ///< c [Km/s]
  std::size_t time_samples = 500;   ///< L_t

  /// tx_m = (m, 0), rx_n = (0, n) Km for m = 1..M, n = 1..N.
  [[nodiscard]] static RadarScene standard(std::size_t m, std::size_t n);

  void validate() const;

  [[nodiscard]] std::size_t num_tx() const noexcept { return tx.size(); }
  [[nodiscard]] std::size_t num_rx() const noexcept { return rx.size(); }
  [[nodiscard]] double dt() const noexcept { return integration_time / static_cast<double>(time_samples); }
  [[nodiscard]] double sample_time(std::size_t k) const noexcept { return static_cast<double>(k) * dt(); }
  /// c T, the largest aggregate path that still returns inside the window.
  [[nodiscard]] double max_range() const noexcept { return light_speed * integration_time; }
};

/// sqrt(|theta - tx_m|^2 + |theta - rx_n|^2).
[[nodiscard]] double aggregate_distance(const RadarScene& scene, Position theta, std::size_t m, std::size_t n);

/// Physical bistatic path |theta - tx_m| + |theta - rx_n| (used for region membership).
[[nodiscard]] double bistatic_path(const RadarScene& scene, Position theta, std::size_t m, std::size_t n);

[[nodiscard]] double delay(const RadarScene& scene, Position theta, std::size_t m, std::size_t n);

/// s_m(t) = exp(j 2 pi m t / T_s) / sqrt(T_s) for t in [0, T_s), zero elsewhere.
[[nodiscard]] cplx waveform(int freq_index, double t, double signal_duration);

/// True iff sample time t_k falls inside the support of a waveform delayed by tau,
/// with boundaries snapped by 1e-9 dt.
[[nodiscard]] bool in_support(const RadarScene& scene, std::size_t k, double tau);

/// Samples k whose t_k lies in the delayed support; agrees exactly with in_support.
[[nodiscard]] SampleWindow support_window(const RadarScene& scene, double tau);

/// Entry m: sqrt(E) s_{m+1}(t - tau_mn(theta)) / d_mn(theta)^eta.
[[nodiscard]] std::vector<cplx> steering_row(const RadarScene& scene, std::size_t n, double t, Position theta);

/// Same vector at sample index k, gated by in_support.
[[nodiscard]] std::vector<cplx> steering_sample(const RadarScene& scene, std::size_t n, std::size_t k,
                                                Position theta);

/// SNR ~ E M / T with no path loss; otherwise averages sum_n sum_m d^-2eta
/// over the supplied grid (required when eta > 0).
[[nodiscard]] double calibrate_energy(const RadarScene& scene, double snr_db,
                                      const std::vector<Position>& grid = {});

[[nodiscard]] double db_to_linear(double db) noexcept;

}  // namespace jode::radar
