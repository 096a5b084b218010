#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jode/core/model.hpp"
#include "jode/radar/likelihood.hpp"
#include "jode/radar/region.hpp"
#include "jode/radar/scene.hpp"

namespace jode::radar {

/// Q_n(theta) ~ (T / L_t) sum_k S_n(t_k, theta) S_n(t_k, theta)^H for every receiver n.
[[nodiscard]] std::vector<CMatrix> compute_q(const RadarScene& scene, Position theta);

/// Target location and reflectivities G_n (entries standard complex normal).
struct TargetDraw {
  Position theta_o;
  std::vector<CVector> g;  ///< one M-vector per receiver
};

/// theta_o uniform over the union of grid cells (cell center plus a uniform
/// offset), reflectivities N_C(0, I_M) per receiver.
[[nodiscard]] TargetDraw draw_target(const RadarScene& scene, const SurveillanceRegion& region, RngStream& rng);

/// Received increments dr_n(t_k), one row of L_t samples per receiver.
using Increments = std::vector<std::vector<cplx>>;

/// dr_n(t_k) = G_n^H S_n(t_k, theta_o) T / L_t (noise-free drift).
[[nodiscard]] Increments drift_increments(const RadarScene& scene, const TargetDraw& target);

/// dw_n(t_k) ~ N_C(0, T / L_t), drawn receiver by receiver, real part first.
[[nodiscard]] Increments noise_increments(const RadarScene& scene, RngStream& rng);

/// Correlator outputs R_n(theta_l) of one trial. The matching Gram matrices
/// Q_n(theta_l) are deterministic and live in the MatchedFilterBank.
struct MatchedStats {
  std::size_t grid_points = 0;
  std::size_t receivers = 0;
  std::size_t transmitters = 0;
  std::vector<cplx> r;  ///< index ((l * N) + n) * M + m

  [[nodiscard]] std::span<const cplx> at(std::size_t l, std::size_t n) const noexcept {
    return {r.data() + (l * receivers + n) * transmitters, transmitters};
  }
  [[nodiscard]] CVector vector_at(std::size_t l, std::size_t n) const;
};

/// Precomputed per-grid-point quantities: delays, support windows, Q_n(theta_l)
/// and the Cholesky factors of Q_n + I. Immutable after construction.
class MatchedFilterBank {
 public:
  MatchedFilterBank(RadarScene scene, std::vector<Position> grid);

  [[nodiscard]] const RadarScene& scene() const noexcept { return scene_; }
  [[nodiscard]] const std::vector<Position>& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }
  [[nodiscard]] std::size_t receivers() const noexcept { return n_rx_; }
  [[nodiscard]] std::size_t transmitters() const noexcept { return n_tx_; }

  [[nodiscard]] const CMatrix& q(std::size_t l, std::size_t n) const { return q_[l * n_rx_ + n]; }
  /// ln |Q_n(theta_l) + I|.
  [[nodiscard]] double log_det(std::size_t l, std::size_t n) const { return log_det_[l * n_rx_ + n]; }

  /// Correlates one trial's increments against every grid point using per-frequency
  /// prefix sums: O(L_t M) per receiver plus O(M) per grid point.
  [[nodiscard]] MatchedStats correlate(const Increments& dr) const;

  /// Reference path: explicit sum over samples of S_n^H(t_k, theta_l) dr_n(t_k).
  [[nodiscard]] MatchedStats correlate_direct(const Increments& dr) const;

  /// Conditional log-LR at grid point l via the stored Cholesky factors.
  [[nodiscard]] double cond_llr(const MatchedStats& stats, std::size_t l) const;
  void cond_llrs(const MatchedStats& stats, std::span<double> out) const;

 private:
  struct Tap {
    cplx coeff;  // sqrt(E) exp(j 2 pi m tau / T_s) / (sqrt(T_s) d^eta)
    SampleWindow window;
  };

  [[nodiscard]] double quadratic_form(std::size_t l, std::size_t n, std::span<const cplx> r) const;

  RadarScene scene_;
  std::vector<Position> grid_;
  std::size_t n_tx_ = 0;
  std::size_t n_rx_ = 0;
  std::vector<Tap> taps_;          // ((l * N) + n) * M + m
  std::vector<CMatrix> q_;         // l * N + n
  std::vector<double> log_det_;    // l * N + n
  std::vector<cplx> chol_;         // lower factors, M*M each, row-major
};

/// H0 when `target` is empty: the drift term is omitted. One noise sequence per
/// receiver is shared by every grid point.
[[nodiscard]] MatchedStats synthesize_r(const MatchedFilterBank& bank, const std::optional<TargetDraw>& target,
                                        RngStream& rng);

}  // namespace jode::radar
