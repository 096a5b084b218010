#include "jode/radar/matched_filter.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "jode/core/errors.hpp"

namespace jode::radar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string where(Position p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

void check_hermitian_psd(const CMatrix& q, Position theta) {
  const double scale = std::max(1.0, q.norm());
  if ((q - q.adjoint()).norm() > 1e-10 * scale) {
    throw NumericError("Q is not Hermitian at grid point " + where(theta));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8 * q.norm()) {
    throw NumericError("Q is not positive semidefinite at grid point " + where(theta));
  }
}

}  // namespace

std::vector<CMatrix> compute_q(const RadarScene& scene, Position theta) {
  scene.validate();
  const std::size_t m = scene.num_tx();
  const double dt = scene.dt();
  std::vector<CMatrix> out;
  out.reserve(scene.num_rx());
  for (std::size_t n = 0; n < scene.num_rx(); ++n) {
    CMatrix q = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < scene.time_samples; ++k) {
      const auto s = steering_sample(scene, n, k, theta);
      for (std::size_t i = 0; i < m; ++i) {
        if (s[i] == cplx{}) continue;
        for (std::size_t j = 0; j < m; ++j) q(i, j) += s[i] * std::conj(s[j]);
      }
    }
    out.push_back(q * dt);
  }
  return out;
}

CVector MatchedStats::vector_at(std::size_t l, std::size_t n) const {
  const auto v = at(l, n);
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

TargetDraw draw_target(const RadarScene& scene, const SurveillanceRegion& region, RngStream& rng) {
  if (region.grid.empty()) throw DomainError("cannot draw a target from an empty grid");
  std::uniform_int_distribution<std::size_t> cell(0, region.grid.size() - 1);
  std::uniform_real_distribution<double> offset(-0.5 * region.cell_size, 0.5 * region.cell_size);
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));

  TargetDraw t;
  const Position c = region.grid[cell(rng)];
  const double dx = offset(rng);
  const double dy = offset(rng);
  t.theta_o = {c.x + dx, c.y + dy};
  t.g.resize(scene.num_rx());
  for (auto& g : t.g) {
    g.resize(static_cast<Eigen::Index>(scene.num_tx()));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double re = half(rng);
      const double im = half(rng);
      g(i) = {re, im};
    }
  }
  return t;
}

Increments drift_increments(const RadarScene& scene, const TargetDraw& target) {
  const double dt = scene.dt();
  Increments dr(scene.num_rx(), std::vector<cplx>(scene.time_samples));
  for (std::size_t n = 0; n < scene.num_rx(); ++n) {
    for (std::size_t k = 0; k < scene.time_samples; ++k) {
      const auto s = steering_sample(scene, n, k, target.theta_o);
      cplx y{};
      for (std::size_t m = 0; m < s.size(); ++m) y += std::conj(target.g[n](static_cast<Eigen::Index>(m))) * s[m];
      dr[n][k] = y * dt;
    }
  }
  return dr;
}

Increments noise_increments(const RadarScene& scene, RngStream& rng) {
  std::normal_distribution<double> half(0.0, std::sqrt(0.5 * scene.dt()));
  Increments dw(scene.num_rx(), std::vector<cplx>(scene.time_samples));
  for (auto& row : dw) {
    for (auto& v : row) {
      const double re = half(rng);
      const double im = half(rng);
      v = {re, im};
    }
  }
  return dw;
}

MatchedFilterBank::MatchedFilterBank(RadarScene scene, std::vector<Position> grid)
    : scene_(std::move(scene)), grid_(std::move(grid)) {
  scene_.validate();
  if (grid_.empty()) throw DomainError("matched filter bank needs a nonempty grid");
  n_tx_ = scene_.num_tx();
  n_rx_ = scene_.num_rx();
  const std::size_t m = n_tx_;
  taps_.resize(grid_.size() * n_rx_ * m);
  q_.reserve(grid_.size() * n_rx_);
  log_det_.reserve(grid_.size() * n_rx_);
  chol_.resize(grid_.size() * n_rx_ * m * m);

  const double ts = scene_.signal_duration;
  for (std::size_t l = 0; l < grid_.size(); ++l) {
    const Position theta = grid_[l];
    auto qs = compute_q(scene_, theta);
    for (std::size_t n = 0; n < n_rx_; ++n) {
      for (std::size_t i = 0; i < m; ++i) {
        const double tau = delay(scene_, theta, i, n);
        double gain = std::sqrt(scene_.energy / ts);
        if (scene_.path_loss_eta != 0.0) gain /= std::pow(aggregate_distance(scene_, theta, i, n), scene_.path_loss_eta);
        const double phase = kTwoPi * static_cast<double>(i + 1) * tau / ts;
        taps_[(l * n_rx_ + n) * m + i] = {std::polar(gain, phase), support_window(scene_, tau)};
      }
      const CMatrix& q = qs[n];
      check_hermitian_psd(q, theta);
      Eigen::LLT<CMatrix> llt(q + CMatrix::Identity(q.rows(), q.cols()));
      if (llt.info() != Eigen::Success) throw NumericError("Cholesky of Q + I failed at grid point " + where(theta));
      const CMatrix lower = llt.matrixL();
      double ld = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        ld += 2.0 * std::log(lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
        for (std::size_t j = 0; j < m; ++j) {
          chol_[(l * n_rx_ + n) * m * m + i * m + j] = lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
      }
      q_.push_back(q);
      log_det_.push_back(ld);
    }
  }
}

MatchedStats MatchedFilterBank::correlate(const Increments& dr) const {
  if (dr.size() != n_rx_) throw DomainError("increment rows do not match receiver count");
  const std::size_t lt = scene_.time_samples;
  const double dt = scene_.dt();
  const double ts = scene_.signal_duration;
  MatchedStats out{grid_.size(), n_rx_, n_tx_, std::vector<cplx>(grid_.size() * n_rx_ * n_tx_)};

  // prefix[i][k] = sum_{k' < k} exp(-j 2 pi (i+1) t_k' / T_s) dr(t_k')
  std::vector<std::vector<cplx>> prefix(n_tx_, std::vector<cplx>(lt + 1));
  for (std::size_t n = 0; n < n_rx_; ++n) {
    if (dr[n].size() != lt) throw DomainError("increment row length does not match L_t");
    for (std::size_t i = 0; i < n_tx_; ++i) {
      auto& p = prefix[i];
      const double w = -kTwoPi * static_cast<double>(i + 1) * dt / ts;
      for (std::size_t k = 0; k < lt; ++k) p[k + 1] = p[k] + std::polar(1.0, w * static_cast<double>(k)) * dr[n][k];
    }
    for (std::size_t l = 0; l < grid_.size(); ++l) {
      for (std::size_t i = 0; i < n_tx_; ++i) {
        const Tap& tap = taps_[(l * n_rx_ + n) * n_tx_ + i];
        const auto& p = prefix[i];
        const cplx a = tap.coeff * (p[tap.window.end] - p[tap.window.begin]);
        out.r[(l * n_rx_ + n) * n_tx_ + i] = std::conj(a);
      }
    }
  }
  return out;
}

MatchedStats MatchedFilterBank::correlate_direct(const Increments& dr) const {
  MatchedStats out{grid_.size(), n_rx_, n_tx_, std::vector<cplx>(grid_.size() * n_rx_ * n_tx_)};
  for (std::size_t l = 0; l < grid_.size(); ++l) {
    for (std::size_t n = 0; n < n_rx_; ++n) {
      std::vector<cplx> a(n_tx_);
      for (std::size_t k = 0; k < scene_.time_samples; ++k) {
        const auto s = steering_sample(scene_, n, k, grid_[l]);
        for (std::size_t i = 0; i < n_tx_; ++i) a[i] += std::conj(s[i]) * dr[n][k];
      }
      for (std::size_t i = 0; i < n_tx_; ++i) out.r[(l * n_rx_ + n) * n_tx_ + i] = std::conj(a[i]);
    }
  }
  return out;
}

double MatchedFilterBank::quadratic_form(std::size_t l, std::size_t n, std::span<const cplx> r) const {
  const std::size_t m = n_tx_;
  const cplx* lower = chol_.data() + (l * n_rx_ + n) * m * m;
  // Forward substitution L y = r; R^H (L L^H)^{-1} R = |y|^2.
  cplx y[16];
  std::vector<cplx> heap;
  cplx* yp = y;
  if (m > 16) {
    heap.resize(m);
    yp = heap.data();
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cplx v = r[i];
    for (std::size_t j = 0; j < i; ++j) v -= lower[i * m + j] * yp[j];
    yp[i] = v / lower[i * m + i];
    acc += std::norm(yp[i]);
  }
  return acc;
}

double MatchedFilterBank::cond_llr(const MatchedStats& stats, std::size_t l) const {
  double s = 0.0;
  for (std::size_t n = 0; n < n_rx_; ++n) s += quadratic_form(l, n, stats.at(l, n)) - log_det(l, n);
  return s;
}

void MatchedFilterBank::cond_llrs(const MatchedStats& stats, std::span<double> out) const {
  if (out.size() != grid_.size()) throw DomainError("output span does not match grid size");
  for (std::size_t l = 0; l < grid_.size(); ++l) out[l] = cond_llr(stats, l);
}

MatchedStats synthesize_r(const MatchedFilterBank& bank, const std::optional<TargetDraw>& target, RngStream& rng) {
  Increments dr = noise_increments(bank.scene(), rng);
  if (target) {
    const auto drift = drift_increments(bank.scene(), *target);
    for (std::size_t n = 0; n < dr.size(); ++n) {
      for (std::size_t k = 0; k < dr[n].size(); ++k) dr[n][k] += drift[n][k];
    }
  }
  return bank.correlate(dr);
}

}  // namespace jode::radar
