#include "jode/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "jode/changepoint/changepoint.hpp"
#include "jode/core/calibration.hpp"
#include "jode/core/decision.hpp"
#include "jode/core/posterior.hpp"
#include "jode/harness/streams.hpp"
#include "jode/radar/likelihood.hpp"
#include "jode/radar/matched_filter.hpp"

namespace jode::verify {

namespace {

using harness::derive_stream;
using radar::cplx;
using radar::CMatrix;
using radar::CVector;

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

CVector complex_normal(std::size_t m, RngStream& rng) {
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  CVector v(static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = half(rng);
    const double im = half(rng);
    v(i) = {re, im};
  }
  return v;
}

CMatrix random_psd(std::size_t m, RngStream& rng) {
  std::uniform_int_distribution<std::size_t> rank_pick(1, m);
  std::uniform_real_distribution<double> scale(0.01, 10.0);
  const std::size_t rank = rank_pick(rng);
  CMatrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(rank));
  for (std::size_t j = 0; j < rank; ++j) a.col(static_cast<Eigen::Index>(j)) = complex_normal(m, rng);
  CMatrix q = a * a.adjoint() * scale(rng);
  return 0.5 * (q + q.adjoint());
}

struct FiniteModel {
  std::vector<double> theta;             // P parameter values
  std::vector<double> prior;             // P
  std::vector<std::vector<double>> f1;   // f1[x][p]
  std::vector<double> phi;               // K
};

FiniteModel random_finite_model(RngStream& rng) {
  std::uniform_int_distribution<std::size_t> p_pick(1, 5);
  std::uniform_int_distribution<std::size_t> k_pick(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t p = p_pick(rng);
  const std::size_t k = k_pick(rng);
  FiniteModel fm;
  fm.theta.resize(p);
  for (auto& t : fm.theta) t = -3.0 + 6.0 * u(rng);
  fm.prior.resize(p);
  double ps = 0.0;
  for (auto& w : fm.prior) ps += (w = 0.05 + u(rng));
  for (auto& w : fm.prior) w /= ps;
  fm.f1.assign(k, std::vector<double>(p));
  for (std::size_t j = 0; j < p; ++j) {
    double col = 0.0;
    for (std::size_t x = 0; x < k; ++x) col += (fm.f1[x][j] = 0.01 + u(rng));
    for (std::size_t x = 0; x < k; ++x) fm.f1[x][j] /= col;
  }
  fm.phi.resize(k);
  for (auto& v : fm.phi) v = u(rng) < 0.25 ? 0.0 : u(rng);
  fm.phi[0] = std::max(fm.phi[0], 0.1);
  return fm;
}

double point_cost(CostKind kind, double estimate, double truth) {
  if (kind == CostKind::MSE) return (estimate - truth) * (estimate - truth);
  return estimate == truth ? 0.0 : 1.0;
}

// Weighted conditional cost ratio D of an estimator given per observation.
double weighted_cost(const FiniteModel& fm, CostKind kind, const std::vector<double>& estimate) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t x = 0; x < fm.phi.size(); ++x) {
    for (std::size_t j = 0; j < fm.theta.size(); ++j) {
      const double joint = fm.phi[x] * fm.f1[x][j] * fm.prior[j];
      num += joint * point_cost(kind, estimate[x], fm.theta[j]);
      den += joint;
    }
  }
  return num / den;
}

std::string fail_detail(std::size_t failures, std::size_t total, const std::string& worst) {
  std::ostringstream os;
  os << failures << "/" << total << " cases failed";
  if (!worst.empty()) os << "; " << worst;
  return os.str();
}

}  // namespace

OracleResult girsanov_average(const OracleOptions& opts) {
  OracleResult res{"reflectivity-averaged LR", true, {}};
  std::ostringstream detail;
  std::size_t failures = 0;
  double worst_z = 0.0;
  for (std::size_t s = 0; s < opts.girsanov_scenes; ++s) {
    RngStream rng = derive_stream(opts.seed, s, "girsanov-scene");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t m = 1 + s % 2;
    radar::RadarScene scene = radar::RadarScene::standard(m, 1);
    for (auto& p : scene.tx) p = {p.x + 4.0 * u(rng) - 2.0, p.y + 4.0 * u(rng) - 2.0};
    for (auto& p : scene.rx) p = {p.x + 4.0 * u(rng) - 2.0, p.y + 4.0 * u(rng) - 2.0};
    scene.time_samples = 50;
    scene.energy = 0.2 + 2.8 * u(rng);
    const double r0 = 60.0 * std::sqrt(u(rng));
    const double a0 = 2.0 * std::numbers::pi * u(rng);
    const radar::Position theta{r0 * std::cos(a0), r0 * std::sin(a0)};

    const radar::MatchedFilterBank bank(scene, {theta});
    radar::TargetDraw target;
    target.theta_o = {theta.x + 5.0 * u(rng) - 2.5, theta.y + 5.0 * u(rng) - 2.5};
    target.g = {complex_normal(m, rng)};
    const auto stats = radar::synthesize_r(bank, target, rng);
    const CMatrix q = bank.q(0, 0);
    const CVector r = stats.vector_at(0, 0);
    const double log_clr = radar::log_clr_radar(std::span(&q, 1), std::span(&r, 1));

    RngStream grng = derive_stream(opts.seed, s, "girsanov-draws");
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < opts.girsanov_draws; ++i) {
      const CVector g = complex_normal(m, grng);
      const double expo = -(g.adjoint() * q * g)(0, 0).real() + 2.0 * r.dot(g).real();
      const double w = std::exp(expo);
      const double delta = w - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (w - mean);
    }
    const double n = static_cast<double>(opts.girsanov_draws);
    const double se = std::sqrt(m2 / (n - 1.0) / n);
    const double exact = std::exp(log_clr);
    const double z = std::abs(mean - exact) / se;
    worst_z = std::max(worst_z, z);
    if (!(z <= 3.0)) ++failures;
  }
  res.pass = failures == 0;
  std::ostringstream worst;
  worst << "max |mean - exact| / se = " << worst_z;
  res.detail = fail_detail(failures, opts.girsanov_scenes, worst.str());
  return res;
}

OracleResult determinant_identity(const OracleOptions& opts) {
  OracleResult res{"determinant and quadratic-form identities", true, {}};
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t c = 0; c < opts.identity_cases; ++c) {
    RngStream rng = derive_stream(opts.seed, c, "determinant");
    const std::size_t m = 1 + c % 6;
    const CMatrix q = random_psd(m, rng);
    const CVector r = complex_normal(m, rng) * 3.0;

    const auto [complex_ld, real_ld] = radar::det_identity_check(q);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(q, Eigen::EigenvaluesOnly);
    double eig_ld = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) eig_ld += std::log1p(eig.eigenvalues()(i));
    const auto [complex_qf, real_qf] = radar::quadratic_form_identity(q, r);

    const double err = std::max({relative_gap(complex_ld, real_ld), relative_gap(complex_ld, eig_ld),
                                 relative_gap(complex_qf, real_qf)});
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) ++failures;
  }
  res.pass = failures == 0;
  std::ostringstream w;
  w << "max relative error " << worst;
  res.detail = fail_detail(failures, opts.identity_cases, w.str());
  return res;
}

OracleResult bayes_estimator_brute_force(const OracleOptions& opts) {
  OracleResult res{"Bayes estimator brute force", true, {}};
  std::size_t failures = 0;
  std::size_t enumerated = 0;
  for (std::size_t c = 0; c < opts.estimator_models; ++c) {
    RngStream rng = derive_stream(opts.seed, c, "lemma1");
    const FiniteModel fm = random_finite_model(rng);
    const CostKind kind = c % 2 == 0 ? CostKind::MSE : CostKind::ZeroOne;
    const std::size_t p = fm.theta.size();
    const std::size_t k = fm.phi.size();

    const ParameterDomain domain(1, fm.theta, fm.prior);
    std::vector<Point> grid(p);
    for (std::size_t j = 0; j < p; ++j) grid[j] = {fm.theta[j]};

    std::vector<double> bayes_grid(k);
    std::vector<double> bayes_summary(k);
    for (std::size_t x = 0; x < k; ++x) {
      std::vector<double> llrs(p);
      for (std::size_t j = 0; j < p; ++j) llrs[j] = std::log(fm.f1[x][j]);
      bayes_grid[x] = brute_force_bayes(domain, kind, llrs, grid).point[0];
      bayes_summary[x] = posterior_summary(domain, kind, llrs).theta_hat[0];
    }

    std::vector<std::size_t> choice(k, 0);
    std::vector<double> estimate(k);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
      for (std::size_t x = 0; x < k; ++x) estimate[x] = fm.theta[choice[x]];
      best = std::min(best, weighted_cost(fm, kind, estimate));
      ++enumerated;
      std::size_t x = 0;
      while (x < k && ++choice[x] == p) choice[x++] = 0;
      if (x == k) break;
    }

    const double d_grid = weighted_cost(fm, kind, bayes_grid);
    const double d_summary = weighted_cost(fm, kind, bayes_summary);
    const double tol = 1e-12 * std::max(1.0, best);
    bool ok = std::abs(d_grid - best) <= tol;
    // The unrestricted Bayes estimator (posterior mean or MAP) is never worse.
    ok = ok && d_summary <= best + tol;
    if (!ok) ++failures;
  }
  res.pass = failures == 0;
  res.detail = fail_detail(failures, opts.estimator_models, std::to_string(enumerated) + " estimator functions enumerated");
  return res;
}

OracleResult rescaling_invariance(const OracleOptions& opts) {
  OracleResult res{"single-step rescaling invariance", true, {}};
  std::size_t failures = 0;
  for (std::size_t c = 0; c < opts.rescaling_models; ++c) {
    RngStream rng = derive_stream(opts.seed, c, "rescaling");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t k = 2 + c % 7;
    std::vector<double> f0(k), f1(k), cost(k), delta(k);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      s0 += (f0[x] = 0.01 + u(rng));
      s1 += (f1[x] = 0.01 + u(rng));
      cost[x] = 5.0 * u(rng);
      delta[x] = 0.2 + 0.8 * u(rng);
    }
    double detect = 0.0, fa = 0.0, num = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      f0[x] /= s0;
      f1[x] /= s1;
      detect += delta[x] * f1[x];
      fa += delta[x] * f0[x];
      num += delta[x] * cost[x] * f1[x];
    }
    // beta with slack: 1 - beta lies strictly below the detection probability.
    const double beta = 1.0 - detect * (0.1 + 0.85 * u(rng));
    const double factor = (1.0 - beta) / detect;
    double detect_bar = 0.0, fa_bar = 0.0, num_bar = 0.0;
    bool legit = true;
    for (std::size_t x = 0; x < k; ++x) {
      const double d = factor * delta[x];
      legit = legit && d >= 0.0 && d <= 1.0;
      detect_bar += d * f1[x];
      fa_bar += d * f0[x];
      num_bar += d * cost[x] * f1[x];
    }
    const bool ok = legit && relative_gap(num / detect, num_bar / detect_bar) <= 1e-12 &&
                    std::abs(detect_bar - (1.0 - beta)) <= 1e-12 && fa_bar <= fa + 1e-15;
    if (!ok) ++failures;
  }
  res.pass = failures == 0;
  res.detail = fail_detail(failures, opts.rescaling_models, "");
  return res;
}

OracleResult changepoint_identities(const OracleOptions& opts) {
  OracleResult res{"changepoint statistic identities", true, {}};
  const auto cp = changepoint::ChangepointModel::gaussian_mean_shift(opts.changepoint_samples, opts.changepoint_mu);
  const auto model = changepoint::as_joint_model(cp);
  const auto prior = cp.prior_weights();
  const std::size_t n = cp.n_samples;

  std::size_t map_fail = 0, cost_fail = 0, reliable_fail = 0, cost_only_fail = 0, coupled_fail = 0, glrt_fail = 0;
  for (std::size_t i = 0; i < opts.changepoint_series; ++i) {
    RngStream rng = derive_stream(opts.seed, i, "changepoint-identity");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto x = i % 2 == 0 ? model.sample_h0(rng) : model.sample_h1(rng).observation;
    const auto summary = posterior_summary(model, x);

    // Closed forms from per-tau likelihood ratios, each evaluated directly.
    std::vector<double> weighted(n);
    std::vector<double> direct(n);
    double total = 0.0;
    std::size_t map = 0;
    for (std::size_t tau = 0; tau < n; ++tau) {
      double llr = 0.0;
      for (std::size_t k = tau; k < n; ++k) {
        llr += cp.alternative.log_pdf(x.values[k]) - cp.nominal.log_pdf(x.values[k]);
      }
      direct[tau] = llr;
      weighted[tau] = prior[tau] * std::exp(llr);
      total += weighted[tau];
      if (weighted[tau] > weighted[map]) map = tau;
    }
    const double max_ratio = weighted[map] / total;

    if (summary.theta_hat[0] != static_cast<double>(map)) ++map_fail;
    if (std::abs(summary.c_o - (1.0 - max_ratio)) > 1e-12) ++cost_fail;

    const double lambda = u(rng);
    if ((summary.c_o <= lambda) != (max_ratio >= 1.0 - lambda)) ++reliable_fail;

    ThresholdSet cost_only;
    cost_only.regime = Regime::CostThresholdOnly;
    cost_only.lambda_o = u(rng);
    if (single_step_accepts(summary.log_lr, summary.c_o, cost_only) != (max_ratio >= 1.0 - cost_only.lambda_o)) {
      ++cost_only_fail;
    }

    ThresholdSet coupled;
    coupled.regime = Regime::Coupled;
    coupled.lambda = 3.0 * u(rng);
    const double stat = (coupled.lambda - 1.0) * total + weighted[map];
    coupled.gamma = stat > 0.0 ? std::log(stat) + (u(rng) - 0.5) : std::log(total) * u(rng);
    const bool generic = single_step_accepts(summary.log_lr, summary.c_o, coupled);
    if (generic != (stat >= std::exp(coupled.gamma))) ++coupled_fail;

    const auto glrt = changepoint::glrt_stat(cp, x);
    std::size_t scan = 0;
    for (std::size_t tau = 1; tau < n; ++tau) {
      if (direct[tau] > direct[scan]) scan = tau;
    }
    if (glrt.tau_hat != scan || std::abs(glrt.max_llr - direct[scan]) > 1e-9 * std::max(1.0, std::abs(direct[scan]))) {
      ++glrt_fail;
    }
  }
  const std::size_t failures = map_fail + cost_fail + reliable_fail + cost_only_fail + coupled_fail + glrt_fail;
  res.pass = failures == 0;
  std::ostringstream os;
  os << opts.changepoint_series << " series; mismatches: map " << map_fail << ", c_o " << cost_fail << ", reliability "
     << reliable_fail << ", cost-only " << cost_only_fail << ", coupled " << coupled_fail << ", glrt " << glrt_fail;
  res.detail = os.str();
  return res;
}

std::vector<OracleResult> run_all(const OracleOptions& opts) {
  return {girsanov_average(opts), determinant_identity(opts), bayes_estimator_brute_force(opts), rescaling_invariance(opts),
          changepoint_identities(opts)};
}

}  // namespace jode::verify
