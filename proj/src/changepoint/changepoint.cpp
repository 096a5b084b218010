#include "jode/changepoint/changepoint.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "jode/core/errors.hpp"
#include "jode/core/serialize.hpp"

namespace jode::changepoint {

double GaussianDensity::log_pdf(double x) const {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

ChangepointModel ChangepointModel::gaussian_mean_shift(std::size_t n, double mu) {
  ChangepointModel m;
  m.n_samples = n;
  m.alternative.mean = mu;
  m.validate();
  return m;
}

void ChangepointModel::validate() const {
  if (n_samples == 0) throw DomainError("changepoint model needs N >= 1");
  if (!std::isfinite(nominal.mean) || !std::isfinite(alternative.mean)) throw DomainError("means must be finite");
  if (!(nominal.sd > 0.0) || !(alternative.sd > 0.0)) throw DomainError("standard deviations must be positive");
  if (!prior.empty() && prior.size() != n_samples) {
    throw DomainError("prior has " + std::to_string(prior.size()) + " entries, expected N = " +
                      std::to_string(n_samples));
  }
  if (!iid && (!nominal_conditional || !alternative_conditional)) {
    throw DomainError("non-iid changepoint model needs both conditional log densities");
  }
}

std::vector<double> ChangepointModel::prior_weights() const {
  if (!prior.empty()) return prior;
  return std::vector<double>(n_samples, 1.0 / static_cast<double>(n_samples));
}

DataSeries sample_series(const ChangepointModel& model, std::optional<std::size_t> change, RngStream& rng) {
  model.validate();
  if (!model.iid) throw DomainError("sampling is only available for iid Gaussian changepoint models");
  const std::size_t n = model.n_samples;
  if (change && *change >= n) {
    throw DomainError("change time " + std::to_string(*change) + " outside [0, " + std::to_string(n - 1) + "]");
  }
  const std::size_t switch_at = change.value_or(n);
  std::normal_distribution<double> unit(0.0, 1.0);
  DataSeries x;
  x.change = change;
  x.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& d = k < switch_at ? model.nominal : model.alternative;
    x.values[k] = d.mean + d.sd * unit(rng);
  }
  return x;
}

double sample_log_ratio(const ChangepointModel& model, std::span<const double> x, std::size_t k) {
  if (!model.iid) {
    const auto past = x.first(k);
    return model.alternative_conditional(past, x[k]) - model.nominal_conditional(past, x[k]);
  }
  const auto& f = model.nominal;
  const auto& h = model.alternative;
  if (f.sd == h.sd) {
    // Equal variances: (mu_h - mu_f) x - (mu_h^2 - mu_f^2) / 2, scaled by 1/sd^2.
    const double v = f.sd * f.sd;
    return ((h.mean - f.mean) * x[k] - 0.5 * (h.mean * h.mean - f.mean * f.mean)) / v;
  }
  return h.log_pdf(x[k]) - f.log_pdf(x[k]);
}

std::vector<double> cond_llrs(const ChangepointModel& model, const DataSeries& x) {
  const std::size_t n = model.n_samples;
  if (x.values.size() != n) throw DomainError("series length does not match model N");
  std::vector<double> out(n);
  double suffix = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    suffix += sample_log_ratio(model, x.values, k);
    out[k] = suffix;  // tau = k: samples k..N-1 (0-based) are post-change
  }
  return out;
}

double cond_llr(const ChangepointModel& model, const DataSeries& x, std::size_t tau) {
  if (tau >= model.n_samples) throw DomainError("change time out of range");
  if (x.values.size() != model.n_samples) throw DomainError("series length does not match model N");
  double s = 0.0;
  for (std::size_t k = tau; k < model.n_samples; ++k) s += sample_log_ratio(model, x.values, k);
  return s;
}

namespace {

ParameterDomain change_time_domain(const ChangepointModel& model) {
  model.validate();
  std::vector<double> coords(model.n_samples);
  for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = static_cast<double>(k);
  return ParameterDomain(1, std::move(coords), model.prior_weights());
}

}  // namespace

ChangepointJointModel::ChangepointJointModel(ChangepointModel model)
    : model_(std::move(model)), domain_(change_time_domain(model_)) {}

double ChangepointJointModel::cond_llr(const DataSeries& x, std::size_t l) const {
  return changepoint::cond_llr(model_, x, l);
}

void ChangepointJointModel::cond_llrs(const DataSeries& x, std::span<double> out) const {
  const auto v = changepoint::cond_llrs(model_, x);
  std::copy(v.begin(), v.end(), out.begin());
}

DataSeries ChangepointJointModel::sample_h0(RngStream& rng) const { return sample_series(model_, std::nullopt, rng); }

H1Draw<DataSeries> ChangepointJointModel::sample_h1(RngStream& rng) const {
  const auto w = domain_.priors();
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  const std::size_t tau = pick(rng);
  return {sample_series(model_, tau, rng), Point{static_cast<double>(tau)}};
}

ChangepointJointModel as_joint_model(const ChangepointModel& model) { return ChangepointJointModel(model); }

GlrtResult glrt_from_llrs(std::span<const double> llrs) {
  if (llrs.empty()) throw DomainError("GLRT over an empty set of change times");
  GlrtResult r{llrs[0], 0};
  for (std::size_t k = 1; k < llrs.size(); ++k) {
    if (llrs[k] > r.max_llr) r = {llrs[k], k};
  }
  return r;
}

GlrtResult glrt_stat(const ChangepointModel& model, const DataSeries& x) {
  return glrt_from_llrs(cond_llrs(model, x));
}

void write_series_csv(std::ostream& os, const DataSeries& x) {
  os << "k,value\n";
  for (std::size_t k = 0; k < x.values.size(); ++k) os << k + 1 << ',' << format_real(x.values[k]) << '\n';
}

}  // namespace jode::changepoint
