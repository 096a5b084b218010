#include "jode/core/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace jode {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a real number: '" + s + "'");
  return v;
}

namespace {

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(format_real(x));
  return a;
}

std::vector<double> reals_from(const json& a) {
  std::vector<double> v;
  for (const auto& x : a) v.push_back(parse_real(x.get<std::string>()));
  return v;
}

double real_at(const json& j, const char* key) { return parse_real(j.at(key).get<std::string>()); }

}  // namespace

json to_json(const PosteriorSummary& s) {
  json j;
  j["log_lr"] = format_real(s.log_lr);
  j["theta_hat"] = reals(s.theta_hat);
  j["c_o"] = format_real(s.c_o);
  j["map_index"] = s.map_index;
  if (s.posterior_weights) j["posterior_weights"] = reals(*s.posterior_weights);
  return j;
}

PosteriorSummary posterior_summary_from_json(const json& j) {
  PosteriorSummary s;
  s.log_lr = real_at(j, "log_lr");
  s.theta_hat = reals_from(j.at("theta_hat"));
  s.c_o = real_at(j, "c_o");
  s.map_index = j.value("map_index", std::size_t{0});
  if (j.contains("posterior_weights")) s.posterior_weights = reals_from(j.at("posterior_weights"));
  return s;
}

json to_json(const ThresholdSet& t) {
  const auto& p = t.provenance;
  json j;
  j["alpha"] = format_real(t.alpha);
  j["beta"] = format_real(t.beta);
  j["gamma_np"] = format_real(t.gamma_np);
  j["lambda_o"] = format_real(t.lambda_o);
  j["regime"] = std::string(to_string(t.regime));
  j["lambda"] = format_real(t.lambda);
  j["gamma"] = format_real(t.gamma);
  j["provenance"] = {
      {"n_h0", p.n_h0},
      {"n_h1", p.n_h1},
      {"low_sample_warning", p.low_sample_warning},
      {"doublings", p.doublings},
      {"bisection_steps", p.bisection_steps},
      {"miss_rate_np", format_real(p.miss_rate_np)},
      {"achieved_false_alarm", format_real(p.achieved_false_alarm)},
      {"achieved_detection", format_real(p.achieved_detection)},
  };
  return j;
}

ThresholdSet threshold_set_from_json(const json& j) {
  ThresholdSet t;
  t.alpha = real_at(j, "alpha");
  t.beta = real_at(j, "beta");
  t.gamma_np = real_at(j, "gamma_np");
  t.lambda_o = real_at(j, "lambda_o");
  const auto regime = j.at("regime").get<std::string>();
  if (regime == "Coupled") {
    t.regime = Regime::Coupled;
  } else if (regime == "CostThresholdOnly") {
    t.regime = Regime::CostThresholdOnly;
  } else {
    throw std::invalid_argument("unknown regime '" + regime + "'");
  }
  t.lambda = real_at(j, "lambda");
  t.gamma = real_at(j, "gamma");
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    t.provenance.n_h0 = p.at("n_h0").get<std::size_t>();
    t.provenance.n_h1 = p.at("n_h1").get<std::size_t>();
    t.provenance.low_sample_warning = p.at("low_sample_warning").get<bool>();
    t.provenance.doublings = p.at("doublings").get<int>();
    t.provenance.bisection_steps = p.at("bisection_steps").get<int>();
    t.provenance.miss_rate_np = real_at(p, "miss_rate_np");
    t.provenance.achieved_false_alarm = real_at(p, "achieved_false_alarm");
    t.provenance.achieved_detection = real_at(p, "achieved_detection");
  }
  return t;
}

}  // namespace jode
