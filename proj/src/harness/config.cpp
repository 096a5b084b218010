#include "jode/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "jode/core/serialize.hpp"

namespace jode::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_real(values[i]);
  }
  return out;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("expected true or false, got '" + std::string(text) + "'");
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const auto v = parse_config_unsigned(text);
  if (v == 0) throw ConfigError(std::string(key) + " must be at least 1");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  return kind == ModelKind::Radar ? "radar" : "changepoint";
}

double parse_config_real(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_config_unsigned(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || p != text.data() + text.size()) {
    // Accept integral values written in floating-point form, e.g. 2e4.
    double d = 0.0;
    try {
      d = parse_config_real(text);
    } catch (const ConfigError&) {
      throw ConfigError("expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
      throw ConfigError("expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_config_real(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (fractions.empty()) throw ConfigError("fractions must not be empty");
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("fractions must lie in (0, 1]");
  }
  if (trials_calibration == 0 || trials_evaluation == 0) throw ConfigError("trial counts must be at least 1");
  if (model == ModelKind::Radar) {
    if (tx == 0 || rx == 0) throw ConfigError("tx and rx must be at least 1");
    if (snr_db.empty()) throw ConfigError("snr_db must not be empty");
    if (!(cell_size > 0.0)) throw ConfigError("cell_size must be positive");
    if (!(disc_radius > 0.0)) throw ConfigError("disc_radius must be positive");
    if (time_samples < 2) throw ConfigError("time_samples must be at least 2");
    if (path_loss_eta < 0.0) throw ConfigError("path_loss_eta must be nonnegative");
  } else if (cp_samples == 0) {
    throw ConfigError("cp_samples must be at least 1");
  }
}

ExperimentConfig profile_defaults(std::string_view profile) {
  ExperimentConfig c;
  if (profile == "desk") {
    c.profile = "desk";
  } else if (profile == "full") {
    c.profile = "full";
    c.alpha = 1e-3;
    c.trials_calibration = 1000000;
    c.trials_evaluation = 200000;
  } else {
    throw ConfigError("unknown profile '" + std::string(profile) + "' (expected desk or full)");
  }
  return c;
}

ConfigEntries parse_config_entries(std::istream& in) {
  ConfigEntries entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    entries.emplace_back(std::string(key), std::string(value));
  }
  return entries;
}

ConfigEntries read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config_entries(in);
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  try {
    if (key == "model") {
      if (value == "radar") {
        c.model = ModelKind::Radar;
      } else if (value == "changepoint") {
        c.model = ModelKind::Changepoint;
      } else {
        throw ConfigError("expected radar or changepoint");
      }
    } else if (key == "profile") {
      c.profile = profile_defaults(value).profile;
    } else if (key == "tx") {
      c.tx = parse_count(key, value);
    } else if (key == "rx") {
      c.rx = parse_count(key, value);
    } else if (key == "snr_db") {
      c.snr_db = parse_real_list(value);
    } else if (key == "region") {
      c.region = radar::parse_region_mode(value);
    } else if (key == "cell_size") {
      c.cell_size = parse_config_real(value);
    } else if (key == "disc_radius") {
      c.disc_radius = parse_config_real(value);
    } else if (key == "time_samples") {
      c.time_samples = parse_count(key, value);
    } else if (key == "path_loss_eta") {
      c.path_loss_eta = parse_config_real(value);
    } else if (key == "cp_samples") {
      c.cp_samples = parse_count(key, value);
    } else if (key == "cp_mu") {
      c.cp_mu = parse_config_real(value);
    } else if (key == "alpha") {
      c.alpha = parse_config_real(value);
    } else if (key == "beta") {
      c.beta = parse_config_real(value);
    } else if (key == "single_step") {
      c.single_step = parse_bool(value);
    } else if (key == "fractions") {
      c.fractions = parse_real_list(value);
    } else if (key == "trials") {
      c.trials_calibration = c.trials_evaluation = parse_count(key, value);
    } else if (key == "trials_calibration") {
      c.trials_calibration = parse_count(key, value);
    } else if (key == "trials_evaluation") {
      c.trials_evaluation = parse_count(key, value);
    } else if (key == "seed") {
      c.seed = parse_config_unsigned(value);
    } else if (key == "out") {
      c.out = std::string(value);
    } else if (key == "series_out") {
      c.series_out = std::string(value);
    } else {
      throw ConfigError("unknown key");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("setting '" + std::string(key) + "': " + e.what());
  }
}

std::string profile_of(const ConfigEntries& entries, std::string_view fallback) {
  std::string profile(fallback);
  for (const auto& [k, v] : entries) {
    if (k == "profile") profile = v;
  }
  return profile;
}

ExperimentConfig build_config(const ConfigEntries& entries, std::string_view profile) {
  ExperimentConfig c = profile_defaults(profile);
  for (const auto& [k, v] : entries) {
    if (k != "profile") apply_setting(c, k, v);
  }
  return c;
}

void write_config(std::ostream& os, const ExperimentConfig& c) {
  os << "model = " << to_string(c.model) << '\n'
     << "profile = " << c.profile << '\n'
     << "tx = " << c.tx << '\n'
     << "rx = " << c.rx << '\n'
     << "snr_db = " << join(c.snr_db) << '\n'
     << "region = " << radar::to_string(c.region) << '\n'
     << "cell_size = " << format_real(c.cell_size) << '\n'
     << "disc_radius = " << format_real(c.disc_radius) << '\n'
     << "time_samples = " << c.time_samples << '\n'
     << "path_loss_eta = " << format_real(c.path_loss_eta) << '\n'
     << "cp_samples = " << c.cp_samples << '\n'
     << "cp_mu = " << format_real(c.cp_mu) << '\n'
     << "alpha = " << format_real(c.alpha) << '\n'
     << "beta = " << format_real(c.beta) << '\n'
     << "single_step = " << (c.single_step ? "true" : "false") << '\n'
     << "fractions = " << join(c.fractions) << '\n'
     << "trials_calibration = " << c.trials_calibration << '\n'
     << "trials_evaluation = " << c.trials_evaluation << '\n'
     << "seed = " << c.seed << '\n';
  if (!c.out.empty()) os << "out = " << c.out << '\n';
  if (!c.series_out.empty()) os << "series_out = " << c.series_out << '\n';
}

}  // namespace jode::harness
