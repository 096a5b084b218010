#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jode/radar/region.hpp"

namespace jode::harness {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ModelKind { Radar, Changepoint };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;

/// Everything one experiment needs. Values are layered: profile defaults,
/// then the config file, then command-line overrides.
struct ExperimentConfig {
  ModelKind model = ModelKind::Radar;
  std::string profile = "desk";

  std::size_t tx = 2;
  std::size_t rx = 2;
  std::vector<double> snr_db{0.0};
  radar::RegionMode region = radar::RegionMode::Disc;
  double cell_size = 10.0;
  double disc_radius = 75.0;
  std::size_t time_samples = 500;
  double path_loss_eta = 0.0;

  std::size_t cp_samples = 16;
  double cp_mu = 1.0;

  double alpha = 1e-2;
  double beta = 0.5;
  bool single_step = false;
  std::vector<double> fractions{0.25, 0.5, 0.75, 1.0};
  std::size_t trials_calibration = 20000;
  std::size_t trials_evaluation = 20000;
  std::uint64_t seed = 1;
  std::string out;
  std::string series_out;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// "desk": alpha 1e-2 with 2e4 + 2e4 trials. "full": alpha 1e-3 with 1e6
/// calibration and 2e5 evaluation trials.
[[nodiscard]] ExperimentConfig profile_defaults(std::string_view profile);

/// Config file grammar, one setting per line:
///
///   line    := blank | comment | setting
///   comment := '#' anything
///   setting := key '=' value [comment]
///
/// Keys are lowercase identifiers, lists are comma separated, booleans are
/// true/false. Repeating a key overrides the earlier value.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

[[nodiscard]] ConfigEntries parse_config_entries(std::istream& in);
[[nodiscard]] ConfigEntries read_config_file(const std::string& path);

/// Applies one key/value pair; unknown keys and malformed values throw ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Profile named by the entries (last "profile" wins), or `fallback`.
[[nodiscard]] std::string profile_of(const ConfigEntries& entries, std::string_view fallback);

/// Profile defaults overlaid with every entry except "profile".
[[nodiscard]] ExperimentConfig build_config(const ConfigEntries& entries, std::string_view profile);

[[nodiscard]] std::vector<double> parse_real_list(std::string_view text);
[[nodiscard]] double parse_config_real(std::string_view text);
[[nodiscard]] std::uint64_t parse_config_unsigned(std::string_view text);

/// Settings in config-file syntax, in a fixed key order.
void write_config(std::ostream& os, const ExperimentConfig& config);

}  // namespace jode::harness
