#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "jode/core/errors.hpp"
#include "jode/core/serialize.hpp"
#include "jode/harness/config.hpp"
#include "jode/harness/experiment.hpp"
#include "jode/verify/oracles.hpp"

namespace jode::cli {

namespace {

using harness::ConfigError;
using harness::ExperimentConfig;
using harness::ExperimentOutcome;
using harness::ModelKind;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::optional<std::string> seed;
  std::optional<std::string> alpha;
  std::optional<std::string> snr;
  std::optional<std::string> trials;
  std::optional<std::string> fractions;
  std::optional<std::string> region;
  std::optional<std::string> out;
  std::optional<std::string> profile;
  bool verbose = false;
};

void add_experiment_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment config file (key = value lines)");
  cmd->add_option("--seed", f.seed, "Master seed (64-bit unsigned)");
  cmd->add_option("--alpha", f.alpha, "False alarm level in (0, 1)");
  cmd->add_option("--snr", f.snr, "Comma-separated SNR list in dB (radar)");
  cmd->add_option("--trials", f.trials, "Calibration and evaluation trials per batch");
  cmd->add_option("--fractions", f.fractions, "Comma-separated reliable-fraction targets in (0, 1]");
  cmd->add_option("--region", f.region, "Surveillance region: ellipse or disc")->check(CLI::IsMember({"ellipse", "disc"}));
  cmd->add_option("--out", f.out, "Output path");
  cmd->add_option("--profile", f.profile, "Preset: desk or full")->check(CLI::IsMember({"desk", "full"}));
  cmd->add_flag("-v,--verbose", f.verbose, "Print the resolved configuration");
}

struct Commands {
  CLI::App app{"Joint detection and estimation: threshold calibration, radar and changepoint experiments", "jode"};
  Flags flags;
  std::optional<std::string> verify_seed;
  std::optional<std::string> verify_out;
  bool verify_verbose = false;
  CLI::App* calibrate = nullptr;
  CLI::App* radar_sim = nullptr;
  CLI::App* changepoint_sim = nullptr;
  CLI::App* sweep = nullptr;
  CLI::App* verify = nullptr;

  Commands() {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");
    calibrate = app.add_subcommand("calibrate", "Calibrate thresholds and write them as JSON");
    radar_sim = app.add_subcommand("radar-sim", "Run the radar experiment and write per-trial records");
    changepoint_sim =
        app.add_subcommand("changepoint-sim", "Run the changepoint experiment and write per-trial records");
    sweep = app.add_subcommand("sweep", "Sweep reliable fractions and write the conditional-cost table");
    verify = app.add_subcommand("verify", "Run the oracle suites and report pass/fail");
    for (CLI::App* cmd : {calibrate, radar_sim, changepoint_sim, sweep}) add_experiment_flags(cmd, flags);
    verify->add_option("--seed", verify_seed, "Oracle seed (64-bit unsigned)");
    verify->add_option("--out", verify_out, "Also write the report to this path");
    verify->add_flag("-v,--verbose", verify_verbose, "Print oracle details");
  }
};

ExperimentConfig resolve_config(const Flags& f, std::optional<ModelKind> forced) {
  if (f.config.empty()) throw UsageError("--config is required");
  harness::ConfigEntries entries;
  try {
    entries = harness::read_config_file(f.config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const std::string profile = f.profile ? *f.profile : harness::profile_of(entries, "desk");
  ExperimentConfig c = harness::build_config(entries, profile);
  if (forced) c.model = *forced;
  if (f.seed) harness::apply_setting(c, "seed", *f.seed);
  if (f.alpha) harness::apply_setting(c, "alpha", *f.alpha);
  if (f.snr) harness::apply_setting(c, "snr_db", *f.snr);
  if (f.trials) harness::apply_setting(c, "trials", *f.trials);
  if (f.fractions) harness::apply_setting(c, "fractions", *f.fractions);
  if (f.region) harness::apply_setting(c, "region", *f.region);
  if (f.out) harness::apply_setting(c, "out", *f.out);
  c.validate();
  return c;
}

std::vector<ExperimentOutcome> run_outcomes(const ExperimentConfig& c, bool evaluate) {
  std::vector<ExperimentOutcome> out;
  if (c.model == ModelKind::Radar) {
    for (double snr : c.snr_db) out.push_back(harness::run_radar_experiment(c, snr, evaluate));
  } else {
    out.push_back(harness::run_changepoint_experiment(c, evaluate));
  }
  return out;
}

std::string path_for(const ExperimentConfig& c, const ExperimentOutcome& o, const std::string& fallback) {
  ExperimentConfig with_default = c;
  if (with_default.out.empty()) with_default.out = fallback;
  if (c.model == ModelKind::Radar && o.snr_db) return harness::output_path_for(with_default, *o.snr_db);
  return with_default.out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

std::string opt(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::setprecision(6) << *v;
  return os.str();
}

void warn_low_samples(const ExperimentOutcome& o, std::ostream& err) {
  if (o.calibration.thresholds.provenance.low_sample_warning) {
    err << "warning: " << o.label << ": fewer than 10 expected tail samples for a calibrated quantile\n";
  }
}

nlohmann::json calibration_json(const ExperimentOutcome& o) {
  nlohmann::json j;
  j["label"] = o.label;
  if (o.snr_db) j["snr_db"] = format_real(*o.snr_db);
  j["grid_points"] = o.grid_points;
  if (o.energy > 0.0) j["energy"] = format_real(o.energy);
  j["thresholds"] = to_json(o.calibration.thresholds);
  j["single_step"] = o.calibration.single_step;
  j["glrt_threshold"] = format_real(o.calibration.glrt_threshold);
  j["h1_detections"] = o.calibration.h1_detections;
  auto& lam = j["reliability"] = nlohmann::json::array();
  for (std::size_t i = 0; i < o.calibration.fractions.size(); ++i) {
    lam.push_back({{"fraction", format_real(o.calibration.fractions[i])},
                   {"lambda", format_real(o.calibration.lambdas[i])}});
  }
  return j;
}

int cmd_calibrate(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto outcomes = run_outcomes(c, false);
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& o : outcomes) {
    warn_low_samples(o, err);
    doc.push_back(calibration_json(o));
    const auto& t = o.calibration.thresholds;
    out << o.label << ": gamma_np=" << std::setprecision(6) << t.gamma_np << " lambda_o=" << t.lambda_o
        << " detections=" << o.calibration.h1_detections << "/" << t.provenance.n_h1 << '\n';
  }
  const std::string path = c.out.empty() ? "thresholds.json" : c.out;
  auto os = open_output(path);
  os << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  for (const auto& o : run_outcomes(c, true)) {
    warn_low_samples(o, err);
    const std::string path = path_for(c, o, "sweep.csv");
    auto os = open_output(path);
    harness::write_csv(os, o.sweep);
    for (const auto& row : o.sweep.rows) {
      out << o.label << ' ' << row.scheme << " fraction=" << opt(row.fraction_target)
          << " lambda=" << opt(row.lambda) << " realized=" << opt(row.realized_fraction) << " K=" << row.k
          << " mse_normalized=" << opt(row.mse_normalized) << " p_detect=" << opt(row.p_detect) << '\n';
    }
  }
  return kExitOk;
}

int cmd_sim(const ExperimentConfig& c, const std::string& fallback, std::ostream& out, std::ostream& err) {
  for (const auto& o : run_outcomes(c, true)) {
    warn_low_samples(o, err);
    const std::string path = path_for(c, o, fallback);
    auto os = open_output(path);
    harness::write_trials_csv(os, o.evaluation);
    std::size_t detected = 0;
    for (const auto& r : o.evaluation) detected += r.np == Hypothesis::H1 ? 1 : 0;
    out << o.label << ": " << o.evaluation.size() << " H1 trials, " << detected
        << " NP detections, gamma_np=" << std::setprecision(6) << o.calibration.thresholds.gamma_np << " -> "
        << path << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Commands& cmds, std::ostream& out) {
  verify::OracleOptions opts;
  if (cmds.verify_seed) {
    try {
      opts.seed = harness::parse_config_unsigned(*cmds.verify_seed);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--seed: ") + e.what());
    }
  }
  std::ostringstream report;
  bool all = true;
  for (const auto& r : verify::run_all(opts)) {
    all = all && r.pass;
    report << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (cmds.verify_verbose || !r.pass) report << " (" << r.detail << ")";
    report << '\n';
  }
  out << report.str();
  if (cmds.verify_out) {
    auto os = open_output(*cmds.verify_out);
    os << report.str();
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

std::string help_text(const std::string& subcommand) {
  std::ostringstream out, err;
  std::vector<std::string> args;
  if (!subcommand.empty()) args.push_back(subcommand);
  args.emplace_back("--help");
  (void)run(args, out, err);
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Commands cmds;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cmds.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << cmds.app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << cmds.app.help();
    return kExitUsage;
  }

  try {
    if (cmds.verify->parsed()) return cmd_verify(cmds, out);

    std::optional<ModelKind> forced;
    if (cmds.radar_sim->parsed()) forced = ModelKind::Radar;
    if (cmds.changepoint_sim->parsed()) forced = ModelKind::Changepoint;
    const ExperimentConfig config = resolve_config(cmds.flags, forced);
    if (cmds.flags.verbose) harness::write_config(err, config);

    if (cmds.calibrate->parsed()) return cmd_calibrate(config, out, err);
    if (cmds.sweep->parsed()) return cmd_sweep(config, out, err);
    if (cmds.radar_sim->parsed()) return cmd_sim(config, "radar_trials.csv", out, err);
    return cmd_sim(config, "changepoint_trials.csv", out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << cmds.app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CalibrationError& e) {
    err << "calibration failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace jode::cli
