#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jode/core/decision.hpp"
#include "jode/harness/config.hpp"
#include "jode/harness/trial.hpp"

namespace jode::harness {

struct CalibrationSpec {
  double alpha = 1e-2;
  double beta = 0.5;
  std::vector<double> fractions{1.0};
  bool single_step = false;
};

/// Thresholds produced from one H0 and one H1 calibration batch.
struct Calibration {
  /// gamma_np and lambda_o always; regime, lambda and gamma only when the
  /// single-step rule was requested (otherwise regime is CostThresholdOnly
  /// with lambda = lambda_o and gamma = -inf).
  ThresholdSet thresholds;
  bool single_step = false;
  double glrt_threshold = 0.0;     ///< on max_l cond_llr
  std::vector<double> fractions;   ///< ascending
  std::vector<double> lambdas;     ///< reliability threshold per fraction
  std::size_t h1_detections = 0;   ///< NP detections in the H1 batch
};

/// Throws CalibrationError when no H1 trial is detected (reliability
/// thresholds undefined) or when the single-step solver fails.
[[nodiscard]] Calibration run_calibration(std::span<const TrialRecord> h0, std::span<const TrialRecord> h1,
                                          const CalibrationSpec& spec);

struct SweepRow {
  std::optional<double> fraction_target;
  double lambda = 0.0;
  std::optional<double> realized_fraction;
  std::size_t k = 0;
  std::optional<double> mse;
  std::optional<double> mse_normalized;
  double p_detect = 0.0;
  std::string scheme;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  double normalization = 1.0;
  std::vector<SweepRow> rows;
};

/// Evaluates every scheme on the same H1 trials and fills each record's
/// verdict fields. Rows: one "two-step" row per fraction (ascending), a
/// "separate" row (NP detection then Bayes estimate), a "glrt" row, and a
/// "single-step" row when the calibration carries single-step thresholds.
/// `normalization` divides the conditional cost into mse_normalized.
[[nodiscard]] SweepResult run_sweep(const Calibration& cal, std::span<TrialRecord> h1, double normalization);

inline constexpr const char* kCsvHeader = "fraction_target,lambda,realized_fraction,K,mse,mse_normalized,p_detect,scheme";

/// Header plus one row per SweepRow; reals with 17 significant digits, empty
/// cells for absent values, LF line endings.
void write_csv(std::ostream& os, const SweepResult& result);
void write_csv(const SweepResult& result, const std::string& path);
[[nodiscard]] std::vector<SweepRow> read_csv(std::istream& is);

/// Per-trial export. Points are written as ';'-joined coordinates and the
/// two-step verdicts as a ';'-joined list in fraction order.
inline constexpr const char* kTrialCsvHeader =
    "trial,hypothesis,truth,log_lr,c_o,estimate,cost,glrt_llr,glrt_estimate,glrt_cost,np,two_step,single_step,glrt";
void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials);

/// Fresh-sample check of calibrated probabilities against their targets.
struct ValidationCheck {
  std::string name;
  double target = 0.0;
  double observed = 0.0;
  std::size_t n = 0;
  double tolerance = 0.0;  ///< 3 sqrt(target (1 - target) / n)
  bool pass = false;
};

/// Checks the false alarm rate (target alpha), detection rate (target: the
/// calibration batch's NP detection rate), realized reliable fraction for
/// every fraction below 1, P1(c_o <= lambda_o) (target 1 - beta) and, for a
/// single-step calibration, its false alarm and detection rates.
[[nodiscard]] std::vector<ValidationCheck> validate_calibration(const Calibration& cal,
                                                                std::span<const TrialRecord> fresh_h0,
                                                                std::span<const TrialRecord> fresh_h1);

struct ExperimentOutcome {
  std::string label;
  std::optional<double> snr_db;
  std::size_t grid_points = 0;
  double energy = 0.0;
  Calibration calibration;
  SweepResult sweep;
  std::vector<TrialRecord> evaluation;  ///< H1 trials with verdicts filled in
};

[[nodiscard]] CalibrationSpec calibration_spec(const ExperimentConfig& config);

/// Radar experiment at one SNR: calibration batches, then (when `evaluate`)
/// the sweep on a separate evaluation batch. MSE is normalized by disc_radius^2.
[[nodiscard]] ExperimentOutcome run_radar_experiment(const ExperimentConfig& config, double snr_db,
                                                     bool evaluate = true);

/// Changepoint experiment; conditional cost is the change-time mismatch rate.
[[nodiscard]] ExperimentOutcome run_changepoint_experiment(const ExperimentConfig& config, bool evaluate = true);

/// Output path for one SNR: the configured path for a single-SNR run,
/// "<stem>_snr<db>dB<ext>" when several SNRs are swept.
[[nodiscard]] std::string output_path_for(const ExperimentConfig& config, double snr_db);

/// Stream tag for a batch, e.g. "radar/snr=0/calibration-h0".
[[nodiscard]] std::string batch_tag(const std::string& label, std::string_view purpose);

}  // namespace jode::harness
