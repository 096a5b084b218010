#include "jode/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "jode/changepoint/changepoint.hpp"
#include "jode/core/calibration.hpp"
#include "jode/core/cost.hpp"
#include "jode/core/errors.hpp"
#include "jode/core/serialize.hpp"
#include "jode/radar/model.hpp"

namespace jode::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<StatisticPair> pairs_of(std::span<const TrialRecord> batch) {
  std::vector<StatisticPair> out(batch.size());
  std::transform(batch.begin(), batch.end(), out.begin(),
                 [](const TrialRecord& r) { return StatisticPair{r.log_lr, r.c_o}; });
  return out;
}

double rate(std::size_t hits, std::size_t n) { return n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0; }

ValidationCheck make_check(std::string name, double target, std::size_t hits, std::size_t n) {
  ValidationCheck c;
  c.name = std::move(name);
  c.target = target;
  c.n = n;
  c.observed = rate(hits, n);
  c.tolerance = n ? 3.0 * std::sqrt(target * (1.0 - target) / static_cast<double>(n)) : 0.0;
  c.pass = n > 0 && std::abs(c.observed - target) <= c.tolerance;
  return c;
}

void put(std::ostream& os, const std::optional<double>& v) {
  if (v) os << format_real(*v);
}

std::optional<double> optional_real(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return parse_real(cell);
}

SweepRow conditional_row(std::string scheme, std::optional<double> fraction, double lambda,
                         std::span<const Verdict> verdicts, std::span<const double> costs, std::size_t detections,
                         std::size_t trials, double normalization) {
  const ConditionalCost cc = conditional_cost(verdicts, costs, Verdict::H1Reliable);
  SweepRow row;
  row.fraction_target = fraction;
  row.lambda = lambda;
  row.k = cc.count;
  if (detections > 0) row.realized_fraction = rate(cc.count, detections);
  row.mse = cc.mean;
  if (cc.mean) row.mse_normalized = *cc.mean / normalization;
  row.p_detect = rate(detections, trials);
  row.scheme = std::move(scheme);
  return row;
}

}  // namespace

Calibration run_calibration(std::span<const TrialRecord> h0, std::span<const TrialRecord> h1,
                            const CalibrationSpec& spec) {
  if (h0.empty() || h1.empty()) throw PreconditionError("calibration needs nonempty H0 and H1 batches");
  Calibration cal;
  cal.fractions = spec.fractions;
  std::sort(cal.fractions.begin(), cal.fractions.end());

  std::vector<double> h0_llr(h0.size());
  std::vector<double> h0_glrt(h0.size());
  for (std::size_t i = 0; i < h0.size(); ++i) {
    h0_llr[i] = h0[i].log_lr;
    h0_glrt[i] = h0[i].glrt_llr;
  }
  const auto gnp = calibrate_gamma_np(h0_llr, spec.alpha);
  cal.glrt_threshold = calibrate_gamma_np(h0_glrt, spec.alpha).value;

  std::vector<double> h1_cost(h1.size());
  std::vector<double> detected_cost;
  for (std::size_t i = 0; i < h1.size(); ++i) {
    h1_cost[i] = h1[i].c_o;
    if (np_decide(h1[i].log_lr, gnp.value) == Hypothesis::H1) detected_cost.push_back(h1[i].c_o);
  }
  cal.h1_detections = detected_cost.size();
  for (double f : cal.fractions) cal.lambdas.push_back(calibrate_reliability_lambda(detected_cost, f));

  if (spec.single_step) {
    const auto p0 = pairs_of(h0);
    const auto p1 = pairs_of(h1);
    cal.thresholds = calibrate_single_step(p0, p1, spec.alpha, spec.beta);
    cal.single_step = true;
    return cal;
  }

  ThresholdSet& t = cal.thresholds;
  t.alpha = spec.alpha;
  t.beta = spec.beta;
  t.gamma_np = gnp.value;
  const auto lo = solve_lambda_o(h1_cost, spec.beta);
  t.lambda_o = lo.value;
  t.regime = Regime::CostThresholdOnly;
  t.lambda = t.lambda_o;
  t.gamma = -kInf;
  t.provenance.n_h0 = h0.size();
  t.provenance.n_h1 = h1.size();
  t.provenance.low_sample_warning = gnp.low_sample_warning || lo.low_sample_warning;
  t.provenance.miss_rate_np = 1.0 - rate(cal.h1_detections, h1.size());
  t.provenance.achieved_false_alarm =
      rate(static_cast<std::size_t>(std::count_if(h0_llr.begin(), h0_llr.end(),
                                                  [&](double v) { return v > t.gamma_np; })),
           h0.size());
  t.provenance.achieved_detection = 1.0 - t.provenance.miss_rate_np;
  return cal;
}

SweepResult run_sweep(const Calibration& cal, std::span<TrialRecord> h1, double normalization) {
  if (!(normalization > 0.0)) throw PreconditionError("normalization must be positive");
  SweepResult result;
  result.normalization = normalization;
  const std::size_t n = h1.size();
  const std::size_t nf = cal.fractions.size();

  std::vector<double> costs(n);
  std::vector<double> glrt_costs(n);
  std::size_t detections = 0;
  std::size_t glrt_detections = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = h1[i];
    if (!r.cost || !r.glrt_cost) throw PreconditionError("sweep needs H1 trials with costs");
    costs[i] = *r.cost;
    glrt_costs[i] = *r.glrt_cost;
    r.np = np_decide(r.log_lr, cal.thresholds.gamma_np);
    r.glrt = np_decide(r.glrt_llr, cal.glrt_threshold);
    detections += r.np == Hypothesis::H1 ? 1 : 0;
    glrt_detections += r.glrt == Hypothesis::H1 ? 1 : 0;
    r.two_step.assign(nf, Verdict::H0);
    if (r.np == Hypothesis::H1) {
      for (std::size_t f = 0; f < nf; ++f) {
        r.two_step[f] = r.c_o <= cal.lambdas[f] ? Verdict::H1Reliable : Verdict::H1Unreliable;
      }
    }
    if (cal.single_step) {
      r.single_step = single_step_accepts(r.log_lr, r.c_o, cal.thresholds) ? Verdict::H1Reliable : Verdict::H0;
    } else {
      r.single_step.reset();
    }
  }

  std::vector<Verdict> verdicts(n);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t i = 0; i < n; ++i) verdicts[i] = h1[i].two_step[f];
    result.rows.push_back(conditional_row("two-step", cal.fractions[f], cal.lambdas[f], verdicts, costs, detections,
                                          n, normalization));
  }

  // Classical pipeline: NP detection, Bayes estimate accepted whenever detected.
  for (std::size_t i = 0; i < n; ++i) verdicts[i] = h1[i].np == Hypothesis::H1 ? Verdict::H1Reliable : Verdict::H0;
  result.rows.push_back(conditional_row("separate", 1.0, kInf, verdicts, costs, detections, n, normalization));

  for (std::size_t i = 0; i < n; ++i) verdicts[i] = h1[i].glrt == Hypothesis::H1 ? Verdict::H1Reliable : Verdict::H0;
  result.rows.push_back(
      conditional_row("glrt", 1.0, kInf, verdicts, glrt_costs, glrt_detections, n, normalization));

  if (cal.single_step) {
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < n; ++i) {
      verdicts[i] = *h1[i].single_step;
      accepted += verdicts[i] == Verdict::H1Reliable ? 1 : 0;
    }
    const double lambda =
        cal.thresholds.regime == Regime::Coupled ? cal.thresholds.lambda : cal.thresholds.lambda_o;
    result.rows.push_back(
        conditional_row("single-step", std::nullopt, lambda, verdicts, costs, accepted, n, normalization));
  }
  return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  os << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    put(os, row.fraction_target);
    os << ',' << format_real(row.lambda) << ',';
    put(os, row.realized_fraction);
    os << ',' << row.k << ',';
    put(os, row.mse);
    os << ',';
    put(os, row.mse_normalized);
    os << ',' << format_real(row.p_detect) << ',' << row.scheme << '\n';
  }
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(os, result);
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 8) throw std::runtime_error("CSV row with " + std::to_string(cells.size()) + " cells");
    SweepRow row;
    row.fraction_target = optional_real(cells[0]);
    row.lambda = parse_real(cells[1]);
    row.realized_fraction = optional_real(cells[2]);
    row.k = static_cast<std::size_t>(std::stoull(cells[3]));
    row.mse = optional_real(cells[4]);
    row.mse_normalized = optional_real(cells[5]);
    row.p_detect = parse_real(cells[6]);
    row.scheme = cells[7];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials) {
  auto point = [&](const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ";" : "") << format_real(p[i]);
  };
  auto hyp = [](Hypothesis h) { return h == Hypothesis::H1 ? "H1" : "H0"; };
  os << kTrialCsvHeader << '\n';
  for (const auto& r : trials) {
    os << r.index << ',' << hyp(r.hypothesis) << ',';
    point(r.truth);
    os << ',' << format_real(r.log_lr) << ',' << format_real(r.c_o) << ',';
    point(r.theta_hat);
    os << ',';
    put(os, r.cost);
    os << ',' << format_real(r.glrt_llr) << ',';
    point(r.glrt_estimate);
    os << ',';
    put(os, r.glrt_cost);
    os << ',' << hyp(r.np) << ',';
    for (std::size_t i = 0; i < r.two_step.size(); ++i) os << (i ? ";" : "") << to_string(r.two_step[i]);
    os << ',';
    if (r.single_step) os << to_string(*r.single_step);
    os << ',' << hyp(r.glrt) << '\n';
  }
}

std::vector<ValidationCheck> validate_calibration(const Calibration& cal, std::span<const TrialRecord> fresh_h0,
                                                  std::span<const TrialRecord> fresh_h1) {
  const ThresholdSet& t = cal.thresholds;
  std::vector<ValidationCheck> out;

  std::size_t fa = 0;
  for (const auto& r : fresh_h0) fa += np_decide(r.log_lr, t.gamma_np) == Hypothesis::H1 ? 1 : 0;
  out.push_back(make_check("false alarm", t.alpha, fa, fresh_h0.size()));

  std::size_t det = 0;
  std::size_t cost_ok = 0;
  std::vector<double> detected_cost;
  for (const auto& r : fresh_h1) {
    if (np_decide(r.log_lr, t.gamma_np) == Hypothesis::H1) {
      ++det;
      detected_cost.push_back(r.c_o);
    }
    cost_ok += r.c_o <= t.lambda_o ? 1 : 0;
  }
  out.push_back(make_check("detection", 1.0 - t.provenance.miss_rate_np, det, fresh_h1.size()));

  for (std::size_t f = 0; f < cal.fractions.size(); ++f) {
    if (cal.fractions[f] >= 1.0) continue;
    const auto reliable = static_cast<std::size_t>(std::count_if(
        detected_cost.begin(), detected_cost.end(), [&](double c) { return c <= cal.lambdas[f]; }));
    out.push_back(make_check("reliable fraction " + format_real(cal.fractions[f]), cal.fractions[f], reliable,
                             detected_cost.size()));
  }

  out.push_back(make_check("P1(c_o <= lambda_o)", 1.0 - t.beta, cost_ok, fresh_h1.size()));

  if (cal.single_step) {
    std::size_t ss_fa = 0;
    for (const auto& r : fresh_h0) ss_fa += single_step_accepts(r.log_lr, r.c_o, t) ? 1 : 0;
    std::size_t ss_det = 0;
    for (const auto& r : fresh_h1) ss_det += single_step_accepts(r.log_lr, r.c_o, t) ? 1 : 0;
    out.push_back(make_check("single-step false alarm", t.provenance.achieved_false_alarm, ss_fa, fresh_h0.size()));
    out.push_back(make_check("single-step detection", 1.0 - t.beta, ss_det, fresh_h1.size()));
  }
  return out;
}

CalibrationSpec calibration_spec(const ExperimentConfig& config) {
  return {config.alpha, config.beta, config.fractions, config.single_step};
}

std::string batch_tag(const std::string& label, std::string_view purpose) {
  return label + "/" + std::string(purpose);
}

ExperimentOutcome run_radar_experiment(const ExperimentConfig& config, double snr_db, bool evaluate) {
  config.validate();
  radar::RadarScene scene = radar::RadarScene::standard(config.tx, config.rx);
  scene.time_samples = config.time_samples;
  scene.path_loss_eta = config.path_loss_eta;
  auto region = radar::build_region_grid(scene, config.region, config.cell_size, config.disc_radius);
  scene.energy = radar::calibrate_energy(scene, snr_db, region.grid);

  ExperimentOutcome out;
  out.label = "radar/snr=" + format_real(snr_db);
  out.snr_db = snr_db;
  out.grid_points = region.size();
  out.energy = scene.energy;

  const radar::RadarJointModel model(scene, std::move(region));
  const auto h0 = simulate_batch(model, Hypothesis::H0, config.trials_calibration, config.seed,
                                 batch_tag(out.label, "calibration-h0"));
  const auto h1 = simulate_batch(model, Hypothesis::H1, config.trials_calibration, config.seed,
                                 batch_tag(out.label, "calibration-h1"));
  out.calibration = run_calibration(h0, h1, calibration_spec(config));
  if (!evaluate) return out;
  auto eval = simulate_batch(model, Hypothesis::H1, config.trials_evaluation, config.seed,
                             batch_tag(out.label, "evaluation-h1"));
  out.sweep = run_sweep(out.calibration, eval, config.disc_radius * config.disc_radius);
  out.evaluation = std::move(eval);
  return out;
}

ExperimentOutcome run_changepoint_experiment(const ExperimentConfig& config, bool evaluate) {
  config.validate();
  const auto cp = changepoint::ChangepointModel::gaussian_mean_shift(config.cp_samples, config.cp_mu);
  const auto model = changepoint::as_joint_model(cp);

  ExperimentOutcome out;
  out.label = "changepoint/n=" + std::to_string(config.cp_samples) + "/mu=" + format_real(config.cp_mu);
  out.grid_points = config.cp_samples;

  const auto h0 = simulate_batch(model, Hypothesis::H0, config.trials_calibration, config.seed,
                                 batch_tag(out.label, "calibration-h0"));
  const auto h1 = simulate_batch(model, Hypothesis::H1, config.trials_calibration, config.seed,
                                 batch_tag(out.label, "calibration-h1"));
  out.calibration = run_calibration(h0, h1, calibration_spec(config));
  if (!evaluate) return out;
  auto eval = simulate_batch(model, Hypothesis::H1, config.trials_evaluation, config.seed,
                             batch_tag(out.label, "evaluation-h1"));
  out.sweep = run_sweep(out.calibration, eval, 1.0);
  out.evaluation = std::move(eval);

  if (!config.series_out.empty()) {
    RngStream rng = derive_stream(config.seed, 0, batch_tag(out.label, "series-export"));
    const auto draw = model.sample_h1(rng);
    std::ofstream os(config.series_out, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + config.series_out + "' for writing");
    changepoint::write_series_csv(os, draw.observation);
  }
  return out;
}

std::string output_path_for(const ExperimentConfig& config, double snr_db) {
  if (config.snr_db.size() <= 1) return config.out;
  const std::filesystem::path p(config.out);
  std::ostringstream name;
  name << p.stem().string() << "_snr" << snr_db << "dB" << p.extension().string();
  return (p.parent_path() / name.str()).string();
}

}  // namespace jode::harness
