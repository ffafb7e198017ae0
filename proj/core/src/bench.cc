#include "bincs/bench.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bincs/construction.h"
#include "bincs/error.h"
#include "bincs/matrix_io.h"
#include "bincs/parallel.h"
#include "bincs/seed.h"
#include "bincs/spectral.h"
#include "bincs/version.h"

namespace bincs {
namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

struct TrialOutcome {
  bool success = false;
  double recovery_rate = 0.0;
};

RecoveryOutput solve(const ExperimentConfig& config, const SensingOperator& a,
                     const Eigen::VectorXd& y, int k, double spectral_norm) {
  switch (config.algorithm) {
    case Algorithm::kOmp:
      return omp(a, y, k, config.omp);
    case Algorithm::kIht: {
      IhtParams params = config.iht;
      if (params.spectral_norm <= 0.0) params.spectral_norm = spectral_norm;
      return iht(a, y, k, params);
    }
    case Algorithm::kSp:
      return sp(a, y, k, config.sp);
    case Algorithm::kBp:
      return bp(a, y, config.bp);
  }
  invalid("unknown algorithm");
}

bool needs_spectral_norm(const ExperimentConfig& config) {
  return config.algorithm == Algorithm::kIht &&
         config.iht.step_mode == StepMode::kNormalized &&
         config.iht.spectral_norm <= 0.0;
}

std::shared_ptr<const SensingOperator> draw_operator(const ExperimentConfig& config,
                                                     std::uint64_t seed) {
  const MatrixSource& s = config.source;
  if (s.kind == SourceKind::kRandomBinary) {
    return std::make_shared<BinaryOperator>(
        random_regular(s.num_rows, s.num_cols, s.degree, seed));
  }
  return std::make_shared<DenseOperator>(gaussian_matrix(s.num_rows, s.num_cols, seed));
}

TrialOutcome run_one(const ExperimentConfig& config, int k, int t,
                     const std::shared_ptr<const SensingOperator>& fixed,
                     double fixed_norm) {
  const std::uint64_t seed = trial_seed(config.master_seed, k, t);
  std::shared_ptr<const SensingOperator> a = fixed;
  double spectral_norm = fixed_norm;
  if (!a) {
    a = draw_operator(config, derive_seed(seed, 0));
    if (needs_spectral_norm(config)) spectral_norm = estimate_spectral_norm(*a);
  }
  const int n = a->cols();

  std::mt19937_64 signal_rng(derive_seed(seed, 1));
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::vector<int> support = sample_subset(n, k, signal_rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i : support) x[i] = normal(signal_rng);
  if (config.signal_normalization) x /= x.norm();

  Eigen::VectorXd x_measured = x;
  if (config.noise_sigma > 0.0) {
    std::mt19937_64 noise_rng(derive_seed(seed, 2));
    std::normal_distribution<double> noise(0.0, config.noise_sigma);
    for (Eigen::Index i = 0; i < n; ++i) x_measured[i] += noise(noise_rng);
  }
  const Eigen::VectorXd y = a->apply(x_measured);

  TrialOutcome out;
  try {
    const RecoveryOutput r = solve(config, *a, y, k, spectral_norm);
    const double rel = (r.x_hat - x).norm() / x.norm();
    if (std::isfinite(rel)) {
      out.success = rel <= config.success_threshold;
      out.recovery_rate = std::max(0.0, 1.0 - rel);
    }
  } catch (const Error&) {
    // counted as a failed trial
  }
  return out;
}

}  // namespace

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kPeg: return "peg";
    case SourceKind::kRandomBinary: return "random";
    case SourceKind::kGaussian: return "gaussian";
    case SourceKind::kFile: return "file";
  }
  return "?";
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kOmp: return "omp";
    case Algorithm::kIht: return "iht";
    case Algorithm::kSp: return "sp";
    case Algorithm::kBp: return "bp";
  }
  return "?";
}

SourceKind parse_source_kind(const std::string& name) {
  for (SourceKind k : {SourceKind::kPeg, SourceKind::kRandomBinary,
                       SourceKind::kGaussian, SourceKind::kFile}) {
    if (to_string(k) == name) return k;
  }
  invalid("unknown matrix source '" + name + "'");
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kOmp, Algorithm::kIht, Algorithm::kSp, Algorithm::kBp}) {
    if (to_string(a) == name) return a;
  }
  invalid("unknown algorithm '" + name + "'");
}

void validate(const ExperimentConfig& config) {
  const MatrixSource& s = config.source;
  if (s.kind == SourceKind::kFile) {
    if (s.path.empty()) invalid("file source needs a path");
  } else {
    if (s.num_rows < 1 || s.num_cols < 1) invalid("M and N must be positive");
    if (s.kind != SourceKind::kGaussian && (s.degree < 1 || s.degree > s.num_rows)) {
      invalid("degree must lie in [1, M]");
    }
  }
  if (config.trials < 1) invalid("trials must be >= 1");
  if (!(config.noise_sigma >= 0.0) || !std::isfinite(config.noise_sigma)) {
    invalid("sigma must be finite and >= 0");
  }
  if (!(config.success_threshold > 0.0)) invalid("threshold must be > 0");
  for (int k : config.ks) {
    if (k < 1) invalid("sparsity k must be >= 1");
    if (s.kind != SourceKind::kFile && k > s.num_rows) {
      invalid(fmt::format("sparsity {} exceeds M = {}", k, s.num_rows));
    }
  }
}

std::uint64_t trial_seed(std::uint64_t master_seed, int k, int trial) {
  return derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(k)),
                     static_cast<std::uint64_t>(trial));
}

std::shared_ptr<const SensingOperator> fixed_operator(const ExperimentConfig& config) {
  const MatrixSource& s = config.source;
  switch (s.kind) {
    case SourceKind::kPeg: {
      PegConfig peg;
      peg.seed = config.master_seed;
      return std::make_shared<BinaryOperator>(
          peg_construct_with_girth(s.num_rows, s.num_cols, s.degree, 6, peg).matrix);
    }
    case SourceKind::kFile:
      if (is_dense_matrix_file(s.path)) {
        return std::make_shared<DenseOperator>(read_dense_matrix(s.path));
      }
      return std::make_shared<BinaryOperator>(read_matrix(s.path));
    case SourceKind::kRandomBinary:
    case SourceKind::kGaussian:
      return nullptr;
  }
  return nullptr;
}

RecoveryStats run_trials(const ExperimentConfig& config, int k,
                         std::shared_ptr<const SensingOperator> fixed) {
  validate(config);
  if (!fixed) fixed = fixed_operator(config);
  if (fixed && (k < 1 || k > fixed->rows() || k > fixed->cols())) {
    invalid(fmt::format("sparsity {} outside [1, {}]", k,
                        std::min(fixed->rows(), fixed->cols())));
  }
  const double fixed_norm =
      fixed && needs_spectral_norm(config) ? estimate_spectral_norm(*fixed) : 0.0;

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  parallel_for(outcomes.size(), config.threads, [&](std::size_t t) {
    outcomes[t] = run_one(config, k, static_cast<int>(t), fixed, fixed_norm);
  });

  RecoveryStats stats;
  stats.k = k;
  stats.sigma = config.noise_sigma;
  stats.trials = config.trials;
  double rate_sum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    stats.successes += o.success ? 1 : 0;
    rate_sum += o.recovery_rate;
  }
  const double p = static_cast<double>(stats.successes) / stats.trials;
  stats.success_rate = p;
  stats.standard_error = std::sqrt(p * (1.0 - p) / stats.trials);
  stats.mean_recovery_rate = rate_sum / stats.trials;
  if (stats.trials > 1) {
    double sq = 0.0;
    for (const TrialOutcome& o : outcomes) {
      sq += (o.recovery_rate - stats.mean_recovery_rate) *
            (o.recovery_rate - stats.mean_recovery_rate);
    }
    stats.recovery_rate_stderr = std::sqrt(sq / (stats.trials - 1) / stats.trials);
  }
  return stats;
}

KmaxResult find_kmax(const ExperimentConfig& config, double target_rate,
                     const RowCallback& on_row) {
  validate(config);
  if (!(target_rate > 0.0 && target_rate < 1.0)) invalid("target rate must lie in (0, 1)");
  if (config.ks.empty()) invalid("k range is empty");
  for (std::size_t i = 1; i < config.ks.size(); ++i) {
    if (config.ks[i] != config.ks[i - 1] + 1) invalid("k range must be contiguous and ascending");
  }
  const auto fixed = fixed_operator(config);
  KmaxResult result;
  for (int k : config.ks) {
    RecoveryStats row = run_trials(config, k, fixed);
    result.rows.push_back(row);
    if (on_row) on_row(row);
    if (row.success_rate < target_rate) break;
    result.k_max = k;
  }
  return result;
}

std::vector<RecoveryStats> sweep(const ExperimentConfig& config, SweepAxis axis,
                                 const std::vector<double>& sigmas,
                                 const RowCallback& on_row) {
  validate(config);
  std::vector<RecoveryStats> rows;
  const auto fixed = fixed_operator(config);
  if (axis == SweepAxis::kSparsity) {
    if (config.ks.empty()) invalid("sparsity sweep needs at least one k");
    for (int k : config.ks) {
      rows.push_back(run_trials(config, k, fixed));
      if (on_row) on_row(rows.back());
    }
    return rows;
  }
  if (sigmas.empty()) invalid("noise sweep needs at least one sigma");
  ExperimentConfig point = config;
  point.signal_normalization = true;
  const int k = config.ks.empty() ? kDefaultNoiseSparsity : config.ks.front();
  for (double sigma : sigmas) {
    point.noise_sigma = sigma;
    validate(point);
    rows.push_back(run_trials(point, k, fixed));
    if (on_row) on_row(rows.back());
  }
  return rows;
}

BenchReport run_plan(const BenchPlan& plan, const RowCallback& on_row) {
  BenchReport report;
  report.plan = plan;
  switch (plan.mode) {
    case BenchPlan::Mode::kSparsity:
      report.rows = sweep(plan.config, SweepAxis::kSparsity, {}, on_row);
      break;
    case BenchPlan::Mode::kNoise:
      report.rows = sweep(plan.config, SweepAxis::kNoise, plan.sigmas, on_row);
      break;
    case BenchPlan::Mode::kKmax: {
      KmaxResult r = find_kmax(plan.config, plan.target_rate, on_row);
      report.rows = std::move(r.rows);
      report.k_max = r.k_max;
      break;
    }
  }
  return report;
}

void write_csv(const std::vector<RecoveryStats>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RecoveryStats& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.k, r.sigma, r.trials, r.successes,
                       r.success_rate, r.standard_error, r.mean_recovery_rate);
  }
}

namespace {

std::string mode_name(BenchPlan::Mode mode) {
  switch (mode) {
    case BenchPlan::Mode::kSparsity: return "sparsity";
    case BenchPlan::Mode::kNoise: return "noise";
    case BenchPlan::Mode::kKmax: return "kmax";
  }
  return "?";
}

BenchPlan::Mode parse_mode(const std::string& name) {
  for (auto m : {BenchPlan::Mode::kSparsity, BenchPlan::Mode::kNoise, BenchPlan::Mode::kKmax}) {
    if (mode_name(m) == name) return m;
  }
  invalid("unknown bench mode '" + name + "'");
}

std::string step_mode_name(StepMode mode) {
  return mode == StepMode::kNormalized ? "normalized" : "adaptive";
}

StepMode parse_step_mode(const std::string& name) {
  if (name == "normalized") return StepMode::kNormalized;
  if (name == "adaptive") return StepMode::kAdaptive;
  invalid("unknown IHT step mode '" + name + "'");
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    invalid(fmt::format("config field '{}': {}", key, e.what()));
  }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; })) {
      invalid(fmt::format("unknown config field '{}{}'", where, item.key()));
    }
  }
}

}  // namespace

nlohmann::json plan_to_json(const BenchPlan& plan) {
  const ExperimentConfig& c = plan.config;
  nlohmann::json source = {{"kind", to_string(c.source.kind)}};
  if (c.source.kind == SourceKind::kFile) {
    source["path"] = c.source.path.string();
  } else {
    source["M"] = c.source.num_rows;
    source["N"] = c.source.num_cols;
    if (c.source.kind != SourceKind::kGaussian) source["d"] = c.source.degree;
  }
  nlohmann::json j = {
      {"source", source},
      {"algorithm", to_string(c.algorithm)},
      {"omp",
       {{"stop", c.omp.stop == OmpStop::kResidual ? "residual" : "sparsity"},
        {"residual_tolerance", c.omp.residual_tolerance},
        {"max_iters", c.omp.max_iters}}},
      {"iht",
       {{"max_iters", c.iht.max_iters},
        {"step_mode", step_mode_name(c.iht.step_mode)},
        {"spectral_norm", c.iht.spectral_norm},
        {"stall_tolerance", c.iht.stall_tolerance}}},
      {"sp", {{"max_iters", c.sp.max_iters}}},
      {"bp",
       {{"penalty", c.bp.penalty},
        {"over_relaxation", c.bp.over_relaxation},
        {"tolerance", c.bp.tolerance},
        {"max_iters", c.bp.max_iters}}},
      {"ks", c.ks},
      {"trials", c.trials},
      {"seed", c.master_seed},
      {"sigma", c.noise_sigma},
      {"threshold", c.success_threshold},
      {"normalize", c.signal_normalization},
      {"mode", mode_name(plan.mode)},
  };
  if (plan.mode == BenchPlan::Mode::kNoise) j["sigmas"] = plan.sigmas;
  if (plan.mode == BenchPlan::Mode::kKmax) j["target_rate"] = plan.target_rate;
  return j;
}

nlohmann::json report_to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RecoveryStats& r : report.rows) {
    rows.push_back({{"k", r.k},
                    {"sigma", r.sigma},
                    {"trials", r.trials},
                    {"successes", r.successes},
                    {"success_rate", r.success_rate},
                    {"stderr", r.standard_error},
                    {"mean_recovery_rate", r.mean_recovery_rate},
                    {"recovery_rate_stderr", r.recovery_rate_stderr}});
  }
  nlohmann::json j = {{"tool", "bincs bench"},
                      {"version", kVersion},
                      {"config", plan_to_json(report.plan)},
                      {"rows", rows}};
  if (report.plan.mode == BenchPlan::Mode::kKmax) j["k_max"] = report.k_max;
  return j;
}

BenchPlan plan_from_json(const nlohmann::json& input, BenchPlan base) {
  if (!input.is_object()) invalid("config must be a JSON object");
  const bool envelope = input.contains("config") && input.contains("tool");
  const nlohmann::json& j = envelope ? input.at("config") : input;
  if (!j.is_object()) invalid("config must be a JSON object");
  reject_unknown(j, {"source", "algorithm", "omp", "iht", "sp", "bp", "ks", "trials", "seed",
                     "sigma", "threshold", "normalize", "mode", "sigmas", "target_rate"},
                 "");

  BenchPlan plan = std::move(base);
  ExperimentConfig& c = plan.config;
  if (j.contains("source")) {
    const auto& s = j.at("source");
    if (!s.is_object()) invalid("config field 'source' must be an object");
    reject_unknown(s, {"kind", "M", "N", "d", "path"}, "source.");
    if (s.contains("kind")) c.source.kind = parse_source_kind(field<std::string>(s, "kind"));
    if (s.contains("M")) c.source.num_rows = field<int>(s, "M");
    if (s.contains("N")) c.source.num_cols = field<int>(s, "N");
    if (s.contains("d")) c.source.degree = field<int>(s, "d");
    if (s.contains("path")) c.source.path = field<std::string>(s, "path");
  }
  if (j.contains("algorithm")) c.algorithm = parse_algorithm(field<std::string>(j, "algorithm"));
  if (j.contains("omp")) {
    const auto& p = j.at("omp");
    reject_unknown(p, {"stop", "residual_tolerance", "max_iters"}, "omp.");
    if (p.contains("stop")) {
      const auto stop = field<std::string>(p, "stop");
      if (stop != "residual" && stop != "sparsity") invalid("unknown omp.stop '" + stop + "'");
      c.omp.stop = stop == "residual" ? OmpStop::kResidual : OmpStop::kSparsity;
    }
    if (p.contains("residual_tolerance")) {
      c.omp.residual_tolerance = field<double>(p, "residual_tolerance");
    }
    if (p.contains("max_iters")) c.omp.max_iters = field<int>(p, "max_iters");
  }
  if (j.contains("iht")) {
    const auto& p = j.at("iht");
    reject_unknown(p, {"max_iters", "step_mode", "spectral_norm", "stall_tolerance"}, "iht.");
    if (p.contains("max_iters")) c.iht.max_iters = field<int>(p, "max_iters");
    if (p.contains("step_mode")) c.iht.step_mode = parse_step_mode(field<std::string>(p, "step_mode"));
    if (p.contains("spectral_norm")) c.iht.spectral_norm = field<double>(p, "spectral_norm");
    if (p.contains("stall_tolerance")) c.iht.stall_tolerance = field<double>(p, "stall_tolerance");
  }
  if (j.contains("sp")) {
    const auto& p = j.at("sp");
    reject_unknown(p, {"max_iters"}, "sp.");
    if (p.contains("max_iters")) c.sp.max_iters = field<int>(p, "max_iters");
  }
  if (j.contains("bp")) {
    const auto& p = j.at("bp");
    reject_unknown(p, {"penalty", "over_relaxation", "tolerance", "max_iters"}, "bp.");
    if (p.contains("penalty")) c.bp.penalty = field<double>(p, "penalty");
    if (p.contains("over_relaxation")) c.bp.over_relaxation = field<double>(p, "over_relaxation");
    if (p.contains("tolerance")) c.bp.tolerance = field<double>(p, "tolerance");
    if (p.contains("max_iters")) c.bp.max_iters = field<int>(p, "max_iters");
  }
  if (j.contains("ks")) c.ks = field<std::vector<int>>(j, "ks");
  if (j.contains("trials")) c.trials = field<int>(j, "trials");
  if (j.contains("seed")) c.master_seed = field<std::uint64_t>(j, "seed");
  if (j.contains("sigma")) c.noise_sigma = field<double>(j, "sigma");
  if (j.contains("threshold")) c.success_threshold = field<double>(j, "threshold");
  if (j.contains("normalize")) c.signal_normalization = field<bool>(j, "normalize");
  if (j.contains("mode")) plan.mode = parse_mode(field<std::string>(j, "mode"));
  if (j.contains("sigmas")) plan.sigmas = field<std::vector<double>>(j, "sigmas");
  if (j.contains("target_rate")) plan.target_rate = field<double>(j, "target_rate");
  return plan;
}

}  // namespace bincs
