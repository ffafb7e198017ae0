#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bincs/recovery.h"
#include "bincs/sensing_operator.h"

namespace bincs {

enum class SourceKind { kPeg, kRandomBinary, kGaussian, kFile };
enum class Algorithm { kOmp, kIht, kSp, kBp };

std::string to_string(SourceKind kind);
std::string to_string(Algorithm algo);
SourceKind parse_source_kind(const std::string& name);
Algorithm parse_algorithm(const std::string& name);

struct MatrixSource {
  SourceKind kind = SourceKind::kPeg;
  int num_rows = 200;
  int num_cols = 400;
  int degree = 7;
  std::filesystem::path path;  // kFile only
};

struct ExperimentConfig {
  MatrixSource source;
  Algorithm algorithm = Algorithm::kOmp;
  OmpParams omp;
  IhtParams iht;
  SpParams sp;
  BpParams bp;
  std::vector<int> ks;
  int trials = 500;
  std::uint64_t master_seed = 0;
  double noise_sigma = 0.0;
  double success_threshold = 1e-4;
  bool signal_normalization = false;
  // Worker count (0 = hardware concurrency). Never affects results.
  int threads = 0;
};

// One row of a report.
struct RecoveryStats {
  int k = 0;
  double sigma = 0.0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
  double mean_recovery_rate = 0.0;
  double recovery_rate_stderr = 0.0;  // sample sd of the per-trial rate / sqrt(trials)
};

// Throws InvalidArgument describing the first invalid field.
void validate(const ExperimentConfig& config);

// Seed of trial t at sparsity k. Matrix, signal and noise draws use
// derive_seed(trial_seed, 0 / 1 / 2).
std::uint64_t trial_seed(std::uint64_t master_seed, int k, int trial);

// Matrix shared by all trials for PEG and FILE sources (built from the
// master seed); null for sources that are redrawn per trial.
std::shared_ptr<const SensingOperator> fixed_operator(const ExperimentConfig& config);

// Runs config.trials trials at sparsity k with noise level config.noise_sigma.
// `fixed` may be passed to reuse a fixed_operator() result.
RecoveryStats run_trials(const ExperimentConfig& config, int k,
                         std::shared_ptr<const SensingOperator> fixed = nullptr);

using RowCallback = std::function<void(const RecoveryStats&)>;

struct KmaxResult {
  int k_max = 0;
  std::vector<RecoveryStats> rows;  // ascending k, through the first failure
};

// Scans config.ks (contiguous, ascending) and returns the largest k reached
// before the first k whose success rate falls below target_rate.
KmaxResult find_kmax(const ExperimentConfig& config, double target_rate,
                     const RowCallback& on_row = {});

enum class SweepAxis { kSparsity, kNoise };

inline constexpr int kDefaultNoiseSparsity = 40;

// Sparsity sweeps run each k in config.ks. Noise sweeps run each sigma at
// config.ks[0] (kDefaultNoiseSparsity when ks is empty) with signal
// normalization forced on.
std::vector<RecoveryStats> sweep(const ExperimentConfig& config, SweepAxis axis,
                                 const std::vector<double>& sigmas = {},
                                 const RowCallback& on_row = {});

// A complete bench invocation, serializable so reports can be replayed.
struct BenchPlan {
  enum class Mode { kSparsity, kNoise, kKmax };
  ExperimentConfig config;
  Mode mode = Mode::kSparsity;
  std::vector<double> sigmas;
  double target_rate = 0.99;
};

struct BenchReport {
  BenchPlan plan;
  std::vector<RecoveryStats> rows;
  int k_max = 0;  // kKmax only
};

BenchReport run_plan(const BenchPlan& plan, const RowCallback& on_row = {});

inline constexpr const char* kCsvHeader =
    "k,sigma,trials,successes,success_rate,stderr,mean_recovery_rate";

void write_csv(const std::vector<RecoveryStats>& rows, std::ostream& out);

// JSON echo of the plan (all fields except threads) and the report envelope.
nlohmann::json plan_to_json(const BenchPlan& plan);
nlohmann::json report_to_json(const BenchReport& report);

// Accepts either a bare plan object or a report envelope (its "config"
// member). Missing fields keep their defaults; unknown fields are errors.
// Fields are applied on top of `base`.
BenchPlan plan_from_json(const nlohmann::json& j, BenchPlan base = {});

}  // namespace bincs
