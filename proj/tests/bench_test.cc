#include "bincs/bench.h"

#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_util.h"

namespace bincs {
namespace {

using testing::error_code;

ExperimentConfig small_config(Algorithm algo = Algorithm::kOmp) {
  ExperimentConfig c;
  c.algorithm = algo;
  c.trials = 40;
  c.master_seed = 3;
  c.ks = {30};
  return c;
}

std::string csv(const std::vector<RecoveryStats>& rows) {
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

TEST(Bench, Validation) {
  ExperimentConfig c = small_config();
  c.ks = {0};
  EXPECT_EQ(error_code([&] { validate(c); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code([&] { run_trials(small_config(), 0); }), ErrorCode::kInvalidArgument);
  c = small_config();
  c.trials = 0;
  EXPECT_EQ(error_code([&] { validate(c); }), ErrorCode::kInvalidArgument);
  c = small_config();
  c.noise_sigma = -1;
  EXPECT_EQ(error_code([&] { validate(c); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code([] { parse_algorithm("lasso"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(parse_source_kind("random"), SourceKind::kRandomBinary);
  EXPECT_EQ(to_string(Algorithm::kSp), "sp");
}

TEST(Bench, TrialSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (int k = 1; k <= 100; ++k) {
    for (int t = 0; t < 500; ++t) seen.insert(trial_seed(0, k, t));
  }
  EXPECT_EQ(seen.size(), 50000u);
}

TEST(Bench, StatsFormulas) {
  const RecoveryStats s = run_trials(small_config(), 90);
  const double p = s.success_rate;
  EXPECT_EQ(s.trials, 40);
  EXPECT_DOUBLE_EQ(p, s.successes / 40.0);
  EXPECT_DOUBLE_EQ(s.standard_error, std::sqrt(p * (1 - p) / 40));
  EXPECT_GE(s.mean_recovery_rate, p * (1 - 1e-4));
  EXPECT_LE(s.mean_recovery_rate, 1.0);
  EXPECT_GE(s.recovery_rate_stderr, 0.0);
}

TEST(Bench, ThreadCountDoesNotChangeResults) {
  for (SourceKind kind : {SourceKind::kPeg, SourceKind::kRandomBinary, SourceKind::kGaussian}) {
    ExperimentConfig c = small_config();
    c.source.kind = kind;
    c.ks = {60, 80};
    c.threads = 1;
    const std::string one = csv(sweep(c, SweepAxis::kSparsity));
    c.threads = 4;
    EXPECT_EQ(csv(sweep(c, SweepAxis::kSparsity)), one);
  }
}

TEST(Bench, ZeroNoiseMatchesNoiselessRun) {
  ExperimentConfig c = small_config(Algorithm::kSp);
  c.signal_normalization = true;
  const RecoveryStats plain = run_trials(c, 30);
  const auto rows = sweep(c, SweepAxis::kNoise, {0.0, 0.05});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(csv({rows[0]}), csv({plain}));
  EXPECT_EQ(rows[0].k, 30);
  EXPECT_EQ(rows[1].sigma, 0.05);
}

TEST(Bench, NoiseSweepDefaultsToK40) {
  ExperimentConfig c = small_config();
  c.ks.clear();
  c.trials = 5;
  EXPECT_EQ(sweep(c, SweepAxis::kNoise, {0.0})[0].k, kDefaultNoiseSparsity);
}

TEST(Bench, SparsitySweepIsMonotoneWithinNoise) {
  ExperimentConfig c = small_config();
  c.trials = 100;
  c.ks = {60, 80, 90, 100, 110};
  const auto rows = sweep(c, SweepAxis::kSparsity);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double se = std::hypot(rows[i].recovery_rate_stderr, rows[i - 1].recovery_rate_stderr);
    EXPECT_LE(rows[i].mean_recovery_rate, rows[i - 1].mean_recovery_rate + 2 * se);
  }
}

TEST(Bench, FindKmaxStopsAtFirstFailure) {
  ExperimentConfig c = small_config();
  c.trials = 20;
  c.ks = {};
  for (int k = 60; k <= 120; k += 1) c.ks.push_back(k);
  const KmaxResult r = find_kmax(c, 0.99);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_LT(r.rows.back().success_rate, 0.99);
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) EXPECT_GE(r.rows[i].success_rate, 0.99);
  EXPECT_EQ(r.k_max, r.rows.size() >= 2 ? r.rows[r.rows.size() - 2].k : 0);
  c.ks = {60, 62};
  EXPECT_EQ(error_code([&] { find_kmax(c, 0.99); }), ErrorCode::kInvalidArgument);
}

TEST(Bench, RandomDegreeTwoIsFarBelowPeg) {
  // Columns are kept distinct, so k = 1 is always recovered; the k_max of
  // degree-2 random matrices is still a small fraction of the PEG value.
  ExperimentConfig c = small_config();
  c.source.kind = SourceKind::kRandomBinary;
  c.source.degree = 2;
  c.trials = 200;
  EXPECT_EQ(run_trials(c, 1).success_rate, 1.0);
  c.ks = {};
  for (int k = 1; k <= 40; ++k) c.ks.push_back(k);
  EXPECT_LT(find_kmax(c, 0.99).k_max, 25);
}

TEST(Bench, CsvLayout) {
  RecoveryStats s;
  s.k = 4;
  s.sigma = 0.5;
  s.trials = 10;
  s.successes = 7;
  s.success_rate = 0.7;
  s.standard_error = 0.25;
  s.mean_recovery_rate = 0.75;
  EXPECT_EQ(csv({s}), std::string(kCsvHeader) + "\n4,0.5,10,7,0.7,0.25,0.75\n");
}

TEST(Bench, JsonRoundTripAndReplay) {
  BenchPlan plan;
  plan.config = small_config(Algorithm::kIht);
  plan.config.source.kind = SourceKind::kRandomBinary;
  plan.config.ks = {20, 25};
  plan.config.trials = 10;
  plan.config.iht.max_iters = 300;
  const BenchReport report = run_plan(plan);
  const nlohmann::json envelope = report_to_json(report);

  const BenchPlan back = plan_from_json(nlohmann::json::parse(envelope.dump()));
  EXPECT_EQ(plan_to_json(back), plan_to_json(plan));
  const BenchReport replay = run_plan(back);
  EXPECT_EQ(report_to_json(replay).dump(), envelope.dump());
  EXPECT_EQ(csv(replay.rows), csv(report.rows));

  BenchPlan exact_k;
  exact_k.config = small_config();
  exact_k.config.omp.stop = OmpStop::kSparsity;
  exact_k.config.omp.max_iters = 77;
  const BenchPlan exact_back = plan_from_json(plan_to_json(exact_k));
  EXPECT_EQ(exact_back.config.omp.stop, OmpStop::kSparsity);
  EXPECT_EQ(exact_back.config.omp.max_iters, 77);

  nlohmann::json bad = plan_to_json(plan);
  bad["trails"] = 5;
  EXPECT_EQ(error_code([&] { plan_from_json(bad); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace bincs
