#include "cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "bincs/bench.h"
#include "bincs/bipartite_graph.h"
#include "bincs/construction.h"
#include "bincs/error.h"
#include "bincs/matrix_io.h"
#include "bincs/parallel.h"
#include "bincs/rational.h"
#include "bincs/recovery.h"
#include "bincs/rip_theory.h"
#include "bincs/seed.h"
#include "bincs/sensing_matrix.h"
#include "bincs/sensing_operator.h"
#include "bincs/spectral.h"
#include "bincs/version.h"

namespace bincs::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad flags, unreadable config files and invalid configurations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Removes every registered file unless commit() was called.
class OutputFiles {
 public:
  ~OutputFiles() {
    if (committed_) return;
    for (const fs::path& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
  void add(const fs::path& p) { paths_.push_back(p); }
  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> paths_;
  bool committed_ = false;
};

void write_text(OutputFiles& files, const fs::path& path, const std::string& text) {
  files.add(path);
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

json girth_json(Girth g) {
  if (g == kInfiniteGirth) return "inf";
  return g;
}

json rational_json(const Rational& r) {
  return {{"exact", to_string(r)}, {"value", to_double(r)}};
}

json formula_json(const RicFormulaResult& r) {
  json j = {{"formula", to_string(r.formula)}, {"k", r.k}, {"delta_k", r.delta_k}};
  if (r.exact) j["exact"] = to_string(*r.exact);
  if (r.overlap) j["s"] = *r.overlap;
  if (r.rho) j["rho"] = *r.rho;
  return j;
}

// Theoretical RIC values at each k. Girth > 4 matrices get the girth > 4 and
// large-k forms, girth-4 matrices the girth-4 form with s = max overlap.
// Inapplicable formulas are reported with the reason.
json ric_json(const SensingMatrix& a, const CorrelationSpectrum& spectrum,
              const std::vector<int>& ks) {
  json rows = json::array();
  const int d = a.degree();
  std::optional<double> rho;
  try {
    rho = to_double(overlap_probability(a.rows(), a.cols(), d));
  } catch (const Error&) {
  }
  for (int k : ks) {
    auto attempt = [&](auto&& fn) -> json {
      try {
        return formula_json(fn());
      } catch (const Error& e) {
        return {{"k", k}, {"error", e.what()}};
      }
    };
    if (spectrum.max_overlap <= 1) {
      rows.push_back(attempt([&] { return ric_girth_above4(k, d); }));
      if (rho) rows.push_back(attempt([&] { return ric_large_k(k, d, *rho); }));
    } else {
      rows.push_back(
          attempt([&] { return ric_girth4(k, d, spectrum.max_overlap, a.rows()); }));
    }
  }
  return rows;
}

json binary_summary(const SensingMatrix& a, Girth girth, const std::vector<int>& ks) {
  const CorrelationSpectrum spectrum = correlation_spectrum(a);
  const Rational mu = spectrum.coherence();
  const std::optional<std::int64_t> k_bound = coherence_k_bound(mu);
  const std::vector<int> row_degrees = a.row_degrees();
  json j = {
      {"M", a.rows()},
      {"N", a.cols()},
      {"d", a.degree()},
      {"girth", girth_json(girth)},
      {"coherence", rational_json(mu)},
      {"coherence_k_bound", k_bound ? json(*k_bound) : json(nullptr)},
      {"max_overlap", spectrum.max_overlap},
      {"overlap_counts", spectrum.overlap_counts},
      {"correlated_fraction", rational_json(spectrum.correlated_fraction())},
      {"row_degree",
       {{"min", *std::min_element(row_degrees.begin(), row_degrees.end())},
        {"max", *std::max_element(row_degrees.begin(), row_degrees.end())}}},
  };
  try {
    j["rho"] = rational_json(overlap_probability(a.rows(), a.cols(), a.degree()));
  } catch (const Error& e) {
    j["rho"] = {{"error", e.what()}};
  }
  j["ric"] = ric_json(a, spectrum, ks);
  return j;
}

double dense_coherence(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd normalized = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double n = a.col(j).norm();
    if (n > 0.0) normalized.col(j) /= n;
  }
  const Eigen::MatrixXd gram = normalized.transpose() * normalized;
  double mu = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j) mu = std::max(mu, std::abs(gram(i, j)));
  }
  return mu;
}

void print_seed(std::ostream& err, std::uint64_t seed) {
  fmt::print(err, "bincs: master seed = {}\n", seed);
}

std::shared_ptr<const SensingOperator> load_operator(const fs::path& path) {
  if (is_dense_matrix_file(path)) return std::make_shared<DenseOperator>(read_dense_matrix(path));
  return std::make_shared<BinaryOperator>(read_matrix(path));
}

// ---------------------------------------------------------------------------

struct ConstructOptions {
  std::string kind;
  int m = 0;
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  std::string ks;
  int max_retries = 20;
  int min_girth = 6;
  int threads = 1;
  std::string output;
  std::string summary;
};

int run_construct(const ConstructOptions& o, std::ostream& out, std::ostream& err) {
  print_seed(err, o.seed);
  const std::vector<int> ks = o.ks.empty() ? std::vector<int>{} : parse_int_list(o.ks);
  const fs::path summary_path = o.summary.empty() ? fs::path(o.output + ".json") : fs::path(o.summary);
  OutputFiles files;
  json summary = {{"tool", "bincs construct"}, {"version", kVersion}, {"kind", o.kind},
                  {"seed", o.seed}};

  if (o.kind == "gaussian") {
    const Eigen::MatrixXd a = gaussian_matrix(o.m, o.n, o.seed);
    files.add(o.output);
    write_dense_matrix(a, o.output);
    summary.update({{"M", o.m}, {"N", o.n}, {"coherence", {{"value", dense_coherence(a)}}}});
  } else {
    SensingMatrix a;
    Girth girth = kInfiniteGirth;
    if (o.kind == "peg") {
      PegConfig config;
      config.seed = o.seed;
      config.max_retries = o.max_retries;
      const PegSearchResult r = peg_construct_with_girth(o.m, o.n, o.d, o.min_girth, config);
      a = r.matrix;
      girth = r.girth;
      summary["attempts"] = r.attempts;
      summary["reached_target"] = r.reached_target;
      if (!r.reached_target) {
        fmt::print(err, "bincs: warning: girth {} after {} attempts, target was {}\n",
                   girth_to_string(girth), r.attempts, o.min_girth);
      }
    } else {
      a = random_regular(o.m, o.n, o.d, o.seed);
      girth = compute_girth(a.graph(), o.threads).global_girth;
    }
    files.add(o.output);
    write_matrix(a, o.output);
    summary.update(binary_summary(a, girth, ks));
  }
  summary["output"] = o.output;
  write_text(files, summary_path, summary.dump(2) + "\n");
  out << summary.dump(2) << '\n';
  files.commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  std::string matrix;
  std::string ks = "2:12";
  int samples = 1000;
  std::uint64_t seed = 0;
  double concentration_tol = 0.2;
  int threads = 0;
  std::string output;
};

int run_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  print_seed(err, o.seed);
  const std::vector<int> ks = parse_int_list(o.ks);
  if (is_dense_matrix_file(o.matrix)) {
    throw Error(ErrorCode::kInvalidArgument, "analyze needs a binary matrix file");
  }
  const SensingMatrix a = read_matrix(o.matrix);
  const Girth girth = compute_girth(a.graph(), resolve_threads(o.threads)).global_girth;
  json report = {{"tool", "bincs analyze"}, {"version", kVersion}, {"matrix", o.matrix},
                 {"seed", o.seed}, {"samples", o.samples}};
  report.update(binary_summary(a, girth, ks));

  std::optional<double> rho;
  try {
    rho = to_double(overlap_probability(a.rows(), a.cols(), a.degree()));
  } catch (const Error&) {
  }
  json empirical = json::array();
  for (int k : ks) {
    const EmpiricalRicReport r = empirical_ric(a, k, o.samples, derive_seed(o.seed, k), o.threads);
    json row = {{"k", k},
                {"delta_hat", r.delta_hat},
                {"min_lambda_min", r.min_lambda_min},
                {"max_lambda_max", r.max_lambda_max},
                {"bound_lambda_min", r.bounds.lambda_min_lower},
                {"bound_lambda_max", r.bounds.lambda_max_upper},
                {"bound_violations", r.bound_violations}};
    if (k >= 2) {
      const OffdiagStats p = offdiag_proportion_stats(a, k, o.samples, derive_seed(o.seed, k), o.threads);
      row["offdiag_proportion"] = {{"min", p.p_min}, {"mean", p.p_mean}, {"max", p.p_max}};
      if (rho) row["offdiag_proportion"]["concentration"] = concentration_fraction(p, *rho, o.concentration_tol);
    }
    empirical.push_back(row);
    fmt::print(err, "bincs: analyzed k = {}\n", k);
  }
  report["empirical"] = empirical;

  OutputFiles files;
  if (!o.output.empty()) write_text(files, o.output, report.dump(2) + "\n");
  out << report.dump(2) << '\n';
  files.commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RecoverOptions {
  std::string matrix;
  std::string algo = "omp";
  int k = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  bool normalize = false;
  std::string signal;
  double threshold = 1e-4;
  std::string omp_stop = "residual";
  std::string iht_step = "adaptive";
  std::string output;
};

// Signal file: first line N, then one "index value" pair per line.
SparseSignal read_signal(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open signal file " + path.string());
  SparseSignal x;
  if (!(in >> x.dimension)) throw UsageError("signal file must start with N");
  std::vector<std::pair<int, double>> entries;
  int index = 0;
  double value = 0.0;
  while (in >> index >> value) entries.emplace_back(index, value);
  if (!in.eof()) throw UsageError("malformed signal file " + path.string());
  std::sort(entries.begin(), entries.end());
  for (const auto& [i, v] : entries) {
    x.support.push_back(i);
    x.values.push_back(v);
  }
  validate(x);
  return x;
}

int run_recover(const RecoverOptions& o, std::ostream& out, std::ostream& err) {
  print_seed(err, o.seed);
  const Algorithm algo = parse_algorithm(o.algo);
  const auto a = load_operator(o.matrix);

  SparseSignal x;
  if (!o.signal.empty()) {
    x = read_signal(o.signal);
    if (x.dimension != a->cols()) throw UsageError("signal dimension does not match the matrix");
  } else {
    if (o.k < 1) throw UsageError("-k is required without --signal");
    std::mt19937_64 rng(derive_seed(o.seed, 1));
    std::normal_distribution<double> normal(0.0, 1.0);
    x.dimension = a->cols();
    x.support = sample_subset(a->cols(), o.k, rng);
    for (std::size_t i = 0; i < x.support.size(); ++i) x.values.push_back(normal(rng));
  }
  Eigen::VectorXd clean = x.dense();
  if (o.normalize) clean /= clean.norm();
  Eigen::VectorXd measured = clean;
  if (o.sigma > 0.0) {
    std::mt19937_64 rng(derive_seed(o.seed, 2));
    std::normal_distribution<double> noise(0.0, o.sigma);
    for (Eigen::Index i = 0; i < measured.size(); ++i) measured[i] += noise(rng);
  }
  const Eigen::VectorXd y = a->apply(measured);
  const int k = o.k > 0 ? o.k : x.sparsity();

  RecoveryOutput r;
  switch (algo) {
    case Algorithm::kOmp: {
      OmpParams p;
      p.stop = o.omp_stop == "sparsity" ? OmpStop::kSparsity : OmpStop::kResidual;
      r = omp(*a, y, k, p);
      break;
    }
    case Algorithm::kIht: {
      IhtParams p;
      p.step_mode = o.iht_step == "normalized" ? StepMode::kNormalized : StepMode::kAdaptive;
      r = iht(*a, y, k, p);
      break;
    }
    case Algorithm::kSp:
      r = sp(*a, y, k);
      break;
    case Algorithm::kBp:
      r = bp(*a, y);
      break;
  }
  const double rel = (r.x_hat - clean).norm() / clean.norm();
  int support_hits = 0;
  for (int i : x.support) support_hits += r.x_hat[i] != 0.0 ? 1 : 0;

  fmt::print(out, "algorithm {}\n", o.algo);
  fmt::print(out, "k {}\n", k);
  fmt::print(out, "relative_error {:.6e}\n", rel);
  fmt::print(out, "recovery_rate {:.6f}\n", std::max(0.0, 1.0 - rel));
  fmt::print(out, "success {}\n", rel <= o.threshold ? "yes" : "no");
  fmt::print(out, "support_hits {}/{}\n", support_hits, x.sparsity());
  fmt::print(out, "iterations {}\n", r.iterations);
  fmt::print(out, "residual_norm {:.6e}\n", r.final_residual_norm);
  fmt::print(out, "converged {}\n", r.converged ? "yes" : "no");

  OutputFiles files;
  if (!o.output.empty()) {
    std::ostringstream text;
    text << r.x_hat.size() << '\n';
    for (Eigen::Index i = 0; i < r.x_hat.size(); ++i) {
      if (r.x_hat[i] != 0.0) text << fmt::format("{} {}\n", i, r.x_hat[i]);
    }
    write_text(files, o.output, text.str());
  }
  files.commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string config;
  std::string mode;
  std::string source;
  std::string matrix;
  int m = 0;
  int n = 0;
  int d = 0;
  std::string algo;
  std::string ks;
  std::string sigmas;
  int trials = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double threshold = 0.0;
  double target_rate = 0.0;
  bool normalize = false;
  std::string omp_stop;
  std::string iht_step;
  int threads = 0;
  std::string output = "bench";
};

BenchPlan resolve_plan(const BenchOptions& o, const CLI::App& app) {
  BenchPlan plan;
  plan.config.ks = {40};
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot open config file " + o.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("config file " + o.config + ": " + e.what());
    }
    plan = plan_from_json(j, plan);
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  ExperimentConfig& c = plan.config;
  if (given("--mode")) {
    json m = {{"mode", o.mode}};
    plan = plan_from_json(m, plan);
  }
  if (given("--source")) c.source.kind = parse_source_kind(o.source);
  if (given("--matrix")) {
    c.source.kind = SourceKind::kFile;
    c.source.path = o.matrix;
  }
  if (given("-M")) c.source.num_rows = o.m;
  if (given("-N")) c.source.num_cols = o.n;
  if (given("-d")) c.source.degree = o.d;
  if (given("--algo")) c.algorithm = parse_algorithm(o.algo);
  if (given("-k")) c.ks = parse_int_list(o.ks);
  if (given("--sigmas")) plan.sigmas = parse_double_list(o.sigmas);
  if (given("--trials")) c.trials = o.trials;
  if (given("--seed")) c.master_seed = o.seed;
  if (given("--sigma")) c.noise_sigma = o.sigma;
  if (given("--threshold")) c.success_threshold = o.threshold;
  if (given("--target-rate")) plan.target_rate = o.target_rate;
  if (given("--normalize")) c.signal_normalization = o.normalize;
  if (given("--omp-stop")) c.omp.stop = o.omp_stop == "sparsity" ? OmpStop::kSparsity : OmpStop::kResidual;
  if (given("--iht-step")) {
    c.iht.step_mode = o.iht_step == "normalized" ? StepMode::kNormalized : StepMode::kAdaptive;
  }
  c.threads = o.threads;
  if (plan.mode == BenchPlan::Mode::kNoise && plan.sigmas.empty()) {
    plan.sigmas = {c.noise_sigma};
  }
  validate(c);
  return plan;
}

int run_bench(const BenchOptions& o, const CLI::App& app, std::ostream& out, std::ostream& err) {
  BenchPlan plan;
  try {
    plan = resolve_plan(o, app);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  print_seed(err, plan.config.master_seed);

  const std::size_t points =
      plan.mode == BenchPlan::Mode::kNoise ? plan.sigmas.size() : plan.config.ks.size();
  std::size_t done = 0;
  const BenchReport report = run_plan(plan, [&](const RecoveryStats& row) {
    fmt::print(err, "bincs: [{}/{}] k={} sigma={} success_rate={}\n", ++done, points, row.k,
               row.sigma, row.success_rate);
  });

  std::ostringstream csv;
  write_csv(report.rows, csv);
  OutputFiles files;
  write_text(files, o.output + ".csv", csv.str());
  write_text(files, o.output + ".json", report_to_json(report).dump(2) + "\n");
  out << csv.str();
  if (plan.mode == BenchPlan::Mode::kKmax) fmt::print(out, "k_max {}\n", report.k_max);
  files.commit();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct DmaxOptions {
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int max_retries = 20;
  std::string output;
};

int run_dmax(const DmaxOptions& o, std::ostream& out, std::ostream& err) {
  print_seed(err, o.seed);
  PegConfig config;
  config.seed = o.seed;
  config.max_retries = o.max_retries;
  const DmaxResult r = find_dmax(o.m, o.n, config);
  fmt::print(out, "M {}\nN {}\n", o.m, o.n);
  fmt::print(out, "theoretical_bound {}\n", r.theoretical_bound);
  fmt::print(out, "practical_dmax {}\n", r.d_max);
  fmt::print(out, "method {}\n", r.method == DmaxMethod::kPeg ? "peg" : "projective-plane");
  fmt::print(out, "girth {}\n", girth_to_string(r.girth));
  OutputFiles files;
  if (!o.output.empty()) {
    files.add(o.output);
    write_matrix(r.matrix, fs::path(o.output));
  }
  files.commit();
  return kExitOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream items(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size()) throw UsageError("bad integer '" + s + "' in list '" + text + "'");
    return v;
  };
  while (std::getline(items, item, ',')) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      values.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, colon));
    const int hi = to_int(item.substr(colon + 1));
    if (hi < lo) throw UsageError("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty list '" + text + "'");
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw UsageError("bad number '" + item + "' in list '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty list '" + text + "'");
  return values;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary compressed-sensing matrices: construction, analysis and recovery"};
  app.name("bincs");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "Build a sensing matrix");
  construct->add_option("kind", co.kind, "peg | random | gaussian")
      ->required()
      ->check(CLI::IsMember({"peg", "random", "gaussian"}));
  construct->add_option("-M", co.m, "Rows")->required()->check(CLI::PositiveNumber);
  construct->add_option("-N", co.n, "Columns")->required()->check(CLI::PositiveNumber);
  construct->add_option("-d", co.d, "Column degree (binary kinds)");
  construct->add_option("--seed", co.seed, "Master seed");
  construct->add_option("-k", co.ks, "Sparsity list for RIC values, e.g. 2:12,40");
  construct->add_option("--max-retries", co.max_retries, "Randomized PEG restarts")
      ->check(CLI::NonNegativeNumber);
  construct->add_option("--min-girth", co.min_girth, "PEG girth target");
  construct->add_option("--threads", co.threads, "Worker threads (0 = auto)");
  construct->add_option("-o", co.output, "Matrix output path")->required();
  construct->add_option("--summary", co.summary, "Summary JSON path (default <o>.json)");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Report girth, correlations and RIC estimates");
  analyze->add_option("matrix", ao.matrix, "Matrix file")->required();
  analyze->add_option("-k", ao.ks, "Sparsity list");
  analyze->add_option("-s,--samples", ao.samples, "Sampled subsets per k")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", ao.seed, "Master seed");
  analyze->add_option("--concentration-tol", ao.concentration_tol, "Relative tolerance for |p - rho|");
  analyze->add_option("--threads", ao.threads, "Worker threads (0 = auto)");
  analyze->add_option("-o", ao.output, "Report JSON path");

  RecoverOptions ro;
  auto* recover = app.add_subcommand("recover", "Recover one sparse signal");
  recover->add_option("matrix", ro.matrix, "Matrix file (binary or dense)")->required();
  recover->add_option("--algo", ro.algo, "omp | iht | sp | bp")
      ->check(CLI::IsMember({"omp", "iht", "sp", "bp"}));
  recover->add_option("-k", ro.k, "Sparsity (signal drawn from --seed when no --signal)");
  recover->add_option("--seed", ro.seed, "Master seed");
  recover->add_option("--sigma", ro.sigma, "Noise added to x before measurement")
      ->check(CLI::NonNegativeNumber);
  recover->add_flag("--normalize", ro.normalize, "Rescale x to unit norm");
  recover->add_option("--signal", ro.signal, "Signal file: N, then 'index value' lines");
  recover->add_option("--threshold", ro.threshold, "Relative-error success threshold");
  recover->add_option("--omp-stop", ro.omp_stop, "residual | sparsity")
      ->check(CLI::IsMember({"residual", "sparsity"}));
  recover->add_option("--iht-step", ro.iht_step, "adaptive | normalized")
      ->check(CLI::IsMember({"adaptive", "normalized"}));
  recover->add_option("-o", ro.output, "Write x_hat ('index value' lines)");

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Monte Carlo recovery experiments");
  bench->add_option("--config", bo.config, "JSON config or report to replay");
  bench->add_option("--mode", bo.mode, "sparsity | noise | kmax")
      ->check(CLI::IsMember({"sparsity", "noise", "kmax"}));
  bench->add_option("--source", bo.source, "peg | random | gaussian | file")
      ->check(CLI::IsMember({"peg", "random", "gaussian", "file"}));
  bench->add_option("--matrix", bo.matrix, "Matrix file (implies --source file)");
  bench->add_option("-M", bo.m, "Rows");
  bench->add_option("-N", bo.n, "Columns");
  bench->add_option("-d", bo.d, "Column degree");
  bench->add_option("--algo", bo.algo, "omp | iht | sp | bp")
      ->check(CLI::IsMember({"omp", "iht", "sp", "bp"}));
  bench->add_option("-k", bo.ks, "Sparsity list, e.g. 60:80");
  bench->add_option("--sigmas", bo.sigmas, "Noise levels for --mode noise");
  bench->add_option("--trials", bo.trials, "Trials per point");
  bench->add_option("--seed", bo.seed, "Master seed");
  bench->add_option("--sigma", bo.sigma, "Noise level");
  bench->add_option("--threshold", bo.threshold, "Relative-error success threshold");
  bench->add_option("--target-rate", bo.target_rate, "Success rate for --mode kmax");
  bench->add_flag("--normalize", bo.normalize, "Rescale signals to unit norm");
  bench->add_option("--omp-stop", bo.omp_stop, "residual | sparsity")
      ->check(CLI::IsMember({"residual", "sparsity"}));
  bench->add_option("--iht-step", bo.iht_step, "adaptive | normalized")
      ->check(CLI::IsMember({"adaptive", "normalized"}));
  bench->add_option("--threads", bo.threads, "Worker threads (0 = auto)");
  bench->add_option("-o", bo.output, "Output prefix for .csv and .json");

  DmaxOptions dm;
  auto* dmax = app.add_subcommand("dmax", "Largest degree with girth > 4");
  dmax->add_option("-M", dm.m, "Rows")->required()->check(CLI::PositiveNumber);
  dmax->add_option("-N", dm.n, "Columns")->required()->check(CLI::PositiveNumber);
  dmax->add_option("--seed", dm.seed, "Master seed");
  dmax->add_option("--max-retries", dm.max_retries, "Randomized PEG restarts per degree")
      ->check(CLI::NonNegativeNumber);
  dmax->add_option("-o", dm.output, "Write the d_max matrix");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bincs: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*construct) {
      if (co.kind != "gaussian" && !construct->count("-d")) {
        throw UsageError("-d is required for binary matrices");
      }
      return run_construct(co, out, err);
    }
    if (*analyze) return run_analyze(ao, out, err);
    if (*recover) return run_recover(ro, out, err);
    if (*bench) return run_bench(bo, *bench, out, err);
    if (*dmax) return run_dmax(dm, out, err);
  } catch (const UsageError& e) {
    err << "bincs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "bincs: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "bincs: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace bincs::cli
