// spinmin: generate instances, run solvers, benchmark ensembles.
//
// Exit codes: 0 success, 1 usage, 2 input parse, 3 infeasible request,
// 4 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinmin/bench.hpp"
#include "spinmin/core.hpp"
#include "spinmin/generators.hpp"
#include "spinmin/matrix_io.hpp"
#include "spinmin/serialize.hpp"
#include "spinmin/solvers.hpp"
#include "spinmin/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinmin;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kInfeasible = 3, kInternal = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DynamicsFlags {
  std::string order = "sequential";
  Seed order_seed = 0;
  std::size_t max_sweeps = 0;

  void add(CLI::App* app) {
    app->add_option("--order", order, "Update order")->check(CLI::IsMember({"sequential", "random"}));
    app->add_option("--order-seed", order_seed, "Seed for random update order");
    app->add_option("--max-sweeps", max_sweeps, "Sweep budget per relaxation (default 10n)");
  }

  DynamicsConfig config() const {
    DynamicsConfig cfg;
    cfg.order = order == "random" ? UpdateOrder::kRandomPermutation : UpdateOrder::kSequential;
    cfg.order_seed = order_seed;
    if (max_sweeps) cfg.max_sweeps = max_sweeps;
    return cfg;
  }
};

Selection make_selection(const std::string& policy, std::size_t m) {
  if (policy == "a") return Selection::positive();
  if (policy == "c") return Selection::largest();
  if (m == 0) throw UsageError("--policy b requires --m");
  return Selection::top(m);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  return out;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string ensemble = "uniform";
  std::size_t n = 0;
  double bound = 4.0;
  std::size_t p = 0;
  std::size_t count = 1;
  Seed seed = 0;
  std::string out_dir = ".";
};

int run_gen(const GenArgs& a) {
  if (a.ensemble == "hebb" && a.p == 0) throw UsageError("--ensemble hebb requires --p");
  fs::create_directories(a.out_dir);
  for (std::size_t i = 0; i < a.count; ++i) {
    const Seed seed = derive_seed(a.seed, i, 0);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_n%zu_%05zu", a.ensemble.c_str(), a.n, i);
    const fs::path base = fs::path(a.out_dir) / name;
    if (a.ensemble == "uniform") {
      auto out = open_output(base.string() + ".txt");
      write_matrix(out, gen_uniform(a.n, a.bound, seed));
    } else {
      const auto patterns = gen_patterns(a.n, a.p, seed);
      auto out = open_output(base.string() + ".txt");
      write_matrix(out, gen_hebb(patterns));
      auto pout = open_output(base.string() + ".patterns.txt");
      write_patterns(pout, a.n, patterns.patterns);
    }
  }
  std::cerr << "wrote " << a.count << " matrices to " << a.out_dir << '\n';
  return kOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string matrix;
  std::string strategy = "spectral";
  std::size_t k = 3;
  std::string policy = "a";
  std::size_t m = 0;
  std::size_t restarts = 0;
  Seed seed = 0;
  bool raw = false;
  std::string linear;
  DynamicsFlags dynamics;
};

int run_solve(const SolveArgs& a) {
  auto doc = read_matrix_file(a.matrix);
  json extra = json::object();
  ConnectionMatrix J;
  if (doc.kind == MatrixKind::kRaw) {
    if (!a.raw) throw ParseError(1, "'" + a.matrix + "' is a raw matrix; pass --raw to symmetrize it");
    auto sym = symmetrize(doc.matrix);
    extra["symmetrized"] = true;
    extra["energy_offset"] = sym.energy_offset();
    J = std::move(sym.matrix);
  } else {
    J = ConnectionMatrix(doc.matrix);
  }

  std::vector<double> h;
  if (!a.linear.empty()) {
    std::ifstream in(a.linear);
    if (!in) throw ParseError(0, "cannot open '" + a.linear + "'");
    h = read_linear_term(in);
    J = embed_linear_term(J, h);
  }

  const DynamicsConfig cfg = a.dynamics.config();
  SolveOutcome outcome;
  if (a.strategy == "spectral") {
    outcome = solve_spectral(J, SpectralParams{a.k, make_selection(a.policy, a.m)}, cfg);
  } else if (a.strategy == "random") {
    outcome = solve_random(J, a.restarts ? a.restarts : J.size(), a.seed, cfg);
  } else {
    outcome = solve_exhaustive(J);
  }
  if (outcome.best_energy != energy(J, outcome.best_state))
    throw InvariantViolation("best_energy does not match the energy of best_state");

  json out = to_json(outcome);
  if (!h.empty()) {
    const Configuration s = strip_fictitious(outcome.best_state);
    double linear = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) linear += h[i] * s[i];
    extra["linear_term"] = {{"state", to_json(s)}, {"linear_contribution", -linear}};
  }
  if (!extra.empty()) out["input"] = extra;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  std::string matrix;
  std::size_t k = 0;
  std::string policy = "a";
  std::size_t m = 0;
  std::string solver = "qr";
  bool as_json = false;
};

int run_spectrum(const SpectrumArgs& a) {
  auto doc = read_matrix_file(a.matrix);
  const ConnectionMatrix J =
      doc.kind == MatrixKind::kRaw ? symmetrize(doc.matrix).matrix : ConnectionMatrix(doc.matrix);
  const Spectrum spec = decompose(J, a.solver == "jacobi" ? Eigensolver::kJacobi : Eigensolver::kTridiagonalQR);
  double trace = 0.0;
  for (double l : spec.eigenvalues()) trace += l;

  json out = {{"schema_version", kSchemaVersion},
              {"n", J.size()},
              {"eigenvalues", std::vector<double>(spec.eigenvalues().begin(), spec.eigenvalues().end())},
              {"lower_bound", lower_bound(spec)},
              {"positive_count", spec.positive_count()},
              {"eigenvalue_sum", trace},
              {"max_residual", max_residual(J, spec)}};
  if (a.k > 0) out["start_set"] = to_json(build_start_set(spec, a.k, make_selection(a.policy, a.m)));

  if (a.as_json) {
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  std::cout << std::setprecision(12) << "eigenvalues:";
  for (double l : spec.eigenvalues()) std::cout << ' ' << l;
  std::cout << "\nlower bound: " << lower_bound(spec) << '\n'
            << "positive eigenvalues: " << spec.positive_count() << '\n'
            << "eigenvalue sum (should be ~0): " << trace << '\n';
  if (a.k > 0) {
    const auto starts = build_start_set(spec, a.k, make_selection(a.policy, a.m));
    std::cout << "start set (" << starts.starts.size() << "):\n";
    for (std::size_t i = 0; i < starts.starts.size(); ++i)
      std::cout << "  f" << starts.provenance[i].eigen_index + 1 << " rank " << starts.provenance[i].rank << "  "
                << starts.starts[i].to_string() << '\n';
  }
  return kOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string ensemble = "uniform";
  std::size_t n = 0;
  double bound = 4.0;
  std::size_t p = 0;
  std::size_t trials = 1;
  std::vector<std::string> strategies;
  Seed seed = 0;
  bool oracle = false;
  std::size_t jobs = 0;
  std::string csv;
  std::string json_path;
  bool no_timing = false;
  DynamicsFlags dynamics;
};

ExperimentSpec bench_spec(const BenchArgs& a) {
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw ParseError(0, "cannot open '" + a.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(0, std::string("invalid JSON in '") + a.config + "': " + e.what());
    }
    return experiment_from_json(j);
  }
  if (a.n == 0) throw UsageError("bench needs --n (or --config)");
  ExperimentSpec spec;
  spec.ensemble.kind = a.ensemble == "hebb" ? EnsembleKind::kHebb : EnsembleKind::kUniform;
  spec.ensemble.n = a.n;
  spec.ensemble.bound = a.bound;
  spec.ensemble.p = a.p;
  spec.trials = a.trials;
  spec.master_seed = a.seed;
  spec.oracle = a.oracle;
  spec.dynamics = a.dynamics.config();
  const std::vector<std::string> defaults = {"spectral:policy=a,k=3", "random:restarts=n"};
  for (const auto& s : a.strategies.empty() ? defaults : a.strategies)
    spec.strategies.push_back(StrategySpec::parse(s));
  return spec;
}

int run_bench(const BenchArgs& a) {
  const ExperimentSpec spec = bench_spec(a);
  validate(spec);
  const auto report = run_experiment(spec, a.jobs ? a.jobs : default_jobs());
  const auto rows = csv_rows(report);
  if (!a.csv.empty()) {
    auto out = open_output(a.csv);
    write_csv(out, rows, !a.no_timing);
  }
  const json j = report_json(report, !a.no_timing);
  if (!a.json_path.empty()) {
    auto out = open_output(a.json_path);
    out << j.dump(2) << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
  for (const auto& s : report.aggregates.strategies) {
    std::cerr << s.label << ": mean energy " << s.mean_best_energy;
    if (s.p_global) std::cerr << ", P_global " << s.p_global->value;
    if (s.win_probability)
      std::cerr << ", win " << s.win_probability->value << " (tie " << s.ties << ", loss " << s.losses << ")";
    std::cerr << '\n';
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::string& csv_path, const std::string& json_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw ParseError(0, "cannot open '" + csv_path + "'");
  std::ifstream js(json_path);
  if (!js) throw ParseError(0, "cannot open '" + json_path + "'");
  json report;
  try {
    report = json::parse(js);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!report.contains("aggregates")) throw ParseError(0, "report has no aggregates");
  const auto problems = verify_aggregates(read_csv(csv), report.at("aggregates"));
  for (const auto& p : problems) std::cerr << "mismatch " << p << '\n';
  if (!problems.empty()) return kInternal;
  std::cout << "aggregates match the per-trial CSV\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-start Hopfield search for minima of E(s) = -(Js, s)"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random connection matrices");
  gen_cmd->add_option("--ensemble", gen.ensemble)->check(CLI::IsMember({"uniform", "hebb"}));
  gen_cmd->add_option("--n", gen.n, "Dimension")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  gen_cmd->add_option("--bound", gen.bound, "Uniform coupling bound")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", gen.p, "Hebb pattern count");
  gen_cmd->add_option("--count", gen.count, "Number of matrices")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Minimize E(s) for one matrix file; JSON on stdout");
  solve_cmd->add_option("matrix", solve.matrix, "Matrix file")->required();
  solve_cmd->add_option("--strategy", solve.strategy)
      ->check(CLI::IsMember({"spectral", "random", "exhaustive"}));
  solve_cmd->add_option("--k", solve.k, "Starts per eigenvector")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--policy", solve.policy, "a: positive, b: top m, c: largest")
      ->check(CLI::IsMember({"a", "b", "c"}));
  solve_cmd->add_option("--m", solve.m, "Eigenvector count for policy b");
  solve_cmd->add_option("--restarts", solve.restarts, "Random restarts (default n)");
  solve_cmd->add_option("--seed", solve.seed, "Seed for random restarts");
  solve_cmd->add_flag("--raw", solve.raw, "Accept a raw matrix and symmetrize it");
  solve_cmd->add_option("--linear", solve.linear, "Linear-term file to embed");
  solve.dynamics.add(solve_cmd);

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues, lower bound and start sets");
  spectrum_cmd->add_option("matrix", spectrum.matrix, "Matrix file")->required();
  spectrum_cmd->add_option("--k", spectrum.k, "Also list k closest configurations per eigenvector");
  spectrum_cmd->add_option("--policy", spectrum.policy)->check(CLI::IsMember({"a", "b", "c"}));
  spectrum_cmd->add_option("--m", spectrum.m, "Eigenvector count for policy b");
  spectrum_cmd->add_option("--solver", spectrum.solver)->check(CLI::IsMember({"qr", "jacobi"}));
  spectrum_cmd->add_flag("--json", spectrum.as_json, "Emit JSON");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded ensemble experiment");
  bench_cmd->add_option("--config", bench.config, "Experiment spec JSON (overrides ensemble flags)");
  bench_cmd->add_option("--ensemble", bench.ensemble)->check(CLI::IsMember({"uniform", "hebb"}));
  bench_cmd->add_option("--n", bench.n, "Dimension");
  bench_cmd->add_option("--bound", bench.bound)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--p", bench.p, "Hebb pattern count");
  bench_cmd->add_option("--trials", bench.trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--strategy", bench.strategies,
                        "Repeatable, e.g. spectral:policy=c,k=3 or random:restarts=n");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_flag("--oracle", bench.oracle, "Run exhaustive search per trial");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads (default JOBS_DEFAULT or core count)");
  bench_cmd->add_option("--csv", bench.csv, "Per-trial CSV output path");
  bench_cmd->add_option("--json", bench.json_path, "Report JSON output path (default stdout)");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Leave timing fields out");
  bench.dynamics.add(bench_cmd);

  std::string verify_csv, verify_json;
  auto* verify_cmd = app.add_subcommand("verify", "Re-derive report aggregates from the per-trial CSV");
  verify_cmd->add_option("--csv", verify_csv)->required();
  verify_cmd->add_option("--json", verify_json)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*spectrum_cmd) return run_spectrum(spectrum);
    if (*bench_cmd) return run_bench(bench);
    if (*verify_cmd) return run_verify(verify_csv, verify_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InfeasibleSpec& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InfeasibleRequest& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
