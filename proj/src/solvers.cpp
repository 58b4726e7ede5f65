#include "spinmin/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

namespace spinmin {

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kSpectral: return "spectral";
    case StrategyKind::kRandom: return "random";
    case StrategyKind::kExhaustive: return "exhaustive";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kWin: return "win";
    case Verdict::kTie: return "tie";
    case Verdict::kLoss: return "loss";
  }
  return "?";
}

std::size_t SolveOutcome::total_sweeps() const {
  std::size_t total = 0;
  for (const auto& r : runs) total += r.result.sweeps;
  return total;
}

std::size_t SolveOutcome::total_flips() const {
  std::size_t total = 0;
  for (const auto& r : runs) total += r.result.flips;
  return total;
}

std::optional<std::size_t> SolveOutcome::best_eigen_index() const {
  if (!best_run) return std::nullopt;
  return runs[*best_run].eigen_index;
}

namespace {

DynamicsConfig config_for_run(const DynamicsConfig& cfg, std::size_t run) {
  DynamicsConfig out = cfg;
  out.order_seed = derive_seed(cfg.order_seed, run, 1);
  return out;
}

void relax_all(const ConnectionMatrix& J, const DynamicsConfig& cfg, SolveOutcome& outcome) {
  const auto n = static_cast<std::uint64_t>(J.size());
  for (std::size_t r = 0; r < outcome.runs.size(); ++r) {
    auto& run = outcome.runs[r];
    run.result = relax(J, run.start, config_for_run(cfg, r));
    outcome.work_estimate += n * (run.result.sweeps + run.result.flips);
    if (!outcome.best_run || run.result.final_energy < outcome.best_energy) {
      outcome.best_run = r;
      outcome.best_energy = run.result.final_energy;
      outcome.best_state = run.result.final_state;
    }
  }
}

}  // namespace

SolveOutcome solve_spectral(const ConnectionMatrix& J, const SpectralParams& params,
                            const DynamicsConfig& cfg) {
  return solve_spectral(J, decompose(J), params, cfg);
}

SolveOutcome solve_spectral(const ConnectionMatrix& J, const Spectrum& spec,
                            const SpectralParams& params, const DynamicsConfig& cfg) {
  if (spec.size() != J.size()) throw InvalidInput("spectrum and matrix dimensions differ");
  SolveOutcome outcome;
  outcome.strategy = StrategyKind::kSpectral;
  outcome.label = "spectral(policy=" + params.selection.label() +
                  ",k=" + std::to_string(params.k_per_vector) + ")";
  const auto n = static_cast<std::uint64_t>(J.size());
  outcome.decomposition_work = n * n * n;

  StartSet starts = build_start_set(spec, params.k_per_vector, params.selection);
  if (starts.empty_selection) {
    outcome.warnings.push_back("policy " + params.selection.label() +
                               " selected no eigenvectors; fell back to the largest eigenvector");
    starts = build_start_set(spec, params.k_per_vector, Selection::largest());
  }
  outcome.runs.reserve(starts.starts.size());
  for (std::size_t i = 0; i < starts.starts.size(); ++i)
    outcome.runs.push_back({starts.starts[i], starts.provenance[i].eigen_index, starts.provenance[i].rank, {}});
  relax_all(J, cfg, outcome);
  return outcome;
}

SolveOutcome solve_random(const ConnectionMatrix& J, std::size_t restarts, Seed seed,
                          const DynamicsConfig& cfg) {
  if (restarts == 0) throw InvalidInput("solve_random: restarts must be positive");
  SolveOutcome outcome;
  outcome.strategy = StrategyKind::kRandom;
  outcome.label = "random(restarts=" + std::to_string(restarts) + ")";
  const std::size_t n = J.size();
  Rng rng(seed);
  outcome.runs.reserve(restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<Spin> spins(n);
    for (auto& v : spins) v = static_cast<Spin>(rng.coin());
    outcome.runs.push_back({Configuration(std::move(spins)), std::nullopt, r, {}});
  }
  relax_all(J, cfg, outcome);
  return outcome;
}

std::size_t exhaustive_cap() {
  if (const char* env = std::getenv("EXHAUSTIVE_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 24;
}

SolveOutcome solve_exhaustive(const ConnectionMatrix& J, std::size_t cap) {
  const std::size_t n = J.size();
  if (n > cap)
    throw InfeasibleRequest("exhaustive search refused: n = " + std::to_string(n) +
                            " exceeds the cap of " + std::to_string(cap));
  if (n > 63) throw InfeasibleRequest("exhaustive search supports at most 63 coordinates");

  SolveOutcome outcome;
  outcome.strategy = StrategyKind::kExhaustive;
  outcome.label = "exhaustive";

  std::vector<Spin> s(n, 1);
  Configuration current(s);
  std::vector<double> h = local_fields(J, current);
  double e = energy(J, current);
  const double tol = energy_tolerance(J);

  std::vector<Spin> best = s;
  double best_e = e;
  std::size_t degeneracy = 1;

  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t t = 1; t < steps; ++t) {
    const std::size_t c = 1 + static_cast<std::size_t>(std::countr_zero(t));
    e += 4.0 * s[c] * h[c];
    const double delta = -2.0 * s[c];
    s[c] = static_cast<Spin>(-s[c]);
    const auto row = J.row(c);
    for (std::size_t j = 0; j < n; ++j) h[j] += delta * row[j];

    if (e < best_e - tol) {
      best_e = e;
      best = s;
      degeneracy = 1;
    } else if (e <= best_e + tol) {
      ++degeneracy;
      if (s < best) {
        best = s;
        best_e = std::min(best_e, e);
      }
    }
  }

  outcome.best_state = Configuration(std::move(best));
  outcome.best_energy = energy(J, outcome.best_state);
  outcome.degeneracy = degeneracy;
  outcome.work_estimate = steps * static_cast<std::uint64_t>(n);
  return outcome;
}

Verdict classify(double candidate, double reference, double tolerance) {
  if (candidate < reference - tolerance) return Verdict::kWin;
  if (candidate > reference + tolerance) return Verdict::kLoss;
  return Verdict::kTie;
}

bool reaches(double energy, double oracle_energy, double tolerance) {
  return energy <= oracle_energy + tolerance;
}

Comparison compare(const ConnectionMatrix& J, Seed seed, const DynamicsConfig& cfg) {
  const auto spectral = solve_spectral(J, SpectralParams{3, Selection::positive()}, cfg);
  const auto random = solve_random(J, J.size(), seed, cfg);
  Comparison c;
  c.spectral_energy = spectral.best_energy;
  c.random_energy = random.best_energy;
  c.gap = random.best_energy - spectral.best_energy;
  c.verdict = classify(spectral.best_energy, random.best_energy, energy_tolerance(J));
  return c;
}

}  // namespace spinmin
