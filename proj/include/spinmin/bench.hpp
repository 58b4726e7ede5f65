#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinmin/dynamics.hpp"
#include "spinmin/rng.hpp"
#include "spinmin/solvers.hpp"

namespace spinmin {

/// Experiment parameters that can never be run (e.g. oracle above the cap).
class InfeasibleSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EnsembleKind { kUniform, kHebb };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kUniform;
  std::size_t n = 0;
  double bound = 4.0;  // uniform
  std::size_t p = 0;   // hebb
};

struct StrategySpec {
  StrategyKind kind = StrategyKind::kSpectral;
  SpectralParams spectral;
  /// Top-m count for policy b; unset means "p" (Hebb pattern count).
  std::optional<std::size_t> top_m;
  /// Random restarts; unset means n.
  std::optional<std::size_t> restarts;

  /// Stable, comma-free label used in CSV rows, e.g. "spectral-a-k3", "random-n".
  std::string label() const;

  /// Parses "spectral:policy=a,k=3", "spectral:policy=b,m=10,k=3",
  /// "spectral:policy=c,k=3", "random:restarts=n", "random:restarts=50".
  static StrategySpec parse(const std::string& text);
};

struct ExperimentSpec {
  EnsembleSpec ensemble;
  std::size_t trials = 1;
  std::vector<StrategySpec> strategies;
  Seed master_seed = 0;
  bool oracle = false;
  DynamicsConfig dynamics;
};

/// Throws InfeasibleSpec or InvalidInput before any work is done.
void validate(const ExperimentSpec& spec, std::size_t cap = exhaustive_cap());

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const nlohmann::json& j);

struct StrategyRecord {
  std::string label;
  StrategyKind kind = StrategyKind::kSpectral;
  double best_energy = 0.0;
  std::optional<bool> found_global;
  /// Spectral strategies against the first random strategy of the trial.
  std::optional<Verdict> verdict;
  std::optional<double> gap;
  std::size_t sweeps = 0;
  std::size_t flips = 0;
  std::size_t starts = 0;
  std::uint64_t work_estimate = 0;
  std::optional<std::size_t> best_eigen_index;
  /// Hebb only: best_energy <= lowest pattern energy (within tolerance).
  std::optional<bool> reached_pattern_energy;
  std::vector<std::string> warnings;
  double wall_ms = 0.0;
};

struct TrialRecord {
  std::size_t index = 0;
  Seed matrix_seed = 0;
  double energy_tolerance = 0.0;
  std::optional<double> oracle_energy;
  std::optional<std::size_t> oracle_degeneracy;
  std::optional<double> pattern_energy;
  std::optional<double> lower_bound;
  std::optional<std::size_t> positive_eigenvalues;
  std::vector<StrategyRecord> strategies;
};

/// One row of the per-trial CSV.
struct CsvRow {
  std::size_t trial_index = 0;
  Seed matrix_seed = 0;
  std::string strategy;
  double best_energy = 0.0;
  std::optional<double> oracle_energy;
  std::optional<bool> found_global;
  std::optional<Verdict> win_flag;
  std::size_t sweeps = 0;
  std::size_t flips = 0;
  std::optional<double> wall_ms;
};

struct Proportion {
  std::size_t successes = 0;
  std::size_t total = 0;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Wilson score interval at 95%.
Proportion wilson(std::size_t successes, std::size_t total);

struct StrategyAggregate {
  std::string label;
  std::size_t trials = 0;
  double mean_best_energy = 0.0;
  std::optional<Proportion> p_global;
  std::size_t wins = 0;
  std::size_t ties = 0;
  std::size_t losses = 0;
  std::optional<Proportion> win_probability;
  std::optional<double> mean_gap;
};

struct Aggregates {
  std::vector<StrategyAggregate> strategies;
};

/// Aggregates derive from CSV rows only, so a CSV alone can re-derive them.
Aggregates aggregate(const std::vector<CsvRow>& rows);
nlohmann::json to_json(const Aggregates& aggregates);

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<TrialRecord> trials;
  Aggregates aggregates;
};

std::size_t default_jobs();

/// Runs every trial (concurrently up to `jobs`); trials are ordered by index.
ExperimentReport run_experiment(const ExperimentSpec& spec, std::size_t jobs = default_jobs());

/// Runs a single trial. Exposed for tests.
TrialRecord run_trial(const ExperimentSpec& spec, std::size_t trial_index);

std::vector<CsvRow> csv_rows(const ExperimentReport& report);

inline constexpr const char* kCsvHeader =
    "trial_index,matrix_seed,strategy,best_energy,oracle_energy,found_global,win_flag,sweeps,flips,wall_ms";

/// Timing lives only in the trailing wall_ms column; with `include_timing`
/// false that column is left blank.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool include_timing = true);
std::vector<CsvRow> read_csv(std::istream& in);

/// {schema_version, spec, trials, aggregates}. Timing sits under a separate
/// "timing" key per trial and is omitted when `include_timing` is false.
nlohmann::json report_json(const ExperimentReport& report, bool include_timing = true);

/// Hebb-only summary: pattern-energy recovery and which eigenvector's start
/// set produced the deepest minimum.
nlohmann::json hebb_summary(const ExperimentReport& report);

/// Empty when `aggregates_json` matches aggregates re-derived from `rows`;
/// otherwise one message per mismatch.
std::vector<std::string> verify_aggregates(const std::vector<CsvRow>& rows,
                                           const nlohmann::json& aggregates_json);

}  // namespace spinmin
