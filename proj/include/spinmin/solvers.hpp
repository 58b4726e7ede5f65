#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinmin/core.hpp"
#include "spinmin/dynamics.hpp"
#include "spinmin/rng.hpp"
#include "spinmin/spectral.hpp"

namespace spinmin {

/// Exhaustive search refused: n above the cap.
class InfeasibleRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StrategyKind { kSpectral, kRandom, kExhaustive };

const char* to_string(StrategyKind kind);

/// One relaxation and where its start came from.
struct RunRecord {
  Configuration start;
  /// Spectral runs: source eigenvector and closeness rank. Random runs: restart index in `rank`.
  std::optional<std::size_t> eigen_index;
  std::size_t rank = 0;
  RelaxationResult result;
};

struct SolveOutcome {
  StrategyKind strategy = StrategyKind::kSpectral;
  std::string label;
  Configuration best_state;
  double best_energy = 0.0;
  std::vector<RunRecord> runs;
  /// Index into `runs` of the deepest minimum (first one on ties). Unset for exhaustive.
  std::optional<std::size_t> best_run;
  /// Coordinate visits plus field updates across all relaxations (or enumeration steps).
  std::uint64_t work_estimate = 0;
  /// n^3 for the eigendecomposition; reported separately from work_estimate.
  std::uint64_t decomposition_work = 0;
  /// Exhaustive only: minimizers sharing the minimum energy, with s_0 fixed to +1.
  std::size_t degeneracy = 0;
  std::vector<std::string> warnings;

  std::size_t total_sweeps() const;
  std::size_t total_flips() const;
  /// Source eigenvector of the best run, if spectral.
  std::optional<std::size_t> best_eigen_index() const;
};

struct SpectralParams {
  std::size_t k_per_vector = 3;
  Selection selection = Selection::positive();
};

/// Relaxes from the configurations closest to the selected eigenvectors.
/// Falls back to the largest eigenvector if the selection is empty.
SolveOutcome solve_spectral(const ConnectionMatrix& J, const SpectralParams& params,
                            const DynamicsConfig& cfg = {});
SolveOutcome solve_spectral(const ConnectionMatrix& J, const Spectrum& spec,
                            const SpectralParams& params, const DynamicsConfig& cfg = {});

/// Relaxes from `restarts` uniform random configurations.
SolveOutcome solve_random(const ConnectionMatrix& J, std::size_t restarts, Seed seed,
                          const DynamicsConfig& cfg = {});

/// Cap from EXHAUSTIVE_CAP, else 24.
std::size_t exhaustive_cap();

/// Gray-code enumeration of all 2^(n-1) configurations with s_0 = +1.
/// Reports the lexicographically smallest minimizer (-1 < +1).
SolveOutcome solve_exhaustive(const ConnectionMatrix& J, std::size_t cap = exhaustive_cap());

enum class Verdict { kWin, kTie, kLoss };

const char* to_string(Verdict v);

/// Win iff `candidate` is deeper than `reference` by more than `tolerance`.
Verdict classify(double candidate, double reference, double tolerance);

/// True iff `energy` is within `tolerance` of the oracle minimum.
bool reaches(double energy, double oracle_energy, double tolerance);

struct Comparison {
  double spectral_energy = 0.0;
  double random_energy = 0.0;
  /// random - spectral; positive when spectral is deeper.
  double gap = 0.0;
  Verdict verdict = Verdict::kTie;
};

/// Spectral (positive eigenvalues, k = 3) against n random restarts.
Comparison compare(const ConnectionMatrix& J, Seed seed, const DynamicsConfig& cfg = {});

}  // namespace spinmin
