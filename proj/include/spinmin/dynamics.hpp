#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spinmin/core.hpp"
#include "spinmin/rng.hpp"

namespace spinmin {

enum class UpdateOrder {
  kSequential,         // coordinates 0..n-1 every sweep
  kRandomPermutation,  // fresh seeded permutation every sweep
};

struct DynamicsConfig {
  UpdateOrder order = UpdateOrder::kSequential;
  Seed order_seed = 0;
  /// Defaults to 10 * n when unset. Must be >= 1 when set.
  std::optional<std::size_t> max_sweeps;
  bool record_trace = false;
};

struct RelaxationResult {
  Configuration final_state;
  double final_energy = 0.0;
  std::size_t sweeps = 0;
  std::size_t flips = 0;
  /// Energy after each flip (starting energy first) when tracing.
  std::vector<double> energy_trace;
};

/// Sweep budget exhausted. Only reachable with a corrupted matrix.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(Configuration best_state, double best_energy, std::size_t sweeps);
  const Configuration& best_state() const { return best_state_; }
  double best_energy() const { return best_energy_; }

 private:
  Configuration best_state_;
  double best_energy_;
};

/// h_i = sum_j J_ij s_j
std::vector<double> local_fields(const ConnectionMatrix& J, const Configuration& s);

/// Local fields with |h_i| at or below this are treated as zero.
double zero_field_tolerance(const ConnectionMatrix& J);

/// True iff s_i agrees with sign(h_i) wherever h_i is nonzero.
bool is_fixed_point(const ConnectionMatrix& J, const Configuration& s);

/// Asynchronous sign dynamics s_i <- sign(h_i), zero field keeps s_i.
/// Stops after the first sweep without flips.
RelaxationResult relax(const ConnectionMatrix& J, const Configuration& start,
                       const DynamicsConfig& cfg = {});

}  // namespace spinmin
