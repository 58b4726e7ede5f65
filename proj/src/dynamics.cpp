#include "spinmin/dynamics.hpp"

#include <cmath>
#include <numeric>

namespace spinmin {

ConvergenceError::ConvergenceError(Configuration best_state, double best_energy, std::size_t sweeps)
    : std::runtime_error("relaxation did not converge within " + std::to_string(sweeps) +
                         " sweeps; best energy " + std::to_string(best_energy)),
      best_state_(std::move(best_state)),
      best_energy_(best_energy) {}

std::vector<double> local_fields(const ConnectionMatrix& J, const Configuration& s) {
  const std::size_t n = J.size();
  if (s.size() != n) throw InvalidInput("configuration and matrix dimensions differ");
  std::vector<double> h(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = J.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * s[j];
    h[i] = acc;
  }
  return h;
}

double zero_field_tolerance(const ConnectionMatrix& J) {
  return 1e-12 * static_cast<double>(J.size()) * J.max_abs();
}

bool is_fixed_point(const ConnectionMatrix& J, const Configuration& s) {
  const auto h = local_fields(J, s);
  const double tol = zero_field_tolerance(J);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (s[i] * h[i] < -tol) return false;
  return true;
}

RelaxationResult relax(const ConnectionMatrix& J, const Configuration& start, const DynamicsConfig& cfg) {
  const std::size_t n = J.size();
  if (start.size() != n) throw InvalidInput("start configuration and matrix dimensions differ");
  if (cfg.max_sweeps && *cfg.max_sweeps == 0) throw InvalidInput("max_sweeps must be at least 1");
  const std::size_t max_sweeps = cfg.max_sweeps.value_or(10 * n);

  std::vector<Spin> s(start.spins().begin(), start.spins().end());
  std::vector<double> h = local_fields(J, start);
  const double tol = zero_field_tolerance(J);

  RelaxationResult result;
  double e = 0.0;
  if (cfg.record_trace) {
    e = energy(J, start);
    result.energy_trace.push_back(e);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::optional<Rng> rng;
  if (cfg.order == UpdateOrder::kRandomPermutation) rng.emplace(cfg.order_seed);

  bool converged = false;
  while (result.sweeps < max_sweeps) {
    if (rng) {
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng->below(i)]);
    }
    ++result.sweeps;
    std::size_t flips_this_sweep = 0;
    for (std::size_t i : order) {
      const double drive = s[i] * h[i];
      if (drive >= -tol) continue;
      // Flipping s_i changes E by 4 s_i h_i < 0.
      const double old = s[i];
      s[i] = static_cast<Spin>(-s[i]);
      const auto row = J.row(i);
      const double delta = -2.0 * old;
      for (std::size_t j = 0; j < n; ++j) h[j] += delta * row[j];
      ++flips_this_sweep;
      if (cfg.record_trace) {
        e += 4.0 * drive;
        result.energy_trace.push_back(e);
      }
    }
    result.flips += flips_this_sweep;
    if (flips_this_sweep == 0) {
      converged = true;
      break;
    }
  }

  result.final_state = Configuration(std::move(s));
  result.final_energy = energy(J, result.final_state);
  if (!converged) throw ConvergenceError(result.final_state, result.final_energy, result.sweeps);
  return result;
}

}  // namespace spinmin
