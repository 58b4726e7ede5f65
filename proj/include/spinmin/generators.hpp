#pragma once

#include <cstddef>
#include <vector>

#include "spinmin/core.hpp"
#include "spinmin/rng.hpp"

namespace spinmin {

/// p random +-1 patterns of length n.
struct PatternSet {
  std::size_t n = 0;
  std::vector<Configuration> patterns;

  std::size_t p() const { return patterns.size(); }
};

/// Off-diagonal couplings i.i.d. uniform on [-bound, bound) (upper triangle
/// drawn row by row, then mirrored), zero diagonal.
ConnectionMatrix gen_uniform(std::size_t n, double bound, Seed seed);

PatternSet gen_patterns(std::size_t n, std::size_t p, Seed seed);

/// J_ij = (1/n) sum_mu xi_i^mu xi_j^mu for i != j, J_ii = 0.
ConnectionMatrix gen_hebb(const PatternSet& patterns);

}  // namespace spinmin
