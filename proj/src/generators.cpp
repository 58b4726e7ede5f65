#include "spinmin/generators.hpp"

#include <cmath>
#include <string>

namespace spinmin {

ConnectionMatrix gen_uniform(std::size_t n, double bound, Seed seed) {
  if (n < 2) throw InvalidInput("gen_uniform: n must be at least 2");
  if (!(bound > 0) || !std::isfinite(bound)) throw InvalidInput("gen_uniform: bound must be positive");
  Rng rng(seed);
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform(-bound, bound);
      entries[i * n + j] = v;
      entries[j * n + i] = v;
    }
  return ConnectionMatrix(n, std::move(entries));
}

PatternSet gen_patterns(std::size_t n, std::size_t p, Seed seed) {
  if (n == 0 || p == 0) throw InvalidInput("gen_patterns: n and p must be positive");
  Rng rng(seed);
  PatternSet set;
  set.n = n;
  set.patterns.reserve(p);
  for (std::size_t mu = 0; mu < p; ++mu) {
    std::vector<Spin> xi(n);
    for (auto& v : xi) v = static_cast<Spin>(rng.coin());
    set.patterns.emplace_back(std::move(xi));
  }
  return set;
}

ConnectionMatrix gen_hebb(const PatternSet& set) {
  const std::size_t n = set.n;
  if (n == 0 || set.patterns.empty()) throw InvalidInput("gen_hebb: empty pattern set");
  for (const auto& xi : set.patterns)
    if (xi.size() != n) throw InvalidInput("gen_hebb: pattern length differs from n");
  // Integer correlations first, so the scaled entries are symmetric bit for bit.
  std::vector<double> entries(n * n, 0.0);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long corr = 0;
      for (const auto& xi : set.patterns) corr += xi[i] * xi[j];
      const double v = static_cast<double>(corr) * scale;
      entries[i * n + j] = v;
      entries[j * n + i] = v;
    }
  return ConnectionMatrix(n, std::move(entries));
}

}  // namespace spinmin
