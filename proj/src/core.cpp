#include "spinmin/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinmin {

namespace {

void require_square(std::size_t n, std::size_t count) {
  if (n == 0) throw InvalidInput("matrix dimension must be positive");
  if (count != n * n)
    throw InvalidInput("expected " + std::to_string(n * n) + " entries, got " +
                       std::to_string(count));
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " contains a non-finite value");
}

void require_size(const Configuration& s, std::size_t n) {
  if (s.size() != n)
    throw InvalidInput("configuration has " + std::to_string(s.size()) +
                       " coordinates, matrix has dimension " + std::to_string(n));
}

}  // namespace

Configuration::Configuration(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (Spin v : spins_)
    if (v != 1 && v != -1) throw InvalidInput("configuration coordinates must be -1 or +1");
}

Configuration Configuration::all_up(std::size_t n) {
  return Configuration(std::vector<Spin>(n, 1));
}

Configuration Configuration::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw InvalidInput("from_mask supports at most 64 coordinates");
  std::vector<Spin> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = ((mask >> i) & 1u) ? -1 : 1;
  return Configuration(std::move(v));
}

Configuration Configuration::with_flip(std::size_t i) const {
  Configuration out = *this;
  out.spins_.at(i) = static_cast<Spin>(-out.spins_[i]);
  return out;
}

Configuration Configuration::negated() const {
  Configuration out = *this;
  for (auto& v : out.spins_) v = static_cast<Spin>(-v);
  return out;
}

std::string Configuration::to_string() const {
  std::string out;
  out.reserve(spins_.size());
  for (Spin v : spins_) out.push_back(v > 0 ? '+' : '-');
  return out;
}

RawMatrix::RawMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  require_square(n_, entries_.size());
  require_finite(entries_, "matrix");
}

RawMatrix RawMatrix::zeros(std::size_t n) { return RawMatrix(n, std::vector<double>(n * n, 0.0)); }

ConnectionMatrix::ConnectionMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  require_square(n_, entries_.size());
  require_finite(entries_, "connection matrix");
  for (std::size_t i = 0; i < n_; ++i) {
    if (entries_[i * n_ + i] != 0.0)
      throw InvalidInput("connection matrix diagonal entry " + std::to_string(i) + " is nonzero");
    for (std::size_t j = i + 1; j < n_; ++j)
      if (entries_[i * n_ + j] != entries_[j * n_ + i])
        throw InvalidInput("connection matrix is not symmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
  }
  for (double x : entries_) max_abs_ = std::max(max_abs_, std::abs(x));
}

ConnectionMatrix::ConnectionMatrix(const RawMatrix& m)
    : ConnectionMatrix(m.size(), std::vector<double>(m.entries().begin(), m.entries().end())) {}

double energy(const ConnectionMatrix& J, const Configuration& s) {
  const std::size_t n = J.size();
  require_size(s, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = J.row(i);
    double field = 0.0;
    for (std::size_t j = 0; j < n; ++j) field += row[j] * s[j];
    total += s[i] * field;
  }
  return -total;
}

double quadratic_energy(const RawMatrix& A, const Configuration& s) {
  const std::size_t n = A.size();
  require_size(s, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = A.row(i);
    double field = 0.0;
    for (std::size_t j = 0; j < n; ++j) field += row[j] * s[j];
    total += s[i] * field;
  }
  return -total;
}

double energy_tolerance(const ConnectionMatrix& J) {
  return 1e-9 * static_cast<double>(J.size()) * J.max_abs();
}

double Symmetrized::energy_offset() const {
  return -std::accumulate(dropped_diagonal.begin(), dropped_diagonal.end(), 0.0);
}

Symmetrized symmetrize(const RawMatrix& A) {
  const std::size_t n = A.size();
  std::vector<double> out(n * n, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = A(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (A(i, j) + A(j, i));
      out[i * n + j] = v;
      out[j * n + i] = v;
    }
  }
  return {ConnectionMatrix(n, std::move(out)), std::move(diag)};
}

ConnectionMatrix embed_linear_term(const ConnectionMatrix& J, std::span<const double> h) {
  const std::size_t n = J.size();
  if (h.size() != n)
    throw InvalidInput("linear term has " + std::to_string(h.size()) +
                       " coefficients, matrix has dimension " + std::to_string(n));
  require_finite(h, "linear term");
  const std::size_t m = n + 1;
  std::vector<double> out(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = J.row(i);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(i * m));
    out[i * m + n] = 0.5 * h[i];
    out[n * m + i] = 0.5 * h[i];
  }
  return ConnectionMatrix(m, std::move(out));
}

Configuration strip_fictitious(const Configuration& augmented) {
  if (augmented.size() < 2) throw InvalidInput("augmented configuration needs at least 2 coordinates");
  const Configuration& s = augmented[augmented.size() - 1] > 0 ? augmented : augmented.negated();
  const auto spins = s.spins();
  return Configuration(std::vector<Spin>(spins.begin(), spins.end() - 1));
}

RawMatrix shift_diagonal(const RawMatrix& A, std::span<const double> d) {
  const std::size_t n = A.size();
  if (d.size() != n)
    throw InvalidInput("diagonal shift has " + std::to_string(d.size()) +
                       " entries, matrix has dimension " + std::to_string(n));
  std::vector<double> out(A.entries().begin(), A.entries().end());
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] += d[i];
  return RawMatrix(n, std::move(out));
}

}  // namespace spinmin
