#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinmin {

/// Thrown when an argument violates an operation's preconditions
/// (dimension mismatch, non-finite entry, broken symmetry, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a result fails one of its own invariants after construction.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Spin = std::int8_t;

/// A state of the system: n coordinates, each exactly -1 or +1.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Spin> spins);

  static Configuration all_up(std::size_t n);
  /// Coordinate i is -1 iff bit i of `mask` is set. Requires n <= 64.
  static Configuration from_mask(std::size_t n, std::uint64_t mask);

  std::size_t size() const { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  std::span<const Spin> spins() const { return spins_; }

  Configuration with_flip(std::size_t i) const;
  /// s -> -s.
  Configuration negated() const;

  std::string to_string() const;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Spin> spins_;
};

/// Square matrix of finite reals with no structural requirement.
/// Holds inputs before symmetrization.
class RawMatrix {
 public:
  RawMatrix() = default;
  RawMatrix(std::size_t n, std::vector<double> entries);

  static RawMatrix zeros(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Symmetric, zero-diagonal, finite coupling matrix. Row-major dense storage.
class ConnectionMatrix {
 public:
  ConnectionMatrix() = default;
  /// Validates symmetry (exact), zero diagonal and finiteness.
  ConnectionMatrix(std::size_t n, std::vector<double> entries);
  explicit ConnectionMatrix(const RawMatrix& m);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

  /// max |J_ij|
  double max_abs() const { return max_abs_; }

  RawMatrix as_raw() const { return RawMatrix(n_, entries_); }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  double max_abs_ = 0.0;
};

/// E(s) = -sum_ij J_ij s_i s_j.
double energy(const ConnectionMatrix& J, const Configuration& s);

/// The same quadratic form evaluated on arbitrary (possibly nonsymmetric,
/// nonzero-diagonal) entries.
double quadratic_energy(const RawMatrix& A, const Configuration& s);

/// Absolute tolerance used when comparing energies of one instance.
double energy_tolerance(const ConnectionMatrix& J);

struct Symmetrized {
  ConnectionMatrix matrix;
  /// Diagonal of the raw input, removed from `matrix`.
  std::vector<double> dropped_diagonal;

  /// Constant -sum_i A_ii that the dropped diagonal contributes to every
  /// configuration's energy.
  double energy_offset() const;
};

/// (A + A^T)/2 off the diagonal, zero on it.
Symmetrized symmetrize(const RawMatrix& A);

/// Augments J with a fictitious coordinate n carrying h_i/2 couplings, so that
/// with s'_n = +1: -(J's',s') = -(Js,s) - (h,s).
ConnectionMatrix embed_linear_term(const ConnectionMatrix& J, std::span<const double> h);

/// Drops the fictitious last coordinate after normalizing it to +1.
Configuration strip_fictitious(const Configuration& augmented);

RawMatrix shift_diagonal(const RawMatrix& A, std::span<const double> d);

}  // namespace spinmin
