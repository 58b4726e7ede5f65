#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinmin/core.hpp"

namespace spinmin {

/// The eigensolver did not meet its residual/orthonormality tolerances.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& message, double achieved_residual);
  double achieved_residual() const { return achieved_residual_; }

 private:
  double achieved_residual_;
};

enum class Eigensolver {
  kTridiagonalQR,  // Householder tridiagonalization + implicit QR (Eigen)
  kJacobi,         // cyclic Jacobi rotations
};

/// Eigenpairs of a connection matrix, eigenvalues non-increasing.
class Spectrum {
 public:
  static constexpr double kOrthonormalityTolerance = 1e-8;
  static constexpr std::size_t kJacobiSweepBudget = 64;

  Spectrum(std::vector<double> eigenvalues, std::vector<double> eigenvectors, double matrix_max_abs);

  std::size_t size() const { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  double eigenvalue(std::size_t i) const { return eigenvalues_[i]; }
  /// Unit-norm eigenvector paired with eigenvalue(i).
  std::span<const double> eigenvector(std::size_t i) const {
    return {eigenvectors_.data() + i * size(), size()};
  }

  /// 1e-8 * max|J_ij| * n. Also the threshold above which an eigenvalue counts as positive.
  double residual_tolerance() const { return residual_tolerance_; }
  std::size_t positive_count() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> eigenvectors_;  // row i = eigenvector i
  double residual_tolerance_;
};

/// Throws SolverError if the result misses the residual or orthonormality
/// tolerances (or Jacobi exhausts its sweep budget).
Spectrum decompose(const ConnectionMatrix& J, Eigensolver method = Eigensolver::kTridiagonalQR);

/// max_i ||J f_i - lambda_i f_i||
double max_residual(const ConnectionMatrix& J, const Spectrum& spec);
/// max_ij |(f_i, f_j) - delta_ij|
double max_orthonormality_error(const Spectrum& spec);

/// -sum_i lambda_i (s, f_i)^2
double spectral_energy(const Spectrum& spec, const Configuration& s);

/// -lambda_1 * n; no configuration has lower energy.
double lower_bound(const Spectrum& spec);

/// sign(f) with sign(0) = +1.
Configuration sign_configuration(std::span<const double> f);

/// The k configurations with the largest overlap (s, f), best first.
/// Equal overlaps are ordered by the lexicographically smallest set of
/// flipped coordinates (relative to sign(f)).
std::vector<Configuration> closest_configurations(std::span<const double> f, std::size_t k);

enum class SelectionPolicy {
  kPositive,  // every eigenvector with a positive eigenvalue
  kTopM,      // the m largest
  kLargest,   // the largest only
};

struct Selection {
  SelectionPolicy policy = SelectionPolicy::kPositive;
  std::size_t m = 0;  // kTopM only

  static Selection positive() { return {SelectionPolicy::kPositive, 0}; }
  static Selection top(std::size_t m) { return {SelectionPolicy::kTopM, m}; }
  static Selection largest() { return {SelectionPolicy::kLargest, 0}; }

  std::string label() const;
};

std::vector<std::size_t> select_eigenvectors(const Spectrum& spec, Selection selection);

struct StartProvenance {
  std::size_t eigen_index;
  std::size_t rank;  // 0 = sign vector
};

struct StartSet {
  std::vector<Configuration> starts;
  std::vector<StartProvenance> provenance;
  /// The policy selected no eigenvector (e.g. no positive eigenvalue).
  bool empty_selection = false;
};

StartSet build_start_set(const Spectrum& spec, std::size_t k_per_vector, Selection selection);

}  // namespace spinmin
