#include "spinmin/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace spinmin {

SolverError::SolverError(const std::string& message, double achieved_residual)
    : std::runtime_error(message + " (achieved residual " + std::to_string(achieved_residual) + ")"),
      achieved_residual_(achieved_residual) {}

Spectrum::Spectrum(std::vector<double> eigenvalues, std::vector<double> eigenvectors,
                   double matrix_max_abs)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      residual_tolerance_(1e-8 * matrix_max_abs * static_cast<double>(eigenvalues_.size())) {
  if (eigenvectors_.size() != eigenvalues_.size() * eigenvalues_.size())
    throw InvalidInput("spectrum: eigenvector storage does not match eigenvalue count");
  if (!std::is_sorted(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>()))
    throw InvariantViolation("spectrum: eigenvalues not sorted non-increasing");
}

std::size_t Spectrum::positive_count() const {
  return static_cast<std::size_t>(std::count_if(eigenvalues_.begin(), eigenvalues_.end(),
                                                [&](double l) { return l > residual_tolerance_; }));
}

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat to_eigen(const ConnectionMatrix& J) {
  const auto n = static_cast<Eigen::Index>(J.size());
  return Eigen::Map<const Mat>(J.entries().data(), n, n);
}

// Cyclic Jacobi. On return `a` is (nearly) diagonal and the columns of `v`
// are the eigenvectors. Returns false if the sweep budget ran out.
bool jacobi_diagonalize(Eigen::MatrixXd& a, Eigen::MatrixXd& v, std::size_t max_sweeps) {
  const Eigen::Index n = a.rows();
  v.setIdentity(n, n);
  const double scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) return true;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return false;
}

// Flips each eigenvector so its largest-magnitude coordinate is positive.
void canonicalize_sign(std::span<double> f) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (std::abs(f[i]) > std::abs(f[arg])) arg = i;
  if (f[arg] < 0)
    for (double& x : f) x = -x;
}

}  // namespace

Spectrum decompose(const ConnectionMatrix& J, Eigensolver method) {
  const std::size_t n = J.size();
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  if (method == Eigensolver::kTridiagonalQR) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(to_eigen(J)));
    if (solver.info() != Eigen::Success)
      throw SolverError("symmetric eigensolver failed to converge", std::nan(""));
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  } else {
    Eigen::MatrixXd a = to_eigen(J);
    if (!jacobi_diagonalize(a, vectors, Spectrum::kJacobiSweepBudget)) {
      double off = 0.0;
      for (Eigen::Index p = 0; p < a.rows(); ++p)
        for (Eigen::Index q = p + 1; q < a.rows(); ++q) off = std::max(off, std::abs(a(p, q)));
      throw SolverError("Jacobi eigensolver exceeded its sweep budget", off);
    }
    values = a.diagonal();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values(static_cast<Eigen::Index>(a)) >
                                                              values(static_cast<Eigen::Index>(b)); });
  std::vector<double> sorted_values(n);
  std::vector<double> sorted_vectors(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto col = static_cast<Eigen::Index>(order[r]);
    sorted_values[r] = values(col);
    const double norm = vectors.col(col).norm();
    for (std::size_t i = 0; i < n; ++i)
      sorted_vectors[r * n + i] = vectors(static_cast<Eigen::Index>(i), col) / norm;
    canonicalize_sign({sorted_vectors.data() + r * n, n});
  }

  Spectrum spec(std::move(sorted_values), std::move(sorted_vectors), J.max_abs());
  const double residual = max_residual(J, spec);
  if (residual > spec.residual_tolerance())
    throw SolverError("eigenpairs miss the residual tolerance", residual);
  const double ortho = max_orthonormality_error(spec);
  if (ortho > Spectrum::kOrthonormalityTolerance)
    throw SolverError("eigenvectors miss the orthonormality tolerance", ortho);
  return spec;
}

double max_residual(const ConnectionMatrix& J, const Spectrum& spec) {
  const auto n = static_cast<Eigen::Index>(J.size());
  if (spec.size() != J.size()) throw InvalidInput("spectrum and matrix dimensions differ");
  // Row i of F is eigenvector i, so J F^T has eigenvector i in column i.
  Eigen::Map<const Mat> F(spec.eigenvector(0).data(), n, n);
  const Mat JF = to_eigen(J) * F.transpose();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (JF.col(i) - spec.eigenvalue(static_cast<std::size_t>(i)) * F.row(i).transpose()).norm();
    worst = std::max(worst, r);
  }
  return worst;
}

double max_orthonormality_error(const Spectrum& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  Eigen::Map<const Mat> F(spec.eigenvector(0).data(), n, n);
  const Mat gram = F * F.transpose();
  return (gram - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
}

double spectral_energy(const Spectrum& spec, const Configuration& s) {
  const std::size_t n = spec.size();
  if (s.size() != n) throw InvalidInput("configuration and spectrum dimensions differ");
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto f = spec.eigenvector(k);
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += s[i] * f[i];
    total += spec.eigenvalue(k) * proj * proj;
  }
  return -total;
}

double lower_bound(const Spectrum& spec) {
  return -spec.eigenvalue(0) * static_cast<double>(spec.size());
}

Configuration sign_configuration(std::span<const double> f) {
  std::vector<Spin> spins(f.size());
  std::transform(f.begin(), f.end(), spins.begin(), [](double x) { return x < 0 ? Spin{-1} : Spin{1}; });
  return Configuration(std::move(spins));
}

namespace {

// A set of coordinates to flip away from sign(f). `positions` index the
// coordinates sorted by ascending |f_i|; `coords` is the same set as
// original indices, sorted, for tie-breaking.
struct FlipSet {
  double loss = 0.0;
  std::vector<std::size_t> positions;
  std::vector<std::size_t> coords;
};

struct WorseFlipSet {
  bool operator()(const FlipSet& a, const FlipSet& b) const {
    if (a.loss != b.loss) return a.loss > b.loss;
    return a.coords > b.coords;
  }
};

}  // namespace

std::vector<Configuration> closest_configurations(std::span<const double> f, std::size_t k) {
  const std::size_t n = f.size();
  if (n == 0) throw InvalidInput("closest_configurations: empty vector");
  if (k == 0) throw InvalidInput("closest_configurations: k must be positive");
  if (n < 64 && k > (std::uint64_t{1} << n))
    throw InvalidInput("closest_configurations: k = " + std::to_string(k) + " exceeds 2^" +
                       std::to_string(n) + " configurations");
  double norm2 = 0.0;
  for (double x : f) {
    if (!std::isfinite(x)) throw InvalidInput("closest_configurations: non-finite coordinate");
    norm2 += x * x;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6)
    throw InvalidInput("closest_configurations: vector must have unit norm");

  // Ascending |f_i|, ties by index.
  std::vector<std::size_t> by_magnitude(n);
  std::iota(by_magnitude.begin(), by_magnitude.end(), 0);
  std::stable_sort(by_magnitude.begin(), by_magnitude.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(f[a]) < std::abs(f[b]); });

  const Configuration base = sign_configuration(f);

  auto make = [&](std::vector<std::size_t> positions) {
    FlipSet s;
    for (std::size_t p : positions) {
      s.loss += std::abs(f[by_magnitude[p]]);
      s.coords.push_back(by_magnitude[p]);
    }
    std::sort(s.coords.begin(), s.coords.end());
    s.positions = std::move(positions);
    return s;
  };

  // Every subset is reached exactly once: from a set whose largest position
  // is m, either append m+1 or replace m by m+1. Neither move lowers
  // (loss, coords), so popping in heap order is exact.
  std::priority_queue<FlipSet, std::vector<FlipSet>, WorseFlipSet> heap;
  heap.push(FlipSet{});
  std::vector<Configuration> out;
  out.reserve(k);
  while (out.size() < k) {
    FlipSet top = heap.top();
    heap.pop();

    std::vector<Spin> spins(base.spins().begin(), base.spins().end());
    for (std::size_t c : top.coords) spins[c] = static_cast<Spin>(-spins[c]);
    out.emplace_back(std::move(spins));

    const std::size_t next = top.positions.empty() ? 0 : top.positions.back() + 1;
    if (next >= n) continue;
    auto grow = top.positions;
    grow.push_back(next);
    heap.push(make(std::move(grow)));
    if (!top.positions.empty()) {
      auto shift = top.positions;
      shift.back() = next;
      heap.push(make(std::move(shift)));
    }
  }
  return out;
}

std::string Selection::label() const {
  switch (policy) {
    case SelectionPolicy::kPositive: return "a";
    case SelectionPolicy::kTopM: return "b" + std::to_string(m);
    case SelectionPolicy::kLargest: return "c";
  }
  return "?";
}

std::vector<std::size_t> select_eigenvectors(const Spectrum& spec, Selection selection) {
  std::size_t count = 0;
  switch (selection.policy) {
    case SelectionPolicy::kPositive: count = spec.positive_count(); break;
    case SelectionPolicy::kTopM: count = std::min(selection.m, spec.size()); break;
    case SelectionPolicy::kLargest: count = spec.size() > 0 ? 1 : 0; break;
  }
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

StartSet build_start_set(const Spectrum& spec, std::size_t k_per_vector, Selection selection) {
  if (k_per_vector == 0) throw InvalidInput("build_start_set: k must be positive");
  const std::size_t n = spec.size();
  std::size_t k = k_per_vector;
  if (n < 64) k = static_cast<std::size_t>(std::min<std::uint64_t>(k, std::uint64_t{1} << n));

  StartSet set;
  const auto chosen = select_eigenvectors(spec, selection);
  set.empty_selection = chosen.empty();
  std::set<Configuration> seen;
  for (std::size_t idx : chosen) {
    const auto candidates = closest_configurations(spec.eigenvector(idx), k);
    for (std::size_t rank = 0; rank < candidates.size(); ++rank) {
      if (!seen.insert(candidates[rank]).second) continue;
      set.starts.push_back(candidates[rank]);
      set.provenance.push_back({idx, rank});
    }
  }
  return set;
}

}  // namespace spinmin
