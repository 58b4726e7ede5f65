#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinmin/core.hpp"

using namespace spinmin;

namespace {

ConnectionMatrix pair_matrix(double c) { return ConnectionMatrix(2, {0, c, c, 0}); }

Configuration cfg(std::initializer_list<int> v) {
  std::vector<Spin> s;
  for (int x : v) s.push_back(static_cast<Spin>(x));
  return Configuration(std::move(s));
}

}  // namespace

TEST_CASE("configuration rejects non-spin values") {
  CHECK_THROWS_AS(Configuration(std::vector<Spin>{1, 0}), InvalidInput);
  CHECK_THROWS_AS(Configuration(std::vector<Spin>{2}), InvalidInput);
  CHECK(Configuration::from_mask(3, 0b101) == cfg({-1, 1, -1}));
  CHECK(cfg({1, -1}).negated() == cfg({-1, 1}));
}

TEST_CASE("connection matrix invariants are enforced") {
  CHECK_THROWS_AS(ConnectionMatrix(2, {0, 1, 2, 0}), InvalidInput);
  CHECK_THROWS_AS(ConnectionMatrix(2, {1, 0, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(ConnectionMatrix(2, {0, NAN, NAN, 0}), InvalidInput);
  CHECK_THROWS_AS(ConnectionMatrix(2, {0, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(RawMatrix(1, {INFINITY}), InvalidInput);
  CHECK(pair_matrix(-3.0).max_abs() == 3.0);
}

TEST_CASE("energy of small hand-computed cases") {
  const auto J = pair_matrix(1.0);
  CHECK(energy(J, cfg({1, 1})) == -2.0);
  CHECK(energy(J, cfg({1, -1})) == 2.0);

  const ConnectionMatrix zero(3, std::vector<double>(9, 0.0));
  for (const auto& s : oracle::all_configurations(3)) CHECK(energy(zero, s) == 0.0);

  CHECK_THROWS_AS(energy(J, cfg({1, 1, 1})), InvalidInput);
}

TEST_CASE("energy is even under global flip") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const auto J = oracle::random_symmetric(9, gen);
    const auto s = oracle::random_configuration(9, gen);
    CHECK(energy(J, s) == energy(J, s.negated()));
  }
}

TEST_CASE("symmetrize examples") {
  SUBCASE("upper-triangular input") {
    const auto r = symmetrize(RawMatrix(2, {0, 2, 0, 0}));
    CHECK(r.matrix(0, 1) == 1.0);
    CHECK(r.matrix(1, 0) == 1.0);
    CHECK(r.dropped_diagonal == std::vector<double>{0, 0});
  }
  SUBCASE("already symmetric, zero diagonal") {
    const RawMatrix a(3, {0, 1.5, -2, 1.5, 0, 0.25, -2, 0.25, 0});
    const auto r = symmetrize(a);
    CHECK(std::vector<double>(r.matrix.entries().begin(), r.matrix.entries().end()) ==
          std::vector<double>(a.entries().begin(), a.entries().end()));
  }
  SUBCASE("diagonal-only input") {
    const auto r = symmetrize(RawMatrix(2, {5, 0, 0, -3}));
    for (double x : r.matrix.entries()) CHECK(x == 0.0);
    CHECK(r.dropped_diagonal == std::vector<double>{5, -3});
    CHECK(r.energy_offset() == -2.0);
  }
}

TEST_CASE("symmetrization preserves the quadratic form") {
  std::mt19937_64 gen(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 25; ++t) {
      const auto A = oracle::random_raw(n, gen, true);
      const auto J = symmetrize(A).matrix;
      for (const auto& s : oracle::all_configurations(n))
        CHECK(energy(J, s) == doctest::Approx(oracle::form(A, s)).epsilon(1e-12));
    }
  }
  for (int t = 0; t < 50; ++t) {
    const auto A = oracle::random_raw(20, gen, true);
    const auto J = symmetrize(A).matrix;
    const auto s = oracle::random_configuration(20, gen);
    CHECK(energy(J, s) == doctest::Approx(oracle::form(A, s)).epsilon(1e-12));
  }
}

TEST_CASE("nonzero diagonal contributes the recorded constant offset") {
  std::mt19937_64 gen(6);
  const auto A = oracle::random_raw(4, gen, false);
  const auto sym = symmetrize(A);
  for (const auto& s : oracle::all_configurations(4))
    CHECK(energy(sym.matrix, s) + sym.energy_offset() == doctest::Approx(quadratic_energy(A, s)));
}

TEST_CASE("shift_diagonal examples") {
  const RawMatrix a(2, {0, 1, 2, 0});
  const auto same = shift_diagonal(a, std::vector<double>{0, 0});
  CHECK(std::vector<double>(same.entries().begin(), same.entries().end()) == std::vector<double>{0, 1, 2, 0});

  const auto id = shift_diagonal(RawMatrix::zeros(2), std::vector<double>{1, 1});
  CHECK(std::vector<double>(id.entries().begin(), id.entries().end()) == std::vector<double>{1, 0, 0, 1});

  std::mt19937_64 gen(3);
  const auto r = oracle::random_raw(5, gen, false);
  const std::vector<double> d{0.5, -1, 2, 0, 3};
  const auto shifted = shift_diagonal(r, d);
  for (std::size_t i = 0; i < 5; ++i) CHECK(shifted(i, i) == r(i, i) + d[i]);

  CHECK_THROWS_AS(shift_diagonal(a, std::vector<double>{1}), InvalidInput);
}

TEST_CASE("diagonal shift leaves energy differences and argmin unchanged") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int t = 0; t < 50; ++t) {
    const auto J = oracle::random_symmetric(4, gen);
    std::vector<double> d(4);
    for (auto& x : d) x = u(gen);
    const auto shifted = shift_diagonal(J.as_raw(), d);
    const auto all = oracle::all_configurations(4);
    for (const auto& s : all)
      for (const auto& r : all)
        CHECK(quadratic_energy(shifted, s) - quadratic_energy(shifted, r) ==
              doctest::Approx(energy(J, s) - energy(J, r)).epsilon(1e-9).scale(100));
  }
}

TEST_CASE("embed_linear_term examples") {
  SUBCASE("one coordinate") {
    const ConnectionMatrix J(1, {0});
    const std::vector<double> h{2};
    const auto aug = embed_linear_term(J, h);
    REQUIRE(aug.size() == 2);
    CHECK(aug(0, 1) == 1.0);
    CHECK(aug(1, 0) == 1.0);
    CHECK(energy(aug, cfg({1, 1})) == -2.0);
    CHECK(energy(aug, cfg({1, 1})) == energy(J, cfg({1})) - 2.0);
  }
  SUBCASE("zero linear term isolates the extra coordinate") {
    std::mt19937_64 gen(1);
    const auto J = oracle::random_symmetric(3, gen);
    const auto aug = embed_linear_term(J, std::vector<double>(3, 0.0));
    for (std::size_t i = 0; i < 4; ++i) CHECK(aug(3, i) == 0.0);
    CHECK(oracle::min_energy(aug) == doctest::Approx(oracle::min_energy(J)));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(embed_linear_term(ConnectionMatrix(2, {0, 1, 1, 0}), std::vector<double>{1}), InvalidInput);
  }
}

TEST_CASE("linear-term embedding identity and minimum agreement") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int t = 0; t < 50; ++t) {
    const auto J = oracle::random_symmetric(4, gen);
    std::vector<double> h(4);
    for (auto& x : h) x = u(gen);
    const auto aug = embed_linear_term(J, h);
    double direct_min = INFINITY, augmented_min = INFINITY;
    for (const auto& s : oracle::all_configurations(4)) {
      double lin = 0;
      for (std::size_t i = 0; i < 4; ++i) lin += h[i] * s[i];
      std::vector<Spin> ext(s.spins().begin(), s.spins().end());
      ext.push_back(1);
      const Configuration sp(ext);
      CHECK(energy(aug, sp) == doctest::Approx(energy(J, s) - lin).epsilon(1e-12));
      CHECK(energy(aug, sp.negated()) == energy(aug, sp));
      CHECK(strip_fictitious(sp.negated()) == s);
      direct_min = std::min(direct_min, energy(J, s) - lin);
    }
    for (const auto& sp : oracle::all_configurations(5)) augmented_min = std::min(augmented_min, energy(aug, sp));
    CHECK(augmented_min == doctest::Approx(direct_min).epsilon(1e-12));
  }
}
