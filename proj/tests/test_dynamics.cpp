#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "spinmin/dynamics.hpp"

using namespace spinmin;

namespace {

Configuration cfg(std::initializer_list<int> v) {
  std::vector<Spin> s;
  for (int x : v) s.push_back(static_cast<Spin>(x));
  return Configuration(std::move(s));
}

}  // namespace

TEST_CASE("two-spin trace under sequential order") {
  const ConnectionMatrix J(2, {0, 1, 1, 0});
  const auto r = relax(J, cfg({1, -1}));
  CHECK(r.final_state == cfg({-1, -1}));
  CHECK(r.final_energy == -2.0);
  CHECK(r.flips == 1);
  CHECK(r.sweeps == 2);
}

TEST_CASE("a fixed point is returned unchanged after one sweep") {
  const ConnectionMatrix J(2, {0, 1, 1, 0});
  const auto r = relax(J, cfg({1, 1}));
  CHECK(r.final_state == cfg({1, 1}));
  CHECK(r.sweeps == 1);
  CHECK(r.flips == 0);
}

TEST_CASE("is_fixed_point examples") {
  const ConnectionMatrix J(2, {0, 1, 1, 0});
  CHECK(is_fixed_point(J, cfg({1, 1})));
  CHECK_FALSE(is_fixed_point(J, cfg({1, -1})));
  // Zero field never forces a flip.
  const ConnectionMatrix zero(3, std::vector<double>(9, 0.0));
  CHECK(is_fixed_point(zero, cfg({1, -1, 1})));
  CHECK_THROWS_AS(is_fixed_point(J, cfg({1})), InvalidInput);
}

TEST_CASE("relaxation results are self-consistent") {
  std::mt19937_64 gen(1);
  const auto J = oracle::random_symmetric(10, gen);
  for (int t = 0; t < 100; ++t) {
    const auto r = relax(J, oracle::random_configuration(10, gen));
    CHECK(r.final_energy == energy(J, r.final_state));
    CHECK(is_fixed_point(J, r.final_state));
    const auto h = local_fields(J, r.final_state);
    for (std::size_t i = 0; i < 10; ++i) CHECK(r.final_state[i] * h[i] >= 0.0);
  }
}

TEST_CASE("fixed points are exactly the 1-flip local minima") {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 10; ++t) {
    const auto J = oracle::random_symmetric(8, gen);
    for (const auto& s : oracle::all_configurations(8)) CHECK(is_fixed_point(J, s) == oracle::is_local_minimum(J, s));
  }
}

TEST_CASE("energy trace descends strictly and each flip costs -4|h|") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + gen() % 30;
    const auto J = oracle::random_symmetric(n, gen);
    DynamicsConfig c;
    c.record_trace = true;
    c.order = t % 2 ? UpdateOrder::kRandomPermutation : UpdateOrder::kSequential;
    c.order_seed = gen();
    const auto start = oracle::random_configuration(n, gen);
    const auto r = relax(J, start, c);
    REQUIRE(r.energy_trace.size() == r.flips + 1);
    CHECK(r.energy_trace.front() == doctest::Approx(energy(J, start)));
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i) CHECK(r.energy_trace[i] < r.energy_trace[i - 1]);
    CHECK(r.energy_trace.back() == doctest::Approx(r.final_energy).epsilon(1e-12));
  }
}

TEST_CASE("single flip energy change equals -4|h_i| when h_i opposes s_i") {
  std::mt19937_64 gen(4);
  for (int t = 0; t < 200; ++t) {
    const auto J = oracle::random_symmetric(12, gen);
    const auto s = oracle::random_configuration(12, gen);
    const auto h = local_fields(J, s);
    for (std::size_t i = 0; i < 12; ++i) {
      if (s[i] * h[i] >= 0) continue;
      const double delta = oracle::form(J, s.with_flip(i)) - oracle::form(J, s);
      CHECK(delta == doctest::Approx(-4.0 * std::abs(h[i])).epsilon(1e-10));
    }
  }
}

TEST_CASE("random update order is reproducible from its seed") {
  std::mt19937_64 gen(5);
  const auto J = oracle::random_symmetric(40, gen);
  const auto start = oracle::random_configuration(40, gen);
  DynamicsConfig c;
  c.order = UpdateOrder::kRandomPermutation;
  c.order_seed = 77;
  const auto a = relax(J, start, c);
  const auto b = relax(J, start, c);
  CHECK(a.final_state == b.final_state);
  CHECK(a.flips == b.flips);
  CHECK(is_fixed_point(J, a.final_state));
}

TEST_CASE("sweep budget") {
  const ConnectionMatrix J(2, {0, 1, 1, 0});
  DynamicsConfig zero;
  zero.max_sweeps = 0;
  CHECK_THROWS_AS(relax(J, cfg({1, 1}), zero), InvalidInput);

  DynamicsConfig one;
  one.max_sweeps = 1;
  try {
    relax(J, cfg({1, -1}), one);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_state() == cfg({-1, -1}));
    CHECK(e.best_energy() == -2.0);
  }
}

TEST_CASE("relaxation terminates on large random batches") {
  std::mt19937_64 gen(6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 60;
    const auto J = oracle::random_symmetric(n, gen);
    const auto r = relax(J, oracle::random_configuration(n, gen));
    CHECK(r.sweeps <= 10 * n);
  }
}
