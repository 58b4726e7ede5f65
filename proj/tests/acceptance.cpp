// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spinmin/bench.hpp"
#include "spinmin/dynamics.hpp"
#include "spinmin/generators.hpp"
#include "spinmin/solvers.hpp"
#include "spinmin/spectral.hpp"

using namespace spinmin;

namespace {

int failures = 0;

void report(bool ok, const std::string& id, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const StrategyAggregate& find(const ExperimentReport& r, const std::string& label) {
  for (const auto& a : r.aggregates.strategies)
    if (a.label == label) return a;
  throw std::runtime_error("missing strategy " + label);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void small_n() {
  const double lo_c = 0.70, hi_c = 0.90, lo_a = 0.93, hi_a = 1.00;
  for (std::size_t n : {15u, 16u, 17u}) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentSpec spec;
    spec.ensemble = {EnsembleKind::kUniform, n, 4.0, 0};
    spec.trials = 500;
    spec.master_seed = 1;
    spec.oracle = true;
    spec.strategies = {StrategySpec::parse("spectral:policy=c,k=3"), StrategySpec::parse("spectral:policy=a,k=3")};
    const auto r = run_experiment(spec);
    const double pc = find(r, "spectral-c-k3").p_global->value;
    const double pa = find(r, "spectral-a-k3").p_global->value;
    report(pc >= lo_c && pc <= hi_c && pa >= lo_a && pa <= hi_a, fmt("1 small-N n=%zu", n),
           fmt("500 trials, P_global policy c = %.3f in [%.2f, %.2f], policy a = %.3f in [%.2f, %.2f] (%.1fs)", pc,
               lo_c, hi_c, pa, lo_a, hi_a, seconds_since(t0)));
  }
}

void large_n() {
  const double tol = 0.10;
  const std::pair<std::size_t, double> points[] = {{100, 0.37}, {200, 0.56}};
  double previous = -1.0;
  bool increasing = true;
  for (const auto& [n, target] : points) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentSpec spec;
    spec.ensemble = {EnsembleKind::kUniform, n, 4.0, 0};
    spec.trials = 200;
    spec.master_seed = 2;
    spec.strategies = {StrategySpec::parse("spectral:policy=a,k=3"), StrategySpec::parse("random:restarts=n")};
    const auto r = run_experiment(spec);
    const auto& a = find(r, "spectral-a-k3");
    const double w = a.win_probability->value;
    report(std::abs(w - target) <= tol, fmt("2 large-N n=%zu", n),
           fmt("200 trials, win probability %.3f within %.2f of %.2f (wins %zu, ties %zu, losses %zu, %.1fs)", w, tol,
               target, a.wins, a.ties, a.losses, seconds_since(t0)));
    if (w <= previous) increasing = false;
    previous = w;
  }
  report(increasing, "2 large-N trend", "win probability at n=200 exceeds n=100");
}

void hebb() {
  const std::size_t n = 500, p = 10, trials = 50;
  const double threshold = 0.90;
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentSpec spec;
  spec.ensemble = {EnsembleKind::kHebb, n, 4.0, p};
  spec.trials = trials;
  spec.master_seed = 3;
  spec.strategies = {StrategySpec::parse("spectral:policy=b,m=p,k=3")};
  const auto r = run_experiment(spec);
  std::size_t reached = 0;
  for (const auto& t : r.trials) reached += *t.strategies[0].reached_pattern_energy ? 1 : 0;
  const double rate = static_cast<double>(reached) / static_cast<double>(trials);
  report(rate >= threshold, "3 Hebb n=500 p=10",
         fmt("%zu trials, best energy <= lowest stored-pattern energy in %.3f of trials, need >= %.2f (%.1fs)", trials,
             rate, threshold, seconds_since(t0)));

  // Diagnostic: how often the search ends exactly on some stored pattern.
  std::size_t on_pattern = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto set = gen_patterns(n, p, derive_seed(spec.master_seed, t, 0));
    const auto o = solve_spectral(gen_hebb(set), {3, Selection::top(p)});
    for (const auto& xi : set.patterns) {
      long dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += o.best_state[i] * xi[i];
      if (static_cast<std::size_t>(std::labs(dot)) == n) {
        ++on_pattern;
        break;
      }
    }
  }
  std::printf("     note: best state equals a stored pattern (up to sign) in %zu of %zu trials\n", on_pattern, trials);
}

void eq4_identity() {
  std::mt19937_64 gen(401);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + gen() % 40;
    const auto J = oracle::random_symmetric(n, gen);
    const auto s = oracle::random_configuration(n, gen);
    const double diff = std::abs(spectral_energy(decompose(J), s) - energy(J, s));
    if (diff > static_cast<double>(n) * J.max_abs() * 1e-9) ++bad;
  }
  report(bad == 0, "4a spectral energy identity", fmt("1000 random (J, s) pairs, %d violations", bad));
}

void lower_bound_property() {
  std::mt19937_64 gen(402);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 11;
    const auto J = oracle::random_symmetric(n, gen);
    if (oracle::min_energy(J) < lower_bound(decompose(J)) - energy_tolerance(J)) ++bad;
  }
  report(bad == 0, "4b lower bound", fmt("200 random instances n <= 12, %d violations", bad));
}

void descent() {
  std::mt19937_64 gen(403);
  int bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 2 + gen() % 40;
    const auto J = oracle::random_symmetric(n, gen);
    DynamicsConfig c;
    c.record_trace = true;
    c.order = t % 2 ? UpdateOrder::kRandomPermutation : UpdateOrder::kSequential;
    c.order_seed = gen();
    const auto r = relax(J, oracle::random_configuration(n, gen), c);
    bool ok = is_fixed_point(J, r.final_state) && r.final_energy == energy(J, r.final_state);
    for (std::size_t i = 1; i < r.energy_trace.size(); ++i) ok = ok && r.energy_trace[i] < r.energy_trace[i - 1];
    if (!ok) ++bad;
  }
  report(bad == 0, "4c monotone descent", fmt("10000 relaxations, %d violations", bad));
}

void fixed_points() {
  std::mt19937_64 gen(404);
  int bad = 0;
  const auto all = oracle::all_configurations(8);
  for (int t = 0; t < 50; ++t) {
    const auto J = oracle::random_symmetric(8, gen);
    for (const auto& s : all)
      if (is_fixed_point(J, s) != oracle::is_local_minimum(J, s)) ++bad;
  }
  report(bad == 0, "4d fixed points are local minima", fmt("50 instances n=8, all 256 states each, %d mismatches", bad));
}

void closest() {
  std::mt19937_64 gen(405);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + gen() % 10;
    const std::size_t k = std::min<std::size_t>(1 + gen() % 8, std::size_t{1} << n);
    const auto f = oracle::random_unit(n, gen);
    const auto got = closest_configurations(f, k);
    const auto expect = oracle::top_overlaps(f, k);
    bool ok = got.size() == k;
    for (std::size_t i = 0; ok && i < k; ++i) ok = std::abs(oracle::overlap(got[i], f) - expect[i]) <= 1e-12;
    if (!ok) ++bad;
  }
  report(bad == 0, "4e closest configurations", fmt("100 unit vectors n <= 10, k <= 8, %d mismatches", bad));
}

void transformations() {
  std::mt19937_64 gen(406);
  const auto all = oracle::all_configurations(4);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int sym_bad = 0, diag_bad = 0, lin_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const auto A = oracle::random_raw(4, gen, false);
    const auto sym = symmetrize(A);
    const double tol = 1e-12 * 16 * 4.0;
    for (const auto& s : all)
      if (std::abs(oracle::form(A, s) - (energy(sym.matrix, s) + sym.energy_offset())) > tol) ++sym_bad;

    std::vector<double> d(4);
    for (auto& x : d) x = u(gen);
    const auto shifted = shift_diagonal(A, d);
    auto argmin = [&](const RawMatrix& M) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < all.size(); ++i)
        if (oracle::form(M, all[i]) < oracle::form(M, all[best]) - tol) best = i;
      return best;
    };
    if (argmin(A) != argmin(shifted)) ++diag_bad;

    const auto J = oracle::random_symmetric(4, gen);
    std::vector<double> h(4);
    for (auto& x : h) x = u(gen);
    const auto aug = embed_linear_term(J, h);
    for (const auto& s : all) {
      std::vector<Spin> ext(s.spins().begin(), s.spins().end());
      ext.push_back(1);
      double lin = 0;
      for (std::size_t i = 0; i < 4; ++i) lin += h[i] * s[i];
      if (std::abs(oracle::form(aug, Configuration(ext)) - (oracle::form(J, s) - lin)) > tol) ++lin_bad;
    }
  }
  report(sym_bad + diag_bad + lin_bad == 0, "4f transformations",
         fmt("100 instances n=4 exhaustive: symmetrization %d, diagonal shift %d, linear term %d violations", sym_bad,
             diag_bad, lin_bad));
}

std::string csv_of(const ExperimentSpec& spec, std::size_t jobs) {
  std::ostringstream out;
  write_csv(out, csv_rows(run_experiment(spec, jobs)), false);
  return out.str();
}

void determinism() {
  ExperimentSpec uniform;
  uniform.ensemble = {EnsembleKind::kUniform, 14, 4.0, 0};
  uniform.trials = 60;
  uniform.master_seed = 5;
  uniform.oracle = true;
  uniform.strategies = {StrategySpec::parse("spectral:policy=a,k=3"), StrategySpec::parse("spectral:policy=c,k=3"),
                        StrategySpec::parse("random:restarts=n")};
  uniform.dynamics.order = UpdateOrder::kRandomPermutation;
  uniform.dynamics.order_seed = 11;

  ExperimentSpec hebb;
  hebb.ensemble = {EnsembleKind::kHebb, 120, 4.0, 4};
  hebb.trials = 10;
  hebb.master_seed = 6;
  hebb.strategies = {StrategySpec::parse("spectral:policy=b,m=p,k=3"), StrategySpec::parse("random:restarts=n")};

  bool ok = true;
  for (const auto& spec : {uniform, hebb}) {
    const auto a = csv_of(spec, 1);
    ok = ok && a == csv_of(spec, 1) && a == csv_of(spec, 4);
  }
  report(ok, "5 determinism", "uniform and Hebb runs repeated with 1 and 4 workers give byte-identical CSV");
}

}  // namespace

int main() {
  small_n();
  large_n();
  hebb();
  eq4_identity();
  lower_bound_property();
  descent();
  fixed_points();
  closest();
  transformations();
  determinism();
  std::printf("%s\n", failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures).c_str());
  return failures == 0 ? 0 : 1;
}
