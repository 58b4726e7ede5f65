#include "spinmin/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "spinmin/generators.hpp"
#include "spinmin/matrix_io.hpp"
#include "spinmin/serialize.hpp"
#include "spinmin/spectral.hpp"

namespace spinmin {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || v == 0)
    throw InvalidInput("strategy parameter " + key + " must be a positive integer, got '" + value + "'");
  return v;
}

char policy_letter(SelectionPolicy p) {
  switch (p) {
    case SelectionPolicy::kPositive: return 'a';
    case SelectionPolicy::kTopM: return 'b';
    case SelectionPolicy::kLargest: return 'c';
  }
  return '?';
}

SelectionPolicy policy_from_letter(const std::string& s) {
  if (s == "a") return SelectionPolicy::kPositive;
  if (s == "b") return SelectionPolicy::kTopM;
  if (s == "c") return SelectionPolicy::kLargest;
  throw InvalidInput("unknown eigenvector policy '" + s + "' (expected a, b or c)");
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::string StrategySpec::label() const {
  if (kind == StrategyKind::kRandom)
    return "random-" + (restarts ? std::to_string(*restarts) : std::string("n"));
  if (kind == StrategyKind::kExhaustive) return "exhaustive";
  std::string out = "spectral-";
  out += policy_letter(spectral.selection.policy);
  if (spectral.selection.policy == SelectionPolicy::kTopM)
    out += top_m ? std::to_string(*top_m) : std::string("p");
  return out + "-k" + std::to_string(spectral.k_per_vector);
}

StrategySpec StrategySpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  StrategySpec s;
  if (name == "spectral")
    s.kind = StrategyKind::kSpectral;
  else if (name == "random")
    s.kind = StrategyKind::kRandom;
  else
    throw InvalidInput("unknown strategy '" + name + "' (expected spectral or random)");
  if (colon == std::string::npos) return s;

  for (const auto& item : split(text.substr(colon + 1), ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("strategy parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (s.kind == StrategyKind::kSpectral && key == "policy") {
      s.spectral.selection.policy = policy_from_letter(value);
    } else if (s.kind == StrategyKind::kSpectral && key == "k") {
      s.spectral.k_per_vector = parse_count(key, value);
    } else if (s.kind == StrategyKind::kSpectral && key == "m") {
      if (value != "p") s.top_m = parse_count(key, value);
    } else if (s.kind == StrategyKind::kRandom && key == "restarts") {
      if (value != "n") s.restarts = parse_count(key, value);
    } else {
      throw InvalidInput("unknown parameter '" + key + "' for strategy " + name);
    }
  }
  return s;
}

void validate(const ExperimentSpec& spec, std::size_t cap) {
  const auto& e = spec.ensemble;
  if (e.n < 2) throw InvalidInput("ensemble dimension n must be at least 2");
  if (spec.trials == 0) throw InvalidInput("trials must be at least 1");
  if (spec.strategies.empty()) throw InvalidInput("at least one strategy is required");
  if (e.kind == EnsembleKind::kUniform && !(e.bound > 0 && std::isfinite(e.bound)))
    throw InvalidInput("uniform bound must be positive");
  if (e.kind == EnsembleKind::kHebb && e.p == 0) throw InvalidInput("hebb ensemble needs p >= 1");
  if (spec.dynamics.max_sweeps && *spec.dynamics.max_sweeps == 0)
    throw InvalidInput("max_sweeps must be at least 1");
  for (const auto& s : spec.strategies) {
    if (s.kind == StrategyKind::kExhaustive) throw InvalidInput("use the oracle flag for exhaustive search");
    if (s.kind == StrategyKind::kSpectral && s.spectral.selection.policy == SelectionPolicy::kTopM &&
        !s.top_m && e.kind != EnsembleKind::kHebb)
      throw InvalidInput("policy b needs m=<count> outside the hebb ensemble");
  }
  if (spec.oracle && e.n > cap)
    throw InfeasibleSpec("oracle requested for n = " + std::to_string(e.n) +
                         " above the exhaustive cap of " + std::to_string(cap));
}

json to_json(const ExperimentSpec& spec) {
  json ensemble = {{"kind", spec.ensemble.kind == EnsembleKind::kUniform ? "uniform" : "hebb"},
                   {"n", spec.ensemble.n}};
  if (spec.ensemble.kind == EnsembleKind::kUniform)
    ensemble["bound"] = spec.ensemble.bound;
  else
    ensemble["p"] = spec.ensemble.p;

  json strategies = json::array();
  for (const auto& s : spec.strategies) {
    json js = {{"kind", to_string(s.kind)}, {"label", s.label()}};
    if (s.kind == StrategyKind::kSpectral) {
      js["policy"] = std::string(1, policy_letter(s.spectral.selection.policy));
      js["k"] = s.spectral.k_per_vector;
      if (s.spectral.selection.policy == SelectionPolicy::kTopM)
        js["m"] = s.top_m ? json(*s.top_m) : json("p");
    } else {
      js["restarts"] = s.restarts ? json(*s.restarts) : json("n");
    }
    strategies.push_back(std::move(js));
  }
  json dynamics = {
      {"order", spec.dynamics.order == UpdateOrder::kSequential ? "sequential" : "random-permutation"},
      {"order_seed", spec.dynamics.order_seed}};
  dynamics["max_sweeps"] = spec.dynamics.max_sweeps ? json(*spec.dynamics.max_sweeps) : json(nullptr);
  return {{"ensemble", ensemble},
          {"trials", spec.trials},
          {"strategies", strategies},
          {"master_seed", spec.master_seed},
          {"oracle", spec.oracle},
          {"dynamics", dynamics}};
}

ExperimentSpec experiment_from_json(const json& j) {
  try {
    ExperimentSpec spec;
    const auto& e = j.at("ensemble");
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "uniform") {
      spec.ensemble.kind = EnsembleKind::kUniform;
      spec.ensemble.bound = e.value("bound", 4.0);
    } else if (kind == "hebb") {
      spec.ensemble.kind = EnsembleKind::kHebb;
      spec.ensemble.p = e.at("p").get<std::size_t>();
    } else {
      throw InvalidInput("unknown ensemble kind '" + kind + "'");
    }
    spec.ensemble.n = e.at("n").get<std::size_t>();
    spec.trials = j.value("trials", std::size_t{1});
    spec.master_seed = j.value("master_seed", Seed{0});
    spec.oracle = j.value("oracle", false);
    for (const auto& s : j.at("strategies")) {
      if (s.is_string()) {
        spec.strategies.push_back(StrategySpec::parse(s.get<std::string>()));
        continue;
      }
      std::string text = s.at("kind").get<std::string>();
      std::vector<std::string> params;
      auto param = [&](const char* key) {
        if (!s.contains(key)) return;
        const auto& v = s.at(key);
        params.push_back(std::string(key) + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
      };
      param("policy");
      param("k");
      param("m");
      param("restarts");
      for (std::size_t i = 0; i < params.size(); ++i) text += (i ? "," : ":") + params[i];
      spec.strategies.push_back(StrategySpec::parse(text));
    }
    if (j.contains("dynamics")) {
      const auto& d = j.at("dynamics");
      const std::string order = d.value("order", std::string("sequential"));
      if (order == "sequential")
        spec.dynamics.order = UpdateOrder::kSequential;
      else if (order == "random-permutation")
        spec.dynamics.order = UpdateOrder::kRandomPermutation;
      else
        throw InvalidInput("unknown update order '" + order + "'");
      spec.dynamics.order_seed = d.value("order_seed", Seed{0});
      if (d.contains("max_sweeps") && !d.at("max_sweeps").is_null())
        spec.dynamics.max_sweeps = d.at("max_sweeps").get<std::size_t>();
    }
    return spec;
  } catch (const json::exception& ex) {
    throw InvalidInput(std::string("malformed experiment spec: ") + ex.what());
  }
}

TrialRecord run_trial(const ExperimentSpec& spec, std::size_t trial_index) {
  using clock = std::chrono::steady_clock;
  TrialRecord rec;
  rec.index = trial_index;
  rec.matrix_seed = derive_seed(spec.master_seed, trial_index, 0);

  const auto& e = spec.ensemble;
  ConnectionMatrix J;
  std::optional<PatternSet> patterns;
  if (e.kind == EnsembleKind::kUniform) {
    J = gen_uniform(e.n, e.bound, rec.matrix_seed);
  } else {
    patterns = gen_patterns(e.n, e.p, rec.matrix_seed);
    J = gen_hebb(*patterns);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& xi : patterns->patterns) lowest = std::min(lowest, energy(J, xi));
    rec.pattern_energy = lowest;
  }
  const double tol = energy_tolerance(J);
  rec.energy_tolerance = tol;

  if (spec.oracle) {
    const auto oracle = solve_exhaustive(J, std::numeric_limits<std::size_t>::max());
    rec.oracle_energy = oracle.best_energy;
    rec.oracle_degeneracy = oracle.degeneracy;
  }

  std::optional<Spectrum> spectrum;
  double decomposition_ms = 0.0;
  const bool needs_spectrum = std::any_of(spec.strategies.begin(), spec.strategies.end(),
                                          [](const auto& s) { return s.kind == StrategyKind::kSpectral; });
  if (needs_spectrum) {
    const auto t0 = clock::now();
    spectrum.emplace(decompose(J));
    decomposition_ms = elapsed_ms(t0);
    rec.lower_bound = lower_bound(*spectrum);
    rec.positive_eigenvalues = spectrum->positive_count();
  }

  for (std::size_t si = 0; si < spec.strategies.size(); ++si) {
    const auto& s = spec.strategies[si];
    DynamicsConfig cfg = spec.dynamics;
    cfg.order_seed = derive_seed(rec.matrix_seed ^ spec.dynamics.order_seed, si, 3);

    const auto t0 = clock::now();
    SolveOutcome outcome;
    if (s.kind == StrategyKind::kSpectral) {
      SpectralParams params = s.spectral;
      if (params.selection.policy == SelectionPolicy::kTopM) params.selection.m = s.top_m.value_or(e.p);
      outcome = solve_spectral(J, *spectrum, params, cfg);
    } else {
      outcome = solve_random(J, s.restarts.value_or(e.n), derive_seed(rec.matrix_seed, si, 2), cfg);
    }
    StrategyRecord r;
    r.wall_ms = elapsed_ms(t0) + (s.kind == StrategyKind::kSpectral ? decomposition_ms : 0.0);
    r.label = s.label();
    r.kind = s.kind;
    r.best_energy = outcome.best_energy;
    r.sweeps = outcome.total_sweeps();
    r.flips = outcome.total_flips();
    r.starts = outcome.runs.size();
    r.work_estimate = outcome.work_estimate;
    r.best_eigen_index = outcome.best_eigen_index();
    r.warnings = outcome.warnings;
    if (rec.oracle_energy) r.found_global = reaches(r.best_energy, *rec.oracle_energy, tol);
    if (rec.pattern_energy) r.reached_pattern_energy = r.best_energy <= *rec.pattern_energy + tol;
    rec.strategies.push_back(std::move(r));
  }

  const auto reference = std::find_if(rec.strategies.begin(), rec.strategies.end(),
                                      [](const auto& r) { return r.kind == StrategyKind::kRandom; });
  if (reference != rec.strategies.end()) {
    for (auto& r : rec.strategies) {
      if (r.kind != StrategyKind::kSpectral) continue;
      r.verdict = classify(r.best_energy, reference->best_energy, tol);
      r.gap = reference->best_energy - r.best_energy;
    }
  }
  return rec;
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("JOBS_DEFAULT")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentReport run_experiment(const ExperimentSpec& spec, std::size_t jobs) {
  validate(spec);
  ExperimentReport report;
  report.spec = spec;
  report.trials.resize(spec.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < spec.trials; t = next++) {
      try {
        report.trials[t] = run_trial(spec, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = spec.trials;
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, spec.trials);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.aggregates = aggregate(csv_rows(report));
  return report;
}

std::vector<CsvRow> csv_rows(const ExperimentReport& report) {
  std::vector<CsvRow> rows;
  for (const auto& t : report.trials)
    for (const auto& s : t.strategies)
      rows.push_back({t.index, t.matrix_seed, s.label, s.best_energy, t.oracle_energy, s.found_global,
                      s.verdict, s.sweeps, s.flips, s.wall_ms});
  return rows;
}

Proportion wilson(std::size_t successes, std::size_t total) {
  Proportion p;
  p.successes = successes;
  p.total = total;
  if (total == 0) return p;
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(total);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  p.value = phat;
  p.ci_low = std::max(0.0, center - half);
  p.ci_high = std::min(1.0, center + half);
  return p;
}

Aggregates aggregate(const std::vector<CsvRow>& rows) {
  Aggregates out;
  std::vector<std::string> labels;
  for (const auto& r : rows)
    if (std::find(labels.begin(), labels.end(), r.strategy) == labels.end()) labels.push_back(r.strategy);

  // First random row of each trial is the comparison reference.
  std::map<std::size_t, double> reference;
  for (const auto& r : rows)
    if (r.strategy.rfind("random", 0) == 0) reference.emplace(r.trial_index, r.best_energy);

  for (const auto& label : labels) {
    StrategyAggregate a;
    a.label = label;
    double energy_sum = 0.0;
    std::size_t global_hits = 0, global_total = 0;
    double gap_sum = 0.0;
    std::size_t gap_count = 0;
    for (const auto& r : rows) {
      if (r.strategy != label) continue;
      ++a.trials;
      energy_sum += r.best_energy;
      if (r.found_global) {
        ++global_total;
        global_hits += *r.found_global ? 1 : 0;
      }
      if (r.win_flag) {
        switch (*r.win_flag) {
          case Verdict::kWin: ++a.wins; break;
          case Verdict::kTie: ++a.ties; break;
          case Verdict::kLoss: ++a.losses; break;
        }
        if (auto it = reference.find(r.trial_index); it != reference.end()) {
          gap_sum += it->second - r.best_energy;
          ++gap_count;
        }
      }
    }
    a.mean_best_energy = energy_sum / static_cast<double>(a.trials);
    if (global_total) a.p_global = wilson(global_hits, global_total);
    if (a.wins + a.ties + a.losses) a.win_probability = wilson(a.wins, a.wins + a.ties + a.losses);
    if (gap_count) a.mean_gap = gap_sum / static_cast<double>(gap_count);
    out.strategies.push_back(std::move(a));
  }
  return out;
}

namespace {

json to_json(const Proportion& p) {
  return {{"successes", p.successes}, {"total", p.total}, {"value", p.value},
          {"ci95_low", p.ci_low}, {"ci95_high", p.ci_high}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const Aggregates& aggregates) {
  json list = json::array();
  for (const auto& a : aggregates.strategies) {
    json j = {{"label", a.label}, {"trials", a.trials}, {"mean_best_energy", a.mean_best_energy}};
    j["p_global"] = a.p_global ? to_json(*a.p_global) : json(nullptr);
    if (a.win_probability) {
      j["wins"] = a.wins;
      j["ties"] = a.ties;
      j["losses"] = a.losses;
      j["win_probability"] = to_json(*a.win_probability);
    } else {
      j["win_probability"] = nullptr;
    }
    j["mean_gap"] = optional_json(a.mean_gap);
    list.push_back(std::move(j));
  }
  return {{"strategies", list}};
}

namespace {

std::string format_optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool include_timing) {
  out << kCsvHeader << '\n';
  char wall[64];
  for (const auto& r : rows) {
    out << r.trial_index << ',' << r.matrix_seed << ',' << r.strategy << ',' << format_real(r.best_energy)
        << ',' << format_optional_real(r.oracle_energy) << ','
        << (r.found_global ? (*r.found_global ? "1" : "0") : "") << ','
        << (r.win_flag ? to_string(*r.win_flag) : "") << ',' << r.sweeps << ',' << r.flips << ',';
    if (include_timing && r.wall_ms) {
      std::snprintf(wall, sizeof(wall), "%.3f", *r.wall_ms);
      out << wall;
    }
    out << '\n';
  }
}

namespace {

template <class T>
T parse_number(const std::string& tok, std::size_t line, const char* column) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, std::string("bad ") + column + " value '" + tok + "'");
  return value;
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string text;
  std::size_t line = 1;
  if (!std::getline(in, text)) throw ParseError(0, "empty CSV");
  if (!text.empty() && text.back() == '\r') text.pop_back();
  if (text != kCsvHeader) throw ParseError(1, "unexpected CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    const auto cells = split(text, ',');
    if (cells.size() != 10) throw ParseError(line, "expected 10 columns, got " + std::to_string(cells.size()));
    CsvRow r;
    r.trial_index = parse_number<std::size_t>(cells[0], line, "trial_index");
    r.matrix_seed = parse_number<Seed>(cells[1], line, "matrix_seed");
    r.strategy = cells[2];
    r.best_energy = parse_number<double>(cells[3], line, "best_energy");
    if (!cells[4].empty()) r.oracle_energy = parse_number<double>(cells[4], line, "oracle_energy");
    if (cells[5] == "1")
      r.found_global = true;
    else if (cells[5] == "0")
      r.found_global = false;
    else if (!cells[5].empty())
      throw ParseError(line, "bad found_global value '" + cells[5] + "'");
    if (cells[6] == "win")
      r.win_flag = Verdict::kWin;
    else if (cells[6] == "tie")
      r.win_flag = Verdict::kTie;
    else if (cells[6] == "loss")
      r.win_flag = Verdict::kLoss;
    else if (!cells[6].empty())
      throw ParseError(line, "bad win_flag value '" + cells[6] + "'");
    r.sweeps = parse_number<std::size_t>(cells[7], line, "sweeps");
    r.flips = parse_number<std::size_t>(cells[8], line, "flips");
    if (!cells[9].empty()) r.wall_ms = parse_number<double>(cells[9], line, "wall_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

json report_json(const ExperimentReport& report, bool include_timing) {
  json trials = json::array();
  for (const auto& t : report.trials) {
    json strategies = json::array();
    json timing = json::array();
    for (const auto& s : t.strategies) {
      json js = {{"label", s.label},
                 {"kind", to_string(s.kind)},
                 {"best_energy", s.best_energy},
                 {"found_global", optional_json(s.found_global)},
                 {"sweeps", s.sweeps},
                 {"flips", s.flips},
                 {"starts", s.starts},
                 {"work_estimate", s.work_estimate},
                 {"best_eigen_index", optional_json(s.best_eigen_index)},
                 {"reached_pattern_energy", optional_json(s.reached_pattern_energy)},
                 {"gap", optional_json(s.gap)},
                 {"warnings", s.warnings}};
      js["verdict"] = s.verdict ? json(to_string(*s.verdict)) : json(nullptr);
      strategies.push_back(std::move(js));
      timing.push_back({{"label", s.label}, {"wall_ms", s.wall_ms}});
    }
    json jt = {{"trial_index", t.index},
               {"matrix_seed", t.matrix_seed},
               {"energy_tolerance", t.energy_tolerance},
               {"oracle_energy", optional_json(t.oracle_energy)},
               {"oracle_degeneracy", optional_json(t.oracle_degeneracy)},
               {"pattern_energy", optional_json(t.pattern_energy)},
               {"lower_bound", optional_json(t.lower_bound)},
               {"positive_eigenvalues", optional_json(t.positive_eigenvalues)},
               {"strategies", strategies}};
    if (include_timing) jt["timing"] = timing;
    trials.push_back(std::move(jt));
  }
  json out = {{"schema_version", kSchemaVersion},
              {"spec", to_json(report.spec)},
              {"trials", trials},
              {"aggregates", to_json(report.aggregates)}};
  if (report.spec.ensemble.kind == EnsembleKind::kHebb) out["hebb"] = hebb_summary(report);
  return out;
}

json hebb_summary(const ExperimentReport& report) {
  json out = json::array();
  for (std::size_t si = 0; si < report.spec.strategies.size(); ++si) {
    const std::string label = report.spec.strategies[si].label();
    std::size_t reached = 0, total = 0;
    std::map<std::size_t, std::size_t> best_index;
    for (const auto& t : report.trials) {
      const auto& s = t.strategies.at(si);
      if (s.reached_pattern_energy) {
        ++total;
        reached += *s.reached_pattern_energy ? 1 : 0;
      }
      if (s.best_eigen_index) ++best_index[*s.best_eigen_index];
    }
    json histogram = json::object();
    for (const auto& [idx, count] : best_index) histogram[std::to_string(idx)] = count;
    out.push_back({{"label", label},
                   {"reached_pattern_energy", to_json(wilson(reached, total))},
                   {"best_eigen_index_histogram", histogram}});
  }
  return out;
}

namespace {

void diff_json(const json& expected, const json& actual, const std::string& path,
               std::vector<std::string>& out) {
  if (expected.is_number() && actual.is_number()) {
    const double a = expected.get<double>();
    const double b = actual.get<double>();
    if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}))
      out.push_back(path + ": recomputed " + expected.dump() + ", report has " + actual.dump());
    return;
  }
  if (expected.type() != actual.type()) {
    out.push_back(path + ": recomputed " + expected.dump() + ", report has " + actual.dump());
    return;
  }
  if (expected.is_object()) {
    for (const auto& [key, value] : expected.items()) {
      if (!actual.contains(key))
        out.push_back(path + "/" + key + ": missing from report");
      else
        diff_json(value, actual.at(key), path + "/" + key, out);
    }
  } else if (expected.is_array()) {
    if (expected.size() != actual.size()) {
      out.push_back(path + ": length " + std::to_string(expected.size()) + " vs " + std::to_string(actual.size()));
      return;
    }
    for (std::size_t i = 0; i < expected.size(); ++i)
      diff_json(expected[i], actual[i], path + "/" + std::to_string(i), out);
  } else if (expected != actual) {
    out.push_back(path + ": recomputed " + expected.dump() + ", report has " + actual.dump());
  }
}

}  // namespace

std::vector<std::string> verify_aggregates(const std::vector<CsvRow>& rows, const json& aggregates_json) {
  std::vector<std::string> problems;
  diff_json(to_json(aggregate(rows)), aggregates_json, "", problems);
  return problems;
}

}  // namespace spinmin
