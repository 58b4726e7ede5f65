#include "spinmin/serialize.hpp"

namespace spinmin {

using nlohmann::json;

json to_json(const Configuration& s) {
  json out = json::array();
  for (Spin v : s.spins()) out.push_back(int(v));
  return out;
}

json to_json(const StartSet& starts) {
  json list = json::array();
  for (std::size_t i = 0; i < starts.starts.size(); ++i)
    list.push_back({{"state", to_json(starts.starts[i])},
                    {"eigen_index", starts.provenance[i].eigen_index},
                    {"rank", starts.provenance[i].rank}});
  return {{"starts", list}, {"empty_selection", starts.empty_selection}};
}

json to_json(const SolveOutcome& outcome) {
  json runs = json::array();
  for (const auto& run : outcome.runs) {
    json r = {{"start", to_json(run.start)},
              {"rank", run.rank},
              {"final_state", to_json(run.result.final_state)},
              {"final_energy", run.result.final_energy},
              {"sweeps", run.result.sweeps},
              {"flips", run.result.flips}};
    r["eigen_index"] = run.eigen_index ? json(*run.eigen_index) : json(nullptr);
    runs.push_back(std::move(r));
  }
  json out = {{"schema_version", kSchemaVersion},
              {"strategy", to_string(outcome.strategy)},
              {"label", outcome.label},
              {"n", outcome.best_state.size()},
              {"best_energy", outcome.best_energy},
              {"best_state", to_json(outcome.best_state)},
              {"work_estimate", outcome.work_estimate},
              {"decomposition_work", outcome.decomposition_work},
              {"total_sweeps", outcome.total_sweeps()},
              {"total_flips", outcome.total_flips()},
              {"warnings", outcome.warnings},
              {"runs", runs}};
  out["best_run"] = outcome.best_run ? json(*outcome.best_run) : json(nullptr);
  const auto eig = outcome.best_eigen_index();
  out["best_eigen_index"] = eig ? json(*eig) : json(nullptr);
  if (outcome.strategy == StrategyKind::kExhaustive) out["degeneracy"] = outcome.degeneracy;
  return out;
}

}  // namespace spinmin
