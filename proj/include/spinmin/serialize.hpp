#pragma once

#include "json.hpp"
#include "spinmin/solvers.hpp"
#include "spinmin/spectral.hpp"

namespace spinmin {

inline constexpr const char* kSchemaVersion = "spinmin/1";

nlohmann::json to_json(const Configuration& s);
nlohmann::json to_json(const StartSet& starts);
/// Full outcome including per-run provenance. Contains no timing data.
nlohmann::json to_json(const SolveOutcome& outcome);

}  // namespace spinmin
