#pragma once

#include <string>
#include <vector>

#include "advgame/orchestrator.hpp"

namespace advgame {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One provider declaration. kind selects which of the remaining fields apply:
//   scripted: policy (+ seed), external: host/port/path/timeout_s, replay: file.
struct ModelConfig {
    std::string name;
    std::string kind = "scripted";
    std::string policy = "greedy_cost";
    uint64_t seed = 0;
    std::string host;
    int port = 0;
    std::string path = "/strategy";
    int timeout_s = 120;
    std::string file;
};

struct RunConfig {
    std::vector<GameKind> games;
    std::vector<ModelConfig> models;
    int rounds = 5;
    BudgetConfig budgets;
    std::vector<std::string> opponents;
    int jobs = 1;
};

// Parses the TOML subset the run config uses: scalar keys (int, bool,
// "string"), arrays of strings/ints, [table] and [[array-of-table]] headers,
// and # comments. Unknown keys are rejected. Throws ConfigError.
RunConfig parse_run_config(const std::string& toml_text);
RunConfig load_run_config(const std::string& path);  // throws ConfigError / IoError

TournamentPlan plan_from_config(const RunConfig& cfg);
ProviderFactory factory_from_config(const RunConfig& cfg, const Registry& reg);

}  // namespace advgame
