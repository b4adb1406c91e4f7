#pragma once

#include <memory>
#include <string>

#include "advgame/orchestrator.hpp"

namespace advgame {

// Scripted strategy bots standing in for live agents. Policies:
//   greedy_cost   - deterministic, spends the budget on the priciest units
//   random_valid  - seeded random valid strategy, revises every round
//   keeper        - valid opening, then always "keep"
//   oscillator    - always submits a (possibly different) valid strategy
//   overspender   - intentionally over budget every round
// Every policy except overspender emits only Valid strategies.
std::unique_ptr<Provider> make_scripted_bot(const std::string& policy_id, uint64_t seed = 0,
                                            const Registry& reg = Registry::builtin());

bool is_known_bot_policy(const std::string& policy_id);

// Replays strategies from a JSON-lines file (one {round, strategy|keep} per
// line); repeats the last entry when rounds run past the file.
std::unique_ptr<Provider> make_replay_provider(const std::string& path);

}  // namespace advgame
