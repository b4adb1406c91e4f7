#pragma once

#include "advgame/registry.hpp"
#include "advgame/sim.hpp"
#include "advgame/strategy.hpp"

namespace advgame {

struct BcConfig {
    double advantage_multiplier = 1.2;  // elemental advantage on attack damage
    int attack_cap = 500;               // hard cap; at cap the Defender wins
    bool record_trace = true;
};

// Auto-battler resolution: start-of-game effects in roster order (invader
// first), initiative to the larger side (tie -> invader), then alternating
// single-unit attacks, each side's pointer sweeping left to right over living
// units. Simultaneous wipe -> Invader.
SimOutcome resolve_battle(const BcStrategy& invader, const BcStrategy& defender,
                          const BcConfig& config = {}, const Registry& reg = Registry::builtin());

// Target selection: leftmost living taunt if any, else per target_priority
// ("leftmost" | "lowest_hp" | "highest_attack"). Exposed for tests.
struct BcUnitView {
    int hp = 0;
    int attack = 0;
    bool taunt = false;
    bool alive = true;
};
int pick_target(const std::vector<BcUnitView>& enemy_line, const std::string& target_priority);

}  // namespace advgame
