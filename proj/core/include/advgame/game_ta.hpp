#pragma once

#include "advgame/registry.hpp"
#include "advgame/sim.hpp"
#include "advgame/strategy.hpp"

namespace advgame {

struct TaConfig {
    int max_hp = 100;
    int round_cap = 50;  // at cap: greater total remaining hp fraction wins, invader on tie
    bool record_trace = true;
};

// Rounds run invader slots 1-3 then defender slots 1-3, skipping the dead;
// each actor casts skills[cursor] and the cursor cycles mod 3. Damage is
// floored once, after the elemental multiplier; flat reductions, shields and
// hp apply after that.
SimOutcome run_duel(const TaStrategy& invader, const TaStrategy& defender,
                    const TaConfig& config = {}, const Registry& reg = Registry::builtin());

}  // namespace advgame
