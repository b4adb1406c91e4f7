#pragma once

#include "advgame/registry.hpp"
#include "advgame/sim.hpp"
#include "advgame/strategy.hpp"

namespace advgame {

// Grid: 11 columns (x 0..10) by 5 rows (y 0..4). Demons spawn at x = 11 and
// move left; the invader wins when any demon's x position drops below 0.
// Crossing is calibrated so a speed-2 demon needs 14000 ms from spawn to x=0.
struct TdConfig {
    int tick_ms = 50;                // all table intervals are multiples
    int64_t time_cap_ms = 120000;    // at cap the Defender wins iff nothing crossed
    bool record_trace = true;
};

inline constexpr int kTdColumns = 11;
inline constexpr int kTdRows = 5;

// Cells per millisecond for a given speed (speed 2 covers 11 cells in 14 s).
double td_cells_per_ms(int speed);

// Both strategies must already be Valid; rule errors cannot occur at runtime.
SimOutcome simulate_td(const TdStrategy& defender, const TdStrategy& invader,
                       const TdConfig& config = {}, const Registry& reg = Registry::builtin());

}  // namespace advgame
