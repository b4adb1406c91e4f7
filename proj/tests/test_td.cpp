#include <doctest.h>

#include <algorithm>

#include "advgame/game_td.hpp"

using namespace advgame;

namespace {

TdStrategy defense(std::vector<TdPlacement> placements = {}) {
    TdStrategy s;
    s.role = Role::Defender;
    s.placements = std::move(placements);
    return s;
}

TdStrategy assault(std::vector<TdSpawn> spawns) {
    TdStrategy s;
    s.role = Role::Invader;
    s.spawns = std::move(spawns);
    return s;
}

bool has_event(const SimOutcome& out, const std::string& kind) {
    return std::any_of(out.trace.begin(), out.trace.end(),
                       [&](const TraceEvent& e) { return e.kind == kind; });
}

}  // namespace

TEST_CASE("movement calibration: speed 2 crosses in 14 seconds") {
    // one 50 ms tick of a speed-2 demon covers 11/280 of the lane
    CHECK(td_cells_per_ms(2) * 50 == doctest::Approx(0.0392857).epsilon(1e-4));
    CHECK(5.0 - td_cells_per_ms(2) * 50 == doctest::Approx(4.9607).epsilon(1e-4));
    CHECK(td_cells_per_ms(4) == doctest::Approx(2 * td_cells_per_ms(2)));

    auto normal = simulate_td(defense(), assault({{"NormalDemon", 2, 0}}));
    CHECK(normal.outcome.winner == Role::Invader);
    CHECK(std::abs(normal.outcome.terminated_at - 14000) <= 50);
    CHECK(has_event(normal, "cross"));

    auto speedy = simulate_td(defense(), assault({{"SpeedyDemon", 0, 0}}));
    CHECK(speedy.outcome.winner == Role::Invader);
    CHECK(std::abs(speedy.outcome.terminated_at - 7000) <= 50);

    // the speed-1 summoner needs 28 s itself, but its first spawned runner
    // (speed 2 from ~8 cells out at t=5000) crosses around 15.2 s
    auto slow = simulate_td(defense(), assault({{"SummoningDemon", 4, 0}}));
    CHECK(slow.outcome.winner == Role::Invader);
    CHECK(slow.outcome.terminated_at > 15000);
    CHECK(slow.outcome.terminated_at < 15500);
    CHECK(has_event(slow, "summon"));
}

TEST_CASE("spawn timing shifts the crossing by the same amount") {
    auto now = simulate_td(defense(), assault({{"NormalDemon", 2, 0}}));
    auto later = simulate_td(defense(), assault({{"NormalDemon", 2, 3000}}));
    CHECK(later.outcome.winner == Role::Invader);
    CHECK(later.outcome.terminated_at - now.outcome.terminated_at == 3000);
}

TEST_CASE("rapid fire stops a demon before the lane ends") {
    // 4 dmg/s against 10 hp wins with seconds to spare
    auto out = simulate_td(defense({{"MachineGunSoldier", 0, 2}}), assault({{"NormalDemon", 2, 0}}));
    CHECK(out.outcome.winner == Role::Defender);
    CHECK(out.outcome.terminated_at < 14000);
    CHECK(has_event(out, "death"));
    CHECK(out.outcome.phi_defender > 0);
    CHECK(out.outcome.phi_invader == doctest::Approx(-out.outcome.phi_defender));

    // the same tower in another row never fires
    auto miss = simulate_td(defense({{"MachineGunSoldier", 0, 1}}), assault({{"NormalDemon", 2, 0}}));
    CHECK(miss.outcome.winner == Role::Invader);
}

TEST_CASE("blockers delay the crossing by their hit points") {
    auto open = simulate_td(defense(), assault({{"NormalDemon", 2, 0}}));
    // 15 hp at 1 dmg/s holds the demon for ~15 s before it walks on
    auto blocked = simulate_td(defense({{"ShieldSoldier", 5, 2}}), assault({{"NormalDemon", 2, 0}}));
    CHECK(blocked.outcome.winner == Role::Invader);
    CHECK(blocked.outcome.terminated_at >= open.outcome.terminated_at + 13000);
    CHECK(has_event(blocked, "melee"));
}

TEST_CASE("flying demons ignore ground fire but not anti-air") {
    auto past = simulate_td(defense({{"HandgunSoldier", 0, 1}, {"ShieldSoldier", 5, 1}}),
                            assault({{"FlyingDemon", 1, 0}}));
    CHECK(past.outcome.winner == Role::Invader);
    CHECK(std::abs(past.outcome.terminated_at - 14000) <= 50);  // never even slowed down

    auto shot = simulate_td(defense({{"AntiAirSoldier", 0, 1}, {"AntiAirSoldier", 1, 1}}),
                            assault({{"FlyingDemon", 1, 0}}));
    CHECK(shot.outcome.winner == Role::Defender);
}

TEST_CASE("ice slows once, and ice immunity shrugs it off") {
    // the damage-reducing demon survives the chip damage, slowed to half pace
    auto slowed = simulate_td(defense({{"IceSoldier", 0, 2}}), assault({{"ShieldDemon", 2, 0}}));
    CHECK(slowed.outcome.winner == Role::Invader);
    CHECK(slowed.outcome.terminated_at > 20000);
    CHECK(has_event(slowed, "slow"));

    // immune to both the chip damage and the slow; only the ~1 s spent
    // chewing through the 2 hp tower body delays the crossing
    auto immune = simulate_td(defense({{"IceSoldier", 0, 2}}), assault({{"FrostDemon", 2, 0}}));
    CHECK(immune.outcome.winner == Role::Invader);
    CHECK(immune.outcome.terminated_at < 15000);
    CHECK_FALSE(has_event(immune, "slow"));
}

TEST_CASE("fire immunity blocks the burn") {
    auto burned = simulate_td(defense({{"FlamethrowerSoldier", 0, 2}}),
                              assault({{"ShieldDemon", 2, 0}}));
    CHECK(has_event(burned, "burn"));

    auto immune = simulate_td(defense({{"FlamethrowerSoldier", 0, 2}}),
                              assault({{"FireDemon", 2, 0}}));
    CHECK_FALSE(has_event(immune, "burn"));
}

TEST_CASE("area charges detonate on approach") {
    auto out = simulate_td(defense({{"Bomb", 5, 2}}), assault({{"NormalDemon", 2, 0}}));
    CHECK(out.outcome.winner == Role::Defender);
    CHECK(has_event(out, "explode"));
}

TEST_CASE("the clock runs out in the defender's favor") {
    auto out = simulate_td(defense(), assault({{"NormalDemon", 2, 110000}}));
    CHECK(out.outcome.winner == Role::Defender);
    CHECK(out.outcome.terminated_at == 120000);
}

TEST_CASE("simulation is deterministic") {
    auto defender = defense({{"MachineGunSoldier", 0, 2}, {"IceSoldier", 1, 2},
                             {"ShieldSoldier", 6, 2}, {"Bomb", 4, 1}});
    auto invader = assault({{"NormalDemon", 2, 0}, {"GreatDemon", 2, 1000},
                            {"SpeedyDemon", 1, 2000}, {"ShieldDemon", 2, 4000}});
    auto a = simulate_td(defender, invader);
    auto b = simulate_td(defender, invader);
    CHECK(a.outcome.trace_digest == b.outcome.trace_digest);
    CHECK(a.outcome.winner == b.outcome.winner);
    CHECK(a.outcome.terminated_at == b.outcome.terminated_at);
}
