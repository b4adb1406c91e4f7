#include <doctest.h>

#include <algorithm>

#include "advgame/game_ta.hpp"

using namespace advgame;

namespace {

TaStrategy side(Role role, std::vector<std::vector<std::string>> skills,
                const std::string& policy = "first") {
    TaStrategy s;
    s.role = role;
    const auto& slots = ta_slots_for(role);
    const Registry& reg = Registry::builtin();
    for (size_t i = 0; i < 3; ++i) {
        TaCharacterPick c;
        c.element = slots[i];
        c.skills = skills[i];
        c.target_policy = policy;
        for (const auto& name : c.skills) c.declared_cost += reg.find_ta(name)->cost;
        s.characters.push_back(c);
    }
    return s;
}

bool has_event(const SimOutcome& out, int64_t t, const std::string& kind, const std::string& actor,
               const std::string& target, double amount) {
    return std::any_of(out.trace.begin(), out.trace.end(), [&](const TraceEvent& e) {
        return e.t == t && e.kind == kind && e.actor == actor && e.target == target &&
               e.amount == doctest::Approx(amount);
    });
}

int count_events(const SimOutcome& out, const std::string& kind) {
    return (int)std::count_if(out.trace.begin(), out.trace.end(),
                              [&](const TraceEvent& e) { return e.kind == kind; });
}

}  // namespace

TEST_CASE("elemental multipliers, all 36 ordered pairs") {
    using E = TaElement;
    const E all[] = {E::Fire, E::Water, E::Dark, E::Wood, E::Earth, E::Light};
    auto expect = [](E a, E t) {
        auto adv = [](E x, E y) {
            return (x == E::Fire && y == E::Wood) || (x == E::Wood && y == E::Earth) ||
                   (x == E::Earth && y == E::Water) || (x == E::Water && y == E::Fire);
        };
        if (adv(a, t)) return 1.2;
        if (adv(t, a)) return 0.8;
        if ((a == E::Light && t == E::Dark) || (a == E::Dark && t == E::Light)) return 1.5;
        return 1.0;
    };
    for (E a : all)
        for (E t : all) {
            CAPTURE((int)a);
            CAPTURE((int)t);
            CHECK(elemental_multiplier(a, t) == doctest::Approx(expect(a, t)));
        }
}

TEST_CASE("opening exchanges, hand-resolved") {
    // I1 burns and bombs, I2 stacks surges, I3 sacrifices for penetration;
    // the defense answers with shields, stone skin and wards.
    auto invader = side(Role::Invader, {{"flame_splash", "burst_flame_bomb", "flame_whirlwind"},
                                        {"stream_pierce", "water_barrier", "tsunami_ending"},
                                        {"void_assimilation", "fear_whisper", "shadow_claw"}});
    auto defender = side(Role::Defender, {{"bud_healing", "parasitic_seed", "life_totem"},
                                          {"rock_armor", "granite_barrier", "quicksand_trap"},
                                          {"faith_emblem", "divine_link", "angelic_sanctuary"}});
    TaConfig cfg;
    cfg.round_cap = 3;
    auto out = run_duel(invader, defender, cfg);

    // round 1: 12 * 1.2 = 14.4 floors to 14; 10 flat; 20% of 100 sacrificed
    // for a 40-point penetrating strike
    CHECK(has_event(out, 1, "hit", "I1", "D1", 14));
    CHECK(has_event(out, 1, "hit", "I2", "D1", 10));
    CHECK(has_event(out, 1, "sacrifice", "I3", "I3", 20));
    CHECK(has_event(out, 1, "hit", "I3", "D1", 40));

    // round 2: one burning layer lifts the bomb to floor(28 * 1.2) = 33;
    // the seed counter-hits for floor(10 * 0.8) = 8
    CHECK(has_event(out, 2, "hit", "I1", "D1", 33));
    CHECK(has_event(out, 2, "hit", "D1", "I1", 8));
    // the fresh round-1 burn ticks for the first time at the end of round 2
    // and finishes D1 off (hp 3 - 5)
    CHECK(has_event(out, 2, "dot:burning", "", "D1", 5));
    CHECK(has_event(out, 2, "death", "", "D1", 0));

    // round 3 retargets D2: tsunami spends both surges for 30 + 10, cut by
    // granite skin and the earth disadvantage to floor(40 * 0.6 * 0.8) = 19;
    // the stone shield absorbs 12 of it and reflects 5
    CHECK(has_event(out, 3, "hit", "I2", "D2", 19));
    CHECK(has_event(out, 3, "reflect", "D2", "I2", 5));
    // granite skin cuts the claw to floor(14 * 0.6) = 8, healing back 2
    CHECK(has_event(out, 3, "hit", "I3", "D2", 8));

    // cap tiebreak on remaining hp fraction: (92+100+82) vs (0+85+100)
    CHECK(out.outcome.winner == Role::Invader);
    CHECK(out.outcome.terminated_at == 3);
    CHECK(out.outcome.phi_invader == doctest::Approx((2.74 - 1.85) / 3.0));
    CHECK(out.outcome.phi_defender == doctest::Approx(-out.outcome.phi_invader));
}

TEST_CASE("light kit: emblem, sword and wards") {
    // every invader attack is aimed at the priciest defender, D3
    auto invader = side(Role::Invader,
                        {{"flame_splash", "residual_warmth", "burst_flame_bomb"},
                         {"ice_branded", "stream_pierce", "whirlpool_strangle"},
                         {"night_ambush", "fear_whisper", "soul_siphon"}},
                        "highest_threat");
    auto defender = side(Role::Defender, {{"bud_healing", "parasitic_seed", "life_totem"},
                                          {"rock_armor", "granite_barrier", "quicksand_trap"},
                                          {"faith_emblem", "divine_sword", "luminous_dispel"}});
    TaConfig cfg;
    cfg.round_cap = 3;
    auto out = run_duel(invader, defender, cfg);

    // round 1: 12, 15, then the ambush amplified by the fresh ice brand:
    // floor(20 * 1.5 * 1.5) = 45
    CHECK(has_event(out, 1, "hit", "I1", "D3", 12));
    CHECK(has_event(out, 1, "hit", "I2", "D3", 15));
    CHECK(has_event(out, 1, "hit", "I3", "D3", 45));

    // round 2: 10 * 1.5 (branded) * 1.2 (ambushed) = 18; the emblem soaks
    // 20% of it, heals that back, counters for 10, and is spent
    CHECK(has_event(out, 2, "status_consumed", "", "D3", 0));
    CHECK(has_event(out, 2, "hit", "I2", "D3", 15));
    CHECK(has_event(out, 2, "counter", "D3", "I2", 10));
    // the sword swing lands for a flat 20 into fire
    CHECK(has_event(out, 2, "hit", "D3", "I1", 20));
    CHECK(has_event(out, 2, "dot:burning", "", "D3", 5));

    // round 3: bomb at (25+3) * 1.3 warmth, cut 10% by the ward,
    // floor(36.4 * 0.9) = 32, enough to finish D3
    CHECK(has_event(out, 3, "hit", "I1", "D3", 32));
    CHECK(has_event(out, 3, "death", "", "D3", 0));
    // the survivors retarget the priciest remaining defender, D2, whose
    // granite skin and stone shield blunt both hits
    CHECK(has_event(out, 3, "hit", "I2", "D2", 11));
    CHECK(has_event(out, 3, "hit", "I3", "D2", 15));
    CHECK(has_event(out, 3, "reflect", "D2", "I2", 5));

    CHECK(out.outcome.winner == Role::Invader);
}

TEST_CASE("divine link reflects the full hit once") {
    auto invader = side(Role::Invader,
                        {{"flame_splash", "burst_flame_bomb", "flame_whirlwind"},
                         {"stream_pierce", "ice_branded", "water_barrier"},
                         {"night_ambush", "fear_whisper", "shadow_claw"}},
                        "highest_threat");
    auto defender = side(Role::Defender, {{"bud_healing", "parasitic_seed", "life_totem"},
                                          {"rock_armor", "granite_barrier", "quicksand_trap"},
                                          {"divine_link", "faith_emblem", "angelic_sanctuary"}});
    TaConfig cfg;
    cfg.round_cap = 2;
    auto out = run_duel(invader, defender, cfg);

    // round 2: bomb with one burn layer, ambush-amplified:
    // floor(28 * 1.2) = 33, taken in full and thrown straight back
    CHECK(has_event(out, 2, "hit", "I1", "D3", 33));
    CHECK(has_event(out, 2, "reflect", "D3", "I1", 33));
    CHECK(out.outcome.winner == Role::Invader);
}

TEST_CASE("sanctuary flattens hits to zero but not penetration") {
    auto invader = side(Role::Invader,
                        {{"flame_splash", "burst_flame_bomb", "flame_whirlwind"},
                         {"water_barrier", "stream_pierce", "tsunami_ending"},
                         {"fear_whisper", "void_assimilation", "shadow_claw"}},
                        "highest_threat");
    auto defender = side(Role::Defender, {{"bud_healing", "parasitic_seed", "life_totem"},
                                          {"rock_armor", "granite_barrier", "quicksand_trap"},
                                          {"angelic_sanctuary", "faith_emblem", "divine_link"}});
    TaConfig cfg;
    cfg.round_cap = 2;
    auto out = run_duel(invader, defender, cfg);

    // round 2 under the sanctuary: 25 and 9 both flatten to 0, while the
    // sacrifice strike punches through for floor(40 * 1.5) = 60
    CHECK(has_event(out, 2, "hit", "I1", "D3", 0));
    CHECK(has_event(out, 2, "hit", "I2", "D3", 0));
    CHECK(has_event(out, 2, "sacrifice", "I3", "I3", 20));
    CHECK(has_event(out, 2, "hit", "I3", "D3", 60));
    CHECK(out.outcome.winner == Role::Invader);
}

TEST_CASE("burn durations: applied fresh, ticks exactly its rounds") {
    // only one burn application; re-applying would refresh it and push the
    // ticks out
    auto invader = side(Role::Invader, {{"flame_whirlwind", "residual_warmth", "residual_warmth"},
                                        {"water_barrier", "water_barrier", "water_barrier"},
                                        {"fear_whisper", "fear_whisper", "fear_whisper"}});
    auto defender = side(Role::Defender, {{"bud_healing", "bud_healing", "bud_healing"},
                                          {"granite_barrier", "granite_barrier", "granite_barrier"},
                                          {"angelic_sanctuary", "faith_emblem", "faith_emblem"}});
    TaConfig cfg;
    cfg.round_cap = 4;  // the cursor wraps and re-burns at round 4
    auto out = run_duel(invader, defender, cfg);

    // 4 layers for 2 rounds: 20 damage at the end of rounds 2 and 3; the
    // round-4 re-application is fresh and does not tick that round
    CHECK(count_events(out, "dot:burning") == 2);
    CHECK(has_event(out, 2, "dot:burning", "", "D1", 20));
    CHECK(has_event(out, 3, "dot:burning", "", "D1", 20));
    CHECK(has_event(out, 4, "status:burning", "", "D1", 4));
}

TEST_CASE("quicksand scales the hit down and bites for 10") {
    auto invader = side(Role::Invader, {{"residual_warmth", "flame_splash", "flame_whirlwind"},
                                        {"water_barrier", "water_barrier", "water_barrier"},
                                        {"fear_whisper", "fear_whisper", "fear_whisper"}});
    auto defender = side(Role::Defender, {{"bud_healing", "bud_healing", "bud_healing"},
                                          {"quicksand_trap", "earth_shock", "earth_shock"},
                                          {"faith_emblem", "faith_emblem", "faith_emblem"}});
    TaConfig cfg;
    cfg.round_cap = 2;
    auto out = run_duel(invader, defender, cfg);

    // the trapped I1 takes floor(20 * 0.8) = 16 plus the 10-point bite
    CHECK(has_event(out, 2, "hit", "D2", "I1", 16));
    CHECK(has_event(out, 2, "quicksand", "", "I1", 10));
}

TEST_CASE("an all-buff stalemate caps out in the invader's favor") {
    auto invader = side(Role::Invader, {{"residual_warmth", "residual_warmth", "residual_warmth"},
                                        {"water_barrier", "water_barrier", "water_barrier"},
                                        {"fear_whisper", "fear_whisper", "fear_whisper"}});
    auto defender = side(Role::Defender, {{"bud_healing", "bud_healing", "bud_healing"},
                                          {"granite_barrier", "granite_barrier", "granite_barrier"},
                                          {"angelic_sanctuary", "angelic_sanctuary", "angelic_sanctuary"}});
    TaConfig cfg;
    cfg.round_cap = 5;
    auto out = run_duel(invader, defender, cfg);
    CHECK(out.outcome.winner == Role::Invader);
    CHECK(out.outcome.terminated_at == 5);
    CHECK(out.outcome.phi_invader == doctest::Approx(0.0));
}

TEST_CASE("duels are deterministic") {
    auto invader = side(Role::Invader, {{"flame_splash", "burst_flame_bomb", "magma_eruption"},
                                        {"stream_pierce", "whirlpool_strangle", "tsunami_ending"},
                                        {"shadow_claw", "night_ambush", "soul_siphon"}},
                        "lowest_hp");
    auto defender = side(Role::Defender, {{"parasitic_seed", "poison_vine", "bud_healing"},
                                          {"earth_shock", "rock_armor", "quicksand_trap"},
                                          {"holy_glimmer", "divine_sword", "faith_emblem"}},
                        "lowest_hp");
    auto a = run_duel(invader, defender);
    auto b = run_duel(invader, defender);
    CHECK(a.outcome.trace_digest == b.outcome.trace_digest);
    CHECK(a.outcome.winner == b.outcome.winner);
    CHECK(a.outcome.terminated_at == b.outcome.terminated_at);
}
