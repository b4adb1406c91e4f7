#include "advgame/game_ta.hpp"

#include <algorithm>
#include <cmath>

namespace advgame {

namespace {

enum class StKind {
    Burning,
    ResidualWarmth,
    IceBranded,
    FearWard,
    NightAmbush,
    AttackDown,
    BudHealing,
    ParasiticSeed,
    LifeTotem,
    PoisonVine,
    Granite,
    Quicksand,
    Angelic,
    FaithEmblem,
    DivineLink,
    SwordBuff,
};

const char* st_name(StKind k) {
    switch (k) {
        case StKind::Burning: return "burning";
        case StKind::ResidualWarmth: return "residual_warmth";
        case StKind::IceBranded: return "ice_branded";
        case StKind::FearWard: return "fear_ward";
        case StKind::NightAmbush: return "night_ambush";
        case StKind::AttackDown: return "attack_down";
        case StKind::BudHealing: return "bud_healing";
        case StKind::ParasiticSeed: return "parasitic_seed";
        case StKind::LifeTotem: return "life_totem";
        case StKind::PoisonVine: return "poison_vine";
        case StKind::Granite: return "granite_barrier";
        case StKind::Quicksand: return "quicksand_trap";
        case StKind::Angelic: return "angelic_sanctuary";
        case StKind::FaithEmblem: return "faith_emblem";
        case StKind::DivineLink: return "divine_link";
        case StKind::SwordBuff: return "sword_buff";
    }
    return "?";
}

bool is_debuff(StKind k) {
    switch (k) {
        case StKind::Burning:
        case StKind::IceBranded:
        case StKind::NightAmbush:
        case StKind::AttackDown:
        case StKind::ParasiticSeed:
        case StKind::PoisonVine:
        case StKind::Quicksand:
            return true;
        default:
            return false;
    }
}

struct Status {
    StKind kind;
    int layers = 1;
    int rounds_left = 0;  // -1 = permanent
    int charges = 0;      // consume-on-trigger statuses
    bool fresh = true;    // skips the status phase of the round it was applied in
};

struct Shield {
    int amount = 0;
    int rounds_left = 0;  // -1 = permanent
    int reflect = 0;      // damage dealt back per direct hit while active
    bool pool = true;     // false: pure reflect carrier, never depleted away
    bool fresh = true;
};

struct Ch {
    TaElement element = TaElement::Fire;
    std::string id;
    std::vector<std::string> skills;
    std::string policy = "first";
    int loadout_cost = 0;
    int hp = 0;
    int max_hp = 0;
    int cursor = 0;
    int tidal = 0;              // permanent Tidal Surge layers on the caster
    long long stored = 0;       // damage taken since start or last core_rebound
    std::vector<Status> statuses;
    std::vector<Shield> shields;

    bool alive() const { return hp > 0; }

    Status* find(StKind k) {
        for (auto& s : statuses)
            if (s.kind == k) return &s;
        return nullptr;
    }
};

struct Duel {
    const TaConfig& cfg;
    const Registry& reg;
    Ch chars[2][3];
    int round = 1;
    std::vector<TraceEvent> trace;

    void event(std::string kind, std::string actor, std::string target, double amount) {
        trace.push_back({round, std::move(kind), std::move(actor), std::move(target), amount});
    }

    bool side_alive(int side) const {
        for (const auto& c : chars[side])
            if (c.alive()) return true;
        return false;
    }

    void add_status(Ch& c, StKind kind, int layers, int rounds, int charges = 0) {
        event(std::string("status:") + st_name(kind), "", c.id, layers);
        if (Status* s = c.find(kind)) {
            if (kind == StKind::Burning) s->layers += layers;
            else s->layers = layers;
            s->rounds_left = std::max(s->rounds_left, rounds);
            s->charges = charges;
            s->fresh = true;
            return;
        }
        c.statuses.push_back({kind, layers, rounds, charges, true});
    }

    void add_shield(Ch& c, int amount, int rounds, int reflect = 0) {
        if (amount <= 0) return;
        event("shield", "", c.id, amount);
        c.shields.push_back({amount, rounds, reflect, true});
    }

    void heal(Ch& c, int amount, bool overflow_shield = false) {
        if (!c.alive() || amount <= 0) return;
        if (c.find(StKind::LifeTotem)) amount = (int)std::floor(amount * 1.1);
        int excess = std::max(0, c.hp + amount - c.max_hp);
        c.hp = std::min(c.max_hp, c.hp + amount);
        event("heal", "", c.id, amount - excess);
        if (overflow_shield && excess > 0) add_shield(c, (int)std::floor(0.5 * excess), 3);
    }

    // shields then hp; used by reflects, counters and DoT, which ignore
    // modifiers and never trigger further reflects
    void raw_damage(Ch& c, int amount, bool count_stored = true) {
        if (!c.alive() || amount <= 0) return;
        int left = amount;
        for (auto& sh : c.shields) {
            if (left == 0) break;
            int used = std::min(sh.amount, left);
            sh.amount -= used;
            left -= used;
        }
        std::erase_if(c.shields, [](const Shield& s) { return s.pool && s.amount == 0; });
        if (left > 0) {
            c.hp -= left;
            if (count_stored) c.stored += left;
            event("damage", "", c.id, left);
            if (!c.alive()) {
                event("death", "", c.id, 0);
                c.statuses.clear();
                c.shields.clear();
            }
        }
    }

    // The attack pipeline: base with flat bonuses, then target percentage
    // modifiers and the attacker's attack-down multiplied together, then the
    // elemental multiplier, floored once; flat reduction, emblem, shields and
    // hp after that. Penetration keeps only the elemental multiplier.
    int inflict(Ch& atk, Ch& tgt, double base, bool penetration) {
        if (!tgt.alive()) return 0;
        double v = base;
        if (atk.find(StKind::AttackDown)) v *= 0.85;
        bool quicksand_trigger = false;
        if (!penetration) {
            if (tgt.find(StKind::IceBranded)) v *= 1.5;
            if (tgt.find(StKind::NightAmbush)) v *= 1.2;
            if (tgt.find(StKind::FearWard)) v *= 0.9;
            if (tgt.find(StKind::Granite)) v *= 0.6;
            if (Status* q = tgt.find(StKind::Quicksand); q && q->charges > 0) {
                v *= 0.8;
                --q->charges;
                quicksand_trigger = true;
            }
        }
        v *= elemental_multiplier(atk.element, tgt.element);
        int dealt = (int)std::floor(v);

        if (!penetration && tgt.find(StKind::Angelic)) dealt = std::max(0, dealt - 30);

        int counter_to_atk = 0;
        int link_reflect = 0;
        if (!penetration) {
            if (Status* f = tgt.find(StKind::FaithEmblem)) {
                int reduced = (int)std::floor(0.2 * dealt);
                dealt -= reduced;
                heal(tgt, reduced);
                counter_to_atk += 10;
                event("status_consumed", "", tgt.id, 0);
                std::erase_if(tgt.statuses,
                              [](const Status& s) { return s.kind == StKind::FaithEmblem; });
                (void)f;
            }
            if (tgt.find(StKind::DivineLink)) {
                link_reflect = dealt;
                std::erase_if(tgt.statuses,
                              [](const Status& s) { return s.kind == StKind::DivineLink; });
            }
        }

        event("hit", atk.id, tgt.id, dealt);

        if (penetration) {
            tgt.hp -= dealt;
            tgt.stored += dealt;
            if (!tgt.alive()) {
                event("death", "", tgt.id, 0);
                tgt.statuses.clear();
                tgt.shields.clear();
            }
            return dealt;
        }

        int shield_reflect = 0;
        for (const auto& sh : tgt.shields)
            if (sh.reflect > 0) shield_reflect += sh.reflect;

        raw_damage(tgt, dealt);

        // reflects and counters never chain
        if (link_reflect > 0) {
            event("reflect", tgt.id, atk.id, link_reflect);
            raw_damage(atk, link_reflect);
        }
        if (shield_reflect > 0) {
            event("reflect", tgt.id, atk.id, shield_reflect);
            raw_damage(atk, shield_reflect);
        }
        if (counter_to_atk > 0) {
            event("counter", tgt.id, atk.id, counter_to_atk);
            raw_damage(atk, counter_to_atk);
        }
        if (quicksand_trigger) {
            event("quicksand", "", tgt.id, 10);
            raw_damage(tgt, 10);
        }
        return dealt;
    }

    Ch* pick_target(int enemy_side, const std::string& policy) {
        Ch* best = nullptr;
        for (auto& c : chars[enemy_side]) {
            if (!c.alive()) continue;
            if (!best) {
                best = &c;
                continue;
            }
            if (policy == "lowest_hp" && c.hp < best->hp) best = &c;
            if (policy == "highest_threat" && c.loadout_cost > best->loadout_cost) best = &c;
        }
        return best;
    }

    // Attacking flat bonuses consumed by a damaging skill.
    double apply_flat_bonuses(Ch& atk, double base) {
        if (atk.find(StKind::ResidualWarmth)) {
            base *= 1.3;
            std::erase_if(atk.statuses,
                          [](const Status& s) { return s.kind == StKind::ResidualWarmth; });
        }
        if (atk.find(StKind::SwordBuff)) {
            base += 20;
            std::erase_if(atk.statuses,
                          [](const Status& s) { return s.kind == StKind::SwordBuff; });
        }
        return base;
    }

    void remove_first_debuff(Ch& c) {
        for (size_t i = 0; i < c.statuses.size(); ++i) {
            if (is_debuff(c.statuses[i].kind)) {
                event("cleanse", "", c.id, 0);
                c.statuses.erase(c.statuses.begin() + i);
                return;
            }
        }
    }

    void remove_all_debuffs(Ch& c) {
        std::erase_if(c.statuses, [](const Status& s) { return is_debuff(s.kind); });
        event("cleanse", "", c.id, 0);
    }

    void remove_first_buff(Ch& c) {
        for (size_t i = 0; i < c.statuses.size(); ++i) {
            if (!is_debuff(c.statuses[i].kind)) {
                event("dispel", "", c.id, 0);
                c.statuses.erase(c.statuses.begin() + i);
                return;
            }
        }
    }

    void act(int side, Ch& a) {
        int enemy = 1 - side;
        const std::string skill = a.skills[a.cursor];
        a.cursor = (a.cursor + 1) % 3;
        Ch* t = pick_target(enemy, a.policy);
        event("cast:" + skill, a.id, t ? t->id : "", 0);
        if (!t) return;
        bool attacked = false;  // drives the parasitic seed counter

        auto attack = [&](double base, bool penetration = false) {
            attacked = true;
            return inflict(a, *t, apply_flat_bonuses(a, base), penetration);
        };

        if (skill == "flame_splash") {
            attack(12);
            if (t->alive()) add_status(*t, StKind::Burning, 1, 2);
        } else if (skill == "residual_warmth") {
            add_status(a, StKind::ResidualWarmth, 1, 1);
        } else if (skill == "burst_flame_bomb") {
            Status* b = t->find(StKind::Burning);
            attack(25 + 3 * (b ? b->layers : 0));
        } else if (skill == "flame_whirlwind") {
            add_status(*t, StKind::Burning, 4, 2);
        } else if (skill == "magma_eruption") {
            Status* b = t->find(StKind::Burning);
            attack(40 + 5 * (b ? b->layers : 0));
            if (t->alive())
                std::erase_if(t->statuses,
                              [](const Status& s) { return s.kind == StKind::Burning; });
        } else if (skill == "hell_curtain") {
            attack(35);
            // reflect carrier with no absorb pool
            a.shields.push_back({0, 2, 30, false, true});
            event("shield", "", a.id, 0);
        } else if (skill == "stream_pierce") {
            attack(10);
            ++a.tidal;
            event("status:tidal_surge", "", a.id, a.tidal);
        } else if (skill == "water_barrier") {
            add_shield(a, 5, 3);
            ++a.tidal;
            event("status:tidal_surge", "", a.id, a.tidal);
        } else if (skill == "whirlpool_strangle") {
            attack(20 + 4 * a.tidal);
        } else if (skill == "ice_branded") {
            attack(15);
            if (t->alive()) add_status(*t, StKind::IceBranded, 1, 1);
        } else if (skill == "tsunami_ending") {
            attack(30 + 5 * a.tidal);
            a.tidal = 0;
            event("status:tidal_surge", "", a.id, 0);
        } else if (skill == "abyss_resonance") {
            attack(3 * a.tidal);
            add_shield(a, 6 * a.tidal, 3);
        } else if (skill == "shadow_claw") {
            int dealt = attack(14);
            heal(a, (int)std::floor(0.3 * dealt));
        } else if (skill == "fear_whisper") {
            add_status(*t, StKind::FearWard, 1, 3);
        } else if (skill == "soul_siphon") {
            bool low = t->hp * 2 < t->max_hp;
            attack(low ? 40 : 25);
        } else if (skill == "night_ambush") {
            attack(20);
            if (t->alive()) add_status(*t, StKind::NightAmbush, 1, 1);
        } else if (skill == "final_announcment") {
            int lost_tenths = (int)std::floor(10.0 * (t->max_hp - t->hp) / t->max_hp);
            attack(45 + 5 * lost_tenths);
        } else if (skill == "void_assimilation") {
            int sac = (int)std::floor(0.2 * a.hp);
            a.hp -= sac;
            event("sacrifice", a.id, a.id, sac);
            attack(2.0 * sac, true);
            if (!a.alive()) {
                event("death", "", a.id, 0);
                a.statuses.clear();
                a.shields.clear();
            }
        } else if (skill == "bud_healing") {
            add_status(a, StKind::BudHealing, 1, 3);
        } else if (skill == "parasitic_seed") {
            attack(10);
            if (t->alive()) add_status(*t, StKind::ParasiticSeed, 1, 3);
        } else if (skill == "life_totem") {
            heal(a, 25);
            add_status(a, StKind::LifeTotem, 1, 3);
        } else if (skill == "natural_purification") {
            remove_all_debuffs(a);
            attack(30);
        } else if (skill == "forest_reincarnation") {
            heal(a, 60, true);
            attack(20);
        } else if (skill == "poison_vine") {
            add_status(*t, StKind::PoisonVine, 1, 3);
        } else if (skill == "rock_armor") {
            a.shields.push_back({12, 3, 5, true});
            event("shield", "", a.id, 12);
        } else if (skill == "earth_shock") {
            attack(20);
        } else if (skill == "granite_barrier") {
            add_status(a, StKind::Granite, 1, 3);
        } else if (skill == "quicksand_trap") {
            add_status(*t, StKind::Quicksand, 1, 3, 3);
        } else if (skill == "earth_pulse") {
            int lost_tenths = (int)std::floor(10.0 * (a.max_hp - a.hp) / a.max_hp);
            add_shield(a, 8 * lost_tenths, -1);
        } else if (skill == "core_rebound") {
            attacked = true;
            int dmg = (int)std::floor(0.8 * a.stored);
            a.stored = 0;
            inflict(a, *t, dmg, false);
        } else if (skill == "holy_glimmer") {
            remove_first_debuff(a);
            heal(a, 8);
            attack(8);
        } else if (skill == "faith_emblem") {
            add_status(a, StKind::FaithEmblem, 1, 1, 1);
        } else if (skill == "divine_link") {
            add_status(a, StKind::DivineLink, 1, 1, 1);
        } else if (skill == "luminous_dispel") {
            remove_first_buff(*t);
            add_status(*t, StKind::AttackDown, 1, 2);
        } else if (skill == "angelic_sanctuary") {
            add_status(a, StKind::Angelic, 1, 3);
        } else if (skill == "divine_sword") {
            attack(20);
            add_status(a, StKind::SwordBuff, 1, 2);
        }

        if (attacked && a.alive()) {
            if (a.find(StKind::ParasiticSeed)) {
                event("counter", "", a.id, 5);
                raw_damage(a, 5);
            }
        }
    }

    // DoT/HoT in application order, then durations; statuses applied this
    // round neither resolve nor tick.
    void status_phase(Ch& c) {
        if (!c.alive()) return;
        for (size_t i = 0; i < c.statuses.size() && c.alive(); ++i) {
            Status& s = c.statuses[i];
            if (s.fresh) continue;
            if (s.kind == StKind::Burning) {
                event("dot:burning", "", c.id, 5 * s.layers);
                raw_damage(c, 5 * s.layers);
            } else if (s.kind == StKind::PoisonVine) {
                event("dot:poison_vine", "", c.id, 25);
                raw_damage(c, 25);
            } else if (s.kind == StKind::BudHealing) {
                heal(c, 6);
            }
        }
        if (!c.alive()) return;
        for (auto& s : c.statuses) {
            if (s.fresh) s.fresh = false;
            else if (s.rounds_left > 0) --s.rounds_left;
        }
        std::erase_if(c.statuses, [](const Status& s) { return s.rounds_left == 0 && !s.fresh; });
        for (auto& sh : c.shields) {
            if (sh.fresh) sh.fresh = false;
            else if (sh.rounds_left > 0) --sh.rounds_left;
        }
        std::erase_if(c.shields,
                      [](const Shield& s) { return s.rounds_left == 0 && !s.fresh; });
    }

    double hp_fraction(int side) const {
        double s = 0;
        for (const auto& c : chars[side]) s += (double)std::max(0, c.hp) / c.max_hp;
        return s / 3.0;
    }
};

}  // namespace

SimOutcome run_duel(const TaStrategy& invader, const TaStrategy& defender,
                    const TaConfig& config, const Registry& reg) {
    Duel d{config, reg};

    auto build = [&](const TaStrategy& s, int side, char tag) {
        for (int i = 0; i < 3; ++i) {
            Ch& c = d.chars[side][i];
            const auto& pick = s.characters[i];
            c.element = pick.element;
            c.id = std::string(1, tag) + std::to_string(i + 1);
            c.skills = pick.skills;
            c.policy = pick.target_policy;
            c.hp = c.max_hp = config.max_hp;
            for (const auto& sk : pick.skills)
                if (const auto* sp = reg.find_ta(sk)) c.loadout_cost += sp->cost;
        }
    };
    build(invader, 0, 'I');
    build(defender, 1, 'D');

    std::optional<Role> winner;
    for (d.round = 1; d.round <= config.round_cap; ++d.round) {
        for (int side = 0; side < 2 && !winner; ++side) {
            for (auto& c : d.chars[side]) {
                if (!c.alive()) continue;
                d.act(side, c);
                if (!d.side_alive(1)) {
                    winner = Role::Invader;
                    break;
                }
                if (!d.side_alive(0)) {
                    winner = Role::Defender;
                    break;
                }
            }
        }
        if (winner) break;
        for (int side = 0; side < 2; ++side)
            for (auto& c : d.chars[side]) d.status_phase(c);
        if (!d.side_alive(1)) {
            winner = Role::Invader;
            break;
        }
        if (!d.side_alive(0)) {
            winner = Role::Defender;
            break;
        }
    }
    if (!winner) {
        // cap: greater remaining hp fraction wins, invader on tie
        winner = d.hp_fraction(0) >= d.hp_fraction(1) ? Role::Invader : Role::Defender;
    }
    d.event("win", std::string(to_string(*winner)), "", 0);

    SimOutcome out;
    out.outcome.winner = *winner;
    out.outcome.terminated_at = std::min(d.round, config.round_cap);
    out.outcome.trace_digest = digest_trace(d.trace);
    out.outcome.phi_invader = d.hp_fraction(0) - d.hp_fraction(1);
    out.outcome.phi_defender = -out.outcome.phi_invader;
    if (config.record_trace) out.trace = std::move(d.trace);
    return out;
}

}  // namespace advgame
