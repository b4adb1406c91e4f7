#include "advgame/game_bc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace advgame {

namespace {

struct Unit {
    BcUnitSpec spec;  // gold scaling already applied
    std::string id;
    std::string target_priority = "leftmost";
    BcTier tier = BcTier::Bronze;
    int hp = 0;
    int max_hp = 0;
    int attack = 0;
    bool divine_shield = false;
    bool revive_available = false;
    bool alive = true;  // dead units stay in line as tombstones, skipped everywhere
};

// unique_ptr storage keeps Unit* stable across mid-battle summons
using Line = std::vector<std::unique_ptr<Unit>>;

struct Battle {
    const BcConfig& cfg;
    const Registry& reg;
    Line line[2];  // [0]=invader, [1]=defender
    int next_idx[2] = {0, 0};
    int step = 0;
    std::vector<TraceEvent> trace;
    int token_seq = 0;

    void event(std::string kind, std::string actor, std::string target, double amount) {
        trace.push_back({step, std::move(kind), std::move(actor), std::move(target), amount});
    }

    int living(int side) const {
        return (int)std::count_if(line[side].begin(), line[side].end(),
                                  [](const auto& u) { return u->alive; });
    }

    int index_of(int side, const Unit& u) const {
        for (size_t i = 0; i < line[side].size(); ++i)
            if (line[side][i].get() == &u) return (int)i;
        return -1;
    }

    int side_of(const Unit& u) const { return index_of(0, u) >= 0 ? 0 : 1; }

    Unit* choose_target(int enemy_side, const std::string& priority) {
        std::vector<BcUnitView> views;
        views.reserve(line[enemy_side].size());
        for (const auto& u : line[enemy_side])
            views.push_back({u->hp, u->attack, u->alive && u->spec.has(BcEffectKind::Taunt),
                             u->alive});
        int idx = pick_target(views, priority);
        return idx < 0 ? nullptr : line[enemy_side][idx].get();
    }

    void break_shield(int side, Unit& victim) {
        victim.divine_shield = false;
        event("shield_break", victim.id, "", 0);
        for (auto& u : line[side]) {
            if (!u->alive) continue;
            if (const auto* rage = u->spec.find(BcEffectKind::PaladinRage)) {
                u->attack += rage->amount;
                event("rage", u->id, "", rage->amount);
            }
        }
    }

    void summon(int side, int pos, const std::string& token_name, BcTier tier) {
        if (living(side) >= 7) {
            event("summon_lost", token_name, "", 0);
            return;
        }
        auto it = reg.bc_tokens.find(token_name);
        BcUnitSpec spec = it != reg.bc_tokens.end() ? it->second : *reg.find_bc(token_name);
        if (tier == BcTier::Gold) spec = apply_gold(spec);
        auto u = std::make_unique<Unit>();
        u->spec = spec;
        u->id = token_name + "*" + std::to_string(++token_seq);
        u->tier = tier;
        u->hp = u->max_hp = spec.health;
        u->attack = spec.attack;
        u->divine_shield = spec.has(BcEffectKind::DivineShield);
        pos = std::clamp(pos, 0, (int)line[side].size());
        event("summon", u->id, "", pos);
        line[side].insert(line[side].begin() + pos, std::move(u));
        if (pos <= next_idx[side]) ++next_idx[side];
    }

    // Damage one unit. attacker is null for deathrattle/burn splash;
    // is_attack gates on-damaged retaliation against the striker.
    void deal_damage(int victim_side, Unit& victim, int amount, Unit* attacker, bool is_attack) {
        if (!victim.alive || amount <= 0) return;
        if (victim.divine_shield) {
            break_shield(victim_side, victim);
            event("absorbed", victim.id, attacker ? attacker->id : "", amount);
            // on_damaged triggers that key on being hit still fire; TideLord's
            // enrage needs actual hp loss, so not here
            if (is_attack && attacker) retaliate(victim, *attacker);
            return;
        }
        victim.hp -= amount;
        event("damage", attacker ? attacker->id : "", victim.id, amount);
        if (victim.spec.has(BcEffectKind::DoubleAttackWhenDamaged)) {
            victim.attack *= 2;
            event("enrage", victim.id, "", victim.attack);
        }
        if (is_attack && attacker) retaliate(victim, *attacker);
        if (is_attack && attacker && attacker->alive &&
            attacker->spec.has(BcEffectKind::DestroyOnDamage) && victim.hp > 0) {
            victim.hp = 0;
            event("destroy", attacker->id, victim.id, 0);
        }
    }

    void retaliate(Unit& victim, Unit& attacker) {
        if (const auto* burn = victim.spec.find(BcEffectKind::BurnAttacker)) {
            if (attacker.alive) deal_damage(side_of(attacker), attacker, burn->amount, nullptr, false);
        }
        if (const auto* red = victim.spec.find(BcEffectKind::ReduceAttackerAttack)) {
            attacker.attack = std::max(0, attacker.attack - red->amount);
            event("weaken", victim.id, attacker.id, red->amount);
        }
    }

    // Resolve deaths until stable; deathrattles fire in discovery order and
    // may cascade.
    void process_deaths() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int side = 0; side < 2; ++side) {
                for (size_t i = 0; i < line[side].size(); ++i) {
                    Unit& u = *line[side][i];
                    if (!u.alive || u.hp > 0) continue;
                    changed = true;
                    if (u.revive_available) {
                        u.revive_available = false;
                        u.hp = u.max_hp;
                        event("revive", u.id, "", u.hp);
                        continue;
                    }
                    u.alive = false;
                    event("death", "", u.id, 0);
                    fire_deathrattle(side, u);
                }
            }
        }
    }

    void fire_deathrattle(int side, Unit& dead) {
        int enemy = 1 - side;
        const auto abilities = dead.spec.abilities;  // copy: summon may shift the line
        for (const auto& a : abilities) {
            if (a.trigger != BcTrigger::OnDeath) continue;
            switch (a.kind) {
                case BcEffectKind::SplashAllOnDeath:
                    for (auto& e : line[enemy])
                        if (e->alive) deal_damage(enemy, *e, a.amount, nullptr, false);
                    break;
                case BcEffectKind::HealAllOnDeath:
                    for (auto& f : line[side])
                        if (f->alive) {
                            f->hp = std::min(f->max_hp, f->hp + a.amount);
                            event("heal", dead.id, f->id, a.amount);
                        }
                    break;
                case BcEffectKind::SummonOnDeath:
                    summon(side, index_of(side, dead), a.token, BcTier::Bronze);
                    break;
                case BcEffectKind::ReflectToKiller:
                    break;  // resolved at the attack site, where the killer is known
                default:
                    break;
            }
        }
    }

    void strike(int side, Unit& attacker) {
        ++step;
        int enemy = 1 - side;

        // growth effects modify the very attack they accompany
        for (const auto& a : attacker.spec.abilities) {
            if (a.trigger != BcTrigger::OnAttack) continue;
            if (a.kind == BcEffectKind::GainAttackOnAttack) {
                attacker.attack += a.amount;
                event("grow_attack", attacker.id, "", a.amount);
            } else if (a.kind == BcEffectKind::GainHealthOnAttack) {
                attacker.hp += a.amount;
                attacker.max_hp += a.amount;
                event("grow_health", attacker.id, "", a.amount);
            } else if (a.kind == BcEffectKind::SummonOnAttack) {
                summon(side, index_of(side, attacker) + 1, a.token, attacker.tier);
            }
        }

        Unit* target = choose_target(enemy, attacker.target_priority);
        if (!target) return;

        auto dealt_for = [&](const Unit& victim) {
            bool adv = bc_has_advantage(attacker.spec.element, victim.spec.element);
            return (int)std::floor(attacker.attack * (adv ? cfg.advantage_multiplier : 1.0));
        };

        int dealt = dealt_for(*target);
        event("attack", attacker.id, target->id, dealt);

        int target_hp_before = target->hp;
        bool target_had_shield = target->divine_shield;
        deal_damage(enemy, *target, dealt, &attacker, true);

        if (attacker.spec.has(BcEffectKind::SplashAdjacentAttack)) {
            for (Unit* n : living_neighbors(enemy, *target)) {
                int ndealt = dealt_for(*n);
                event("splash", attacker.id, n->id, ndealt);
                deal_damage(enemy, *n, ndealt, &attacker, true);
            }
        }

        // overkill carries exactly the excess to the next living enemy in line
        if (attacker.spec.has(BcEffectKind::OverkillCarry) && !target_had_shield &&
            target->hp <= 0 && dealt > target_hp_before) {
            int excess = dealt - target_hp_before;
            if (Unit* next = next_living_after(enemy, *target)) {
                event("carry", attacker.id, next->id, excess);
                deal_damage(enemy, *next, excess, &attacker, true);
            }
        }

        // death reflect needs the killer, so it resolves here
        if (target->alive && target->hp <= 0 && !target->revive_available) {
            if (const auto* refl = target->spec.find(BcEffectKind::ReflectToKiller)) {
                event("reflect", target->id, attacker.id, refl->amount);
                deal_damage(side, attacker, refl->amount, nullptr, false);
            }
        }

        if (const auto* decay = attacker.spec.find(BcEffectKind::AttackDecay)) {
            attacker.attack = std::max(0, attacker.attack - decay->amount);
            event("decay", attacker.id, "", decay->amount);
        }

        process_deaths();
    }

    std::vector<Unit*> living_neighbors(int side, Unit& u) {
        // adjacency over the living line, tombstones skipped
        std::vector<Unit*> alive_units;
        int pos = -1;
        for (auto& c : line[side]) {
            if (c->alive || c.get() == &u) {
                if (c.get() == &u) pos = (int)alive_units.size();
                alive_units.push_back(c.get());
            }
        }
        std::vector<Unit*> out;
        if (pos > 0 && alive_units[pos - 1]->alive) out.push_back(alive_units[pos - 1]);
        if (pos >= 0 && pos + 1 < (int)alive_units.size() && alive_units[pos + 1]->alive)
            out.push_back(alive_units[pos + 1]);
        return out;
    }

    Unit* next_living_after(int side, Unit& u) {
        bool seen = false;
        for (auto& c : line[side]) {
            if (c.get() == &u) {
                seen = true;
                continue;
            }
            if (seen && c->alive && c->hp > 0) return c.get();
        }
        return nullptr;
    }

    // Pointer sweeps left to right over living units, wrapping; dead units
    // are skipped without consuming the turn.
    Unit* take_next_actor(int side) {
        int n = (int)line[side].size();
        if (n == 0 || living(side) == 0) return nullptr;
        for (int k = 0; k < n; ++k) {
            int i = (next_idx[side] + k) % n;
            if (line[side][i]->alive) {
                next_idx[side] = (i + 1) % n;
                return line[side][i].get();
            }
        }
        return nullptr;
    }

    // cost-weighted hp fraction margin, the CnstrR state evaluation
    double phi(int side) const {
        auto sum = [](const Line& l) {
            double s = 0;
            for (const auto& u : l)
                if (u->alive && u->max_hp > 0)
                    s += u->spec.cost * (double)std::max(0, u->hp) / u->max_hp;
            return s;
        };
        return sum(line[side]) - sum(line[1 - side]);
    }
};

}  // namespace

int pick_target(const std::vector<BcUnitView>& enemy_line, const std::string& target_priority) {
    // taunt always overrides the priority keyword
    for (int i = 0; i < (int)enemy_line.size(); ++i)
        if (enemy_line[i].alive && enemy_line[i].taunt) return i;
    int best = -1;
    for (int i = 0; i < (int)enemy_line.size(); ++i) {
        const auto& u = enemy_line[i];
        if (!u.alive) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        if (target_priority == "lowest_hp" && u.hp < enemy_line[best].hp) best = i;
        if (target_priority == "highest_attack" && u.attack > enemy_line[best].attack) best = i;
    }
    return best;
}

SimOutcome resolve_battle(const BcStrategy& invader, const BcStrategy& defender,
                          const BcConfig& config, const Registry& reg) {
    Battle b{config, reg};

    auto build = [&](const BcStrategy& s, int side) {
        int seq = 0;
        for (const auto& e : s.roster) {
            BcUnitSpec spec = *reg.find_bc(e.unit_name);
            if (e.tier == BcTier::Gold) spec = apply_gold(spec);
            auto u = std::make_unique<Unit>();
            u->spec = spec;
            u->id = e.unit_name + "#" + std::to_string(++seq) + (e.tier == BcTier::Gold ? "g" : "");
            u->target_priority = e.target_priority;
            u->tier = e.tier;
            u->hp = u->max_hp = spec.health;
            u->attack = spec.attack;
            u->divine_shield = spec.has(BcEffectKind::DivineShield);
            u->revive_available = spec.has(BcEffectKind::ReviveOnce);
            b.line[side].push_back(std::move(u));
        }
    };
    build(invader, 0);
    build(defender, 1);

    // start-of-game effects in roster order, invader first
    for (int side = 0; side < 2; ++side) {
        for (size_t i = 0; i < b.line[side].size(); ++i) {
            Unit& u = *b.line[side][i];
            for (const auto& a : u.spec.abilities) {
                if (a.trigger != BcTrigger::StartOfGame) continue;
                switch (a.kind) {
                    case BcEffectKind::BuffNatureAtStart:
                    case BcEffectKind::BuffAllAtStart:
                        for (auto& f : b.line[side]) {
                            if (f.get() == &u) continue;
                            if (a.kind == BcEffectKind::BuffNatureAtStart &&
                                f->spec.element != BcElement::Nature)
                                continue;
                            f->attack += a.amount;
                            f->hp += a.amount2;
                            f->max_hp += a.amount2;
                            b.event("buff", u.id, f->id, a.amount);
                        }
                        break;
                    case BcEffectKind::HealthPerAllyAtStart: {
                        int allies = (int)b.line[side].size() - 1;
                        u.hp += a.amount * allies;
                        u.max_hp += a.amount * allies;
                        b.event("buff", u.id, u.id, a.amount * allies);
                        break;
                    }
                    case BcEffectKind::GrantAdjacentAtStart:
                        for (int off : {-1, 1}) {
                            int j = (int)i + off;
                            if (j < 0 || j >= (int)b.line[side].size()) continue;
                            Unit& f = *b.line[side][j];
                            f.divine_shield = true;
                            f.attack += a.amount;
                            b.event("buff", u.id, f.id, a.amount);
                        }
                        break;
                    default:
                        break;
                }
            }
        }
    }

    // initiative: more units first, tie -> invader
    int acting = b.line[0].size() >= b.line[1].size() ? 0 : 1;
    b.event("initiative", acting == 0 ? "Invader" : "Defender", "", 0);

    std::optional<Role> winner;
    while (b.step < config.attack_cap) {
        Unit* actor = b.take_next_actor(acting);
        if (!actor) break;
        int strikes = actor->spec.has(BcEffectKind::AttacksTwice) ? 2 : 1;
        for (int s = 0; s < strikes && actor->alive && b.step < config.attack_cap; ++s) {
            if (b.living(1 - acting) == 0) break;
            b.strike(acting, *actor);
        }
        bool inv_alive = b.living(0) > 0;
        bool def_alive = b.living(1) > 0;
        if (!def_alive) {
            winner = Role::Invader;  // covers the simultaneous wipe too
            break;
        }
        if (!inv_alive) {
            winner = Role::Defender;
            break;
        }
        acting = 1 - acting;
    }
    if (!winner) winner = Role::Defender;  // cap: the invader failed to break through

    b.event("win", std::string(to_string(*winner)), "", 0);

    SimOutcome out;
    out.outcome.winner = *winner;
    out.outcome.terminated_at = b.step;
    out.outcome.trace_digest = digest_trace(b.trace);
    out.outcome.phi_invader = b.phi(0);
    out.outcome.phi_defender = b.phi(1);
    if (config.record_trace) out.trace = std::move(b.trace);
    return out;
}

}  // namespace advgame
