#include "advgame/game_td.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace advgame {

double td_cells_per_ms(int speed) {
    // calibration: speed 2 covers the 11 columns in 14000 ms
    return static_cast<double>(speed) * 11.0 / (2.0 * 14000.0);
}

namespace {

enum class DamageType { Normal, Fire, Ice, Light };

struct Human {
    const TdUnitSpec* spec;
    int x, y;
    double hp;
    int cooldown_ms = 0;
    bool armed = false;       // bomb/linear: trigger seen
    int64_t detonate_at = 0;  // valid when armed
    std::string id;
};

struct Demon {
    const TdUnitSpec* spec;
    int y;
    double x_pos;
    double hp;
    int cooldown_ms = 0;
    bool slowed = false;
    bool defense_disabled = false;  // magnetic pulse
    bool activated = false;         // MachineDemon speed boost
    bool burn_active = false;
    int64_t next_burn_at = 0;
    int64_t burn_until = 0;
    int64_t next_summon_at = 0;
    double damage_taken = 0.0;
    std::string id;
};

struct PendingSpawn {
    const TdUnitSpec* spec;
    int y;
    int64_t at_ms;
    std::string id;
};

struct Engine {
    const TdConfig& cfg;
    const Registry& reg;
    int64_t t = 0;
    std::vector<Human> humans;
    std::vector<Demon> demons;
    std::vector<PendingSpawn> pending;
    std::vector<TraceEvent> trace;
    int demon_seq = 0;
    double initial_demon_hp = 0.0;

    // The digest always hashes the full trace; record_trace only controls
    // whether the events are returned to the caller.
    void event(std::string kind, std::string actor, std::string target, double amount) {
        trace.push_back({t, std::move(kind), std::move(actor), std::move(target), amount});
    }

    Human* human_at(int x, int y) {
        for (auto& h : humans)
            if (h.x == x && h.y == y && h.hp > 0) return &h;
        return nullptr;
    }

    bool light_mage_in_row(int y) {
        for (auto& h : humans)
            if (h.y == y && h.hp > 0 && h.spec->flags.count("light_convert")) return true;
        return false;
    }

    bool shadow_protected(const Demon& d) {
        for (auto& o : demons)
            if (&o != &d && o.hp > 0 && o.y == d.y && o.spec->flags.count("shadow_row_immunity"))
                return true;
        return false;
    }

    int effective_speed(const Demon& d) const {
        int s = d.spec->speed;
        if (d.activated && d.spec->flags.count("speed_boost_when_active")) s = 3;
        if (d.slowed) s = std::max(1, s / 2);
        return s;
    }

    // Applies one damage instance; returns the amount that actually landed.
    double damage_demon(Demon& d, double amount, DamageType type, bool anti_air_capable,
                        const std::string& source) {
        if (d.hp <= 0) return 0;
        if (d.spec->flags.count("flying") && !anti_air_capable) return 0;
        if (type != DamageType::Light && shadow_protected(d)) {
            event("absorbed", source, d.id, 0);
            return 0;
        }
        if (type == DamageType::Fire && d.spec->flags.count("fire_immune")) return 0;
        if (type == DamageType::Ice && d.spec->flags.count("ice_immune")) return 0;
        double dealt = amount;
        if (!d.defense_disabled && (d.spec->flags.count("shield_damage_reduction_70pct") ||
                                    d.spec->flags.count("machine_body")))
            dealt *= 0.3;
        d.hp -= dealt;
        d.damage_taken += dealt;
        if (dealt > 0 && d.spec->flags.count("speed_boost_when_active") && !d.activated) {
            d.activated = true;
            event("activate", d.id, "", 0);
        }
        event("hit", source, d.id, dealt);
        return dealt;
    }

    void hit_with_bullet(Human& h, Demon& d) {
        DamageType type = DamageType::Normal;
        if (h.spec->flags.count("burns")) type = DamageType::Fire;
        if (h.spec->flags.count("slows")) type = DamageType::Ice;
        if (light_mage_in_row(h.y)) type = DamageType::Light;
        bool aa = h.spec->flags.count("anti_air") > 0;

        if (h.spec->flags.count("rocket_splash")) {
            int cx = static_cast<int>(std::floor(d.x_pos));
            int cy = d.y;
            for (auto& o : demons) {
                if (o.hp <= 0) continue;
                int ox = static_cast<int>(std::floor(o.x_pos));
                if (std::abs(ox - cx) <= 1 && std::abs(o.y - cy) <= 1)
                    damage_demon(o, h.spec->damage, type, aa, h.id);
            }
            return;
        }

        double landed = damage_demon(d, h.spec->damage, type, aa, h.id);
        if (landed > 0) {
            if (h.spec->flags.count("slows") && !d.spec->flags.count("ice_immune") && !d.slowed) {
                d.slowed = true;
                event("slow", h.id, d.id, 0);
            }
            if (h.spec->flags.count("burns") && !d.spec->flags.count("fire_immune")) {
                if (!d.burn_active) d.next_burn_at = t + 1000;
                d.burn_active = true;
                d.burn_until = t + 1000;
            }
        }
    }

    Demon* frontmost_target(const Human& h, bool require_defensive_flag = false) {
        Demon* best = nullptr;
        for (auto& d : demons) {
            if (d.hp <= 0 || d.y != h.y || d.x_pos < h.x) continue;
            if (d.spec->flags.count("flying") && !h.spec->flags.count("anti_air")) continue;
            if (require_defensive_flag) {
                bool defensive = d.spec->flags.count("shield_damage_reduction_70pct") ||
                                 d.spec->flags.count("machine_body");
                if (!defensive || d.defense_disabled) continue;
            }
            if (!best || d.x_pos < best->x_pos) best = &d;
        }
        return best;
    }

    bool demon_in_blast(const Human& h, const Demon& d) const {
        if (d.spec->flags.count("flying")) return false;
        if (h.spec->flags.count("aoe_row")) return d.y == h.y;
        int cx = static_cast<int>(std::floor(d.x_pos));
        return std::abs(cx - h.x) <= 1 && std::abs(d.y - h.y) <= 1;
    }

    void spawn_phase() {
        for (auto& p : pending) {
            if (p.at_ms > t) continue;
            Demon d;
            d.spec = p.spec;
            d.y = p.y;
            d.x_pos = 11.0;
            d.hp = p.spec->health;
            if (p.spec->flags.count("summons_5000ms")) d.next_summon_at = t + 5000;
            d.id = p.id;
            event("spawn", d.id, "", d.x_pos);
            demons.push_back(std::move(d));
        }
        std::erase_if(pending, [&](const PendingSpawn& p) { return p.at_ms <= t; });

        // summoners drop a NormalDemon one cell to their left every 5000 ms
        size_t n = demons.size();
        for (size_t i = 0; i < n; ++i) {
            Demon& s = demons[i];
            if (s.hp <= 0 || !s.spec->flags.count("summons_5000ms")) continue;
            if (t < s.next_summon_at) continue;
            s.next_summon_at += 5000;
            Demon d;
            d.spec = reg.find_td("NormalDemon");
            d.y = s.y;
            d.x_pos = std::max(0.0, s.x_pos - 1.0);
            d.hp = d.spec->health;
            d.id = "NormalDemon#s" + std::to_string(++demon_seq);
            initial_demon_hp += d.hp;
            event("summon", s.id, d.id, d.x_pos);
            demons.push_back(std::move(d));
        }
    }

    void human_attack_phase() {
        for (auto& h : humans) {
            if (h.hp <= 0) continue;

            if (h.spec->flags.count("detonates_500ms")) {
                if (!h.armed) {
                    for (auto& d : demons)
                        if (d.hp > 0 && demon_in_blast(h, d)) {
                            h.armed = true;
                            h.detonate_at = t + 500;
                            event("armed", h.id, d.id, 0);
                            break;
                        }
                } else if (t >= h.detonate_at) {
                    for (auto& d : demons)
                        if (d.hp > 0 && demon_in_blast(h, d))
                            damage_demon(d, h.spec->damage, DamageType::Normal, false, h.id);
                    event("explode", h.id, "", h.spec->damage);
                    h.hp = 0;  // destroyed after one detonation
                }
                continue;
            }

            if (h.spec->attack_interval_ms == 0) continue;  // shields, LightMage
            h.cooldown_ms = std::max(0, h.cooldown_ms - cfg.tick_ms);
            if (h.cooldown_ms > 0) continue;

            if (h.spec->flags.count("magnetic_pulse")) {
                if (Demon* d = frontmost_target(h, /*require_defensive_flag=*/true)) {
                    d->defense_disabled = true;
                    event("disable", h.id, d->id, 0);
                    h.cooldown_ms = h.spec->attack_interval_ms;
                }
                continue;
            }

            if (Demon* d = frontmost_target(h)) {
                hit_with_bullet(h, *d);
                h.cooldown_ms = h.spec->attack_interval_ms;
            }
        }
    }

    Human* engaged_human(const Demon& d) {
        if (d.spec->flags.count("flying")) return nullptr;  // passes through
        int cell = static_cast<int>(std::floor(d.x_pos));
        if (cell < 0 || cell > 10) return nullptr;
        return human_at(cell, d.y);
    }

    void demon_attack_phase() {
        for (auto& d : demons) {
            if (d.hp <= 0) continue;
            d.cooldown_ms = std::max(0, d.cooldown_ms - cfg.tick_ms);
            Human* h = engaged_human(d);
            if (!h || d.cooldown_ms > 0) continue;
            double dmg = d.spec->damage;
            if (d.spec->flags.count("shieldbreaker") && h->spec->flags.count("shield_only"))
                dmg *= 5;
            h->hp -= dmg;
            event("melee", d.id, h->id, dmg);
            d.cooldown_ms = d.spec->attack_interval_ms;
        }
    }

    void movement_phase() {
        for (auto& d : demons) {
            if (d.hp <= 0) continue;
            if (engaged_human(d)) continue;  // stopped in melee
            double rate = td_cells_per_ms(effective_speed(d));
            double next = d.x_pos - rate * cfg.tick_ms;
            // a bouncing demon leaps exactly one blocker per encounter,
            // landing one cell to its left; EnhancedShieldSoldier blocks it
            int next_cell = static_cast<int>(std::floor(next));
            if (next_cell >= 0 && next_cell <= 10) {
                if (Human* blocker = human_at(next_cell, d.y)) {
                    if (d.spec->flags.count("bouncing") &&
                        !blocker->spec->flags.count("blocks_jump")) {
                        event("jump", d.id, blocker->id, next_cell - 1);
                        d.x_pos = next_cell - 1 + 0.999;  // just left of the blocker's cell
                        continue;
                    }
                }
            }
            d.x_pos = next;
        }
    }

    void status_phase() {
        for (auto& d : demons) {
            if (d.hp <= 0 || !d.burn_active) continue;
            if (t > d.burn_until && t >= d.next_burn_at) {
                d.burn_active = false;
                continue;
            }
            if (t >= d.next_burn_at) {
                d.next_burn_at += 1000;
                double dealt = 1.0;
                if (!d.defense_disabled && (d.spec->flags.count("shield_damage_reduction_70pct") ||
                                            d.spec->flags.count("machine_body")))
                    dealt *= 0.3;
                d.hp -= dealt;
                d.damage_taken += dealt;
                event("burn", "", d.id, dealt);
            }
        }
    }

    // Returns the winner if the simulation ended this tick.
    std::optional<Role> death_and_win_phase() {
        for (auto& h : humans)
            if (h.hp <= 0 && h.hp > -1e17) {
                event("death", "", h.id, 0);
                h.hp = -1e18;  // tombstone, logged once
            }
        for (auto& d : demons)
            if (d.hp <= 0 && d.hp > -1e17) {
                event("death", "", d.id, 0);
                d.hp = -1e18;
            }

        for (auto& d : demons)
            if (d.hp > 0 && d.x_pos < 0) {
                event("cross", d.id, "", d.y);
                return Role::Invader;
            }

        bool any_alive = std::any_of(demons.begin(), demons.end(),
                                     [](const Demon& d) { return d.hp > 0; });
        bool summoner_alive = std::any_of(demons.begin(), demons.end(), [](const Demon& d) {
            return d.hp > 0 && d.spec->flags.count("summons_5000ms");
        });
        if (!any_alive && !summoner_alive && pending.empty()) return Role::Defender;
        return std::nullopt;
    }

    double phi_defender() const {
        double destroyed = 0;
        for (const auto& d : demons) destroyed += std::min(d.damage_taken, (double)d.spec->health);
        double killed_fraction = initial_demon_hp > 0 ? destroyed / initial_demon_hp : 1.0;
        double progress = 0;
        for (const auto& d : demons)
            if (d.hp > 0) progress = std::max(progress, std::clamp((11.0 - d.x_pos) / 11.0, 0.0, 1.0));
        return killed_fraction - progress;
    }
};

}  // namespace

SimOutcome simulate_td(const TdStrategy& defender, const TdStrategy& invader,
                       const TdConfig& config, const Registry& reg) {
    Engine e{config, reg};

    for (const auto& p : defender.placements) {
        const auto* spec = reg.find_td(p.unit_name);
        Human h;
        h.spec = spec;
        h.x = p.x;
        h.y = p.y;
        h.hp = spec->health;
        h.id = p.unit_name + "@" + std::to_string(p.x) + "," + std::to_string(p.y);
        e.humans.push_back(std::move(h));
    }
    int seq = 0;
    for (const auto& p : invader.spawns) {
        const auto* spec = reg.find_td(p.unit_name);
        e.pending.push_back({spec, p.y, p.spawn_time_ms, p.unit_name + "#" + std::to_string(++seq)});
        e.initial_demon_hp += spec->health;
    }
    // stable processing order for identical spawn times
    std::stable_sort(e.pending.begin(), e.pending.end(),
                     [](const PendingSpawn& a, const PendingSpawn& b) { return a.at_ms < b.at_ms; });

    std::optional<Role> winner;
    for (e.t = 0; e.t <= config.time_cap_ms; e.t += config.tick_ms) {
        e.spawn_phase();
        e.human_attack_phase();
        e.demon_attack_phase();
        e.movement_phase();
        e.status_phase();
        winner = e.death_and_win_phase();
        if (winner) break;
    }
    if (!winner) winner = Role::Defender;  // time cap: nothing crossed, invasion failed
    e.event("win", std::string(to_string(*winner)), "", 0);

    SimOutcome out;
    out.outcome.winner = *winner;
    out.outcome.terminated_at = std::min(e.t, config.time_cap_ms);
    out.outcome.trace_digest = digest_trace(e.trace);
    out.outcome.phi_defender = e.phi_defender();
    out.outcome.phi_invader = -out.outcome.phi_defender;
    if (config.record_trace) out.trace = std::move(e.trace);
    return out;
}

}  // namespace advgame
