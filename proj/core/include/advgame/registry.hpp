#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advgame/types.hpp"

namespace advgame {

// ---------------------------------------------------------------- tower defense

enum class TdSide { Human, Demon };

struct TdUnitSpec {
    std::string name;
    TdSide side = TdSide::Human;
    int health = 0;
    int cost = 0;
    int attack_interval_ms = 0;  // 0 = non-attacking
    int damage = 0;
    int speed = 0;               // demons; crossing calibration: speed 2 -> 14000 ms
    std::set<std::string> flags; // ability tags, see builtin registry
};

// ---------------------------------------------------------------- battle card

enum class BcElement { Fire, Water, Nature, Earth, Neutral };

std::string_view to_string(BcElement e);
BcElement bc_element_from_string(std::string_view s);

enum class BcTrigger { OnDeath, OnAttack, OnDamaged, StartOfGame, Passive };

enum class BcEffectKind {
    Taunt,                 // passive
    DivineShield,          // passive
    AttacksTwice,          // passive
    OverkillCarry,         // passive: excess damage rolls to the next target
    DestroyOnDamage,       // any minion damaged by this unit dies
    ReviveOnce,            // revive with full health after first death
    SplashAdjacentAttack,  // attack also hits enemies adjacent to the target
    DoubleAttackWhenDamaged,
    ReflectToKiller,       // amount
    SplashAllOnDeath,      // amount
    GainAttackOnAttack,    // amount (applies before the attack resolves)
    GainHealthOnAttack,    // amount (applies before the attack resolves)
    AttackDecay,           // amount subtracted from own attack per attack, floor 0
    BurnAttacker,          // amount, on_damaged
    ReduceAttackerAttack,  // amount, on_damaged, floor 0
    PaladinRage,           // amount per friendly divine-shield break
    HealAllOnDeath,        // amount
    HealthPerAllyAtStart,  // amount per other friendly minion
    BuffNatureAtStart,     // amount attack / amount2 health to Nature allies
    BuffAllAtStart,        // amount attack / amount2 health to all allies
    GrantAdjacentAtStart,  // divine shield + amount attack to adjacent minions
    SummonOnDeath,         // token name
    SummonOnAttack,        // token name (only if line has space)
};

struct BcAbility {
    BcEffectKind kind;
    BcTrigger trigger = BcTrigger::Passive;
    bool numeric = false;  // gold tier doubles amount/amount2 iff numeric
    int amount = 0;
    int amount2 = 0;
    std::string token;
};

struct BcUnitSpec {
    std::string name;
    Role side = Role::Invader;
    int attack = 0;
    int health = 0;
    int cost = 0;
    BcElement element = BcElement::Neutral;
    std::vector<BcAbility> abilities;

    bool has(BcEffectKind k) const;
    const BcAbility* find(BcEffectKind k) const;
};

// Gold tier: cost x3; attack, health and numeric effect magnitudes x2;
// non-numeric abilities untouched.
BcUnitSpec apply_gold(const BcUnitSpec& bronze);

// Does the attacker's element have the advantage? Cycle:
// Fire > Nature, Nature > Water, Water > Earth, Earth > Fire.
bool bc_has_advantage(BcElement attacker, BcElement target);

// ---------------------------------------------------------------- turn attribute

enum class TaElement { Fire, Water, Dark, Wood, Earth, Light };

std::string_view to_string(TaElement e);
TaElement ta_element_from_string(std::string_view s);

// Invader slots are Fire, Water, Dark; Defender slots are Wood, Earth, Light.
const std::vector<TaElement>& ta_slots_for(Role role);

// Effectiveness table: Fire->Wood, Wood->Earth, Earth->Water, Water->Fire = 1.2;
// the four reversed pairs = 0.8; Light<->Dark = 1.5; all else 1.0.
double elemental_multiplier(TaElement attacker, TaElement target);

struct TaSkillSpec {
    std::string name;
    TaElement element = TaElement::Fire;
    int cost = 0;  // in {1, 2, 3}
};

// ---------------------------------------------------------------- registry

// Versioned rule data loaded at startup. The built-in tables are the shipped
// defaults; a JSON data file with the same schema may override them.
class Registry {
public:
    std::map<std::string, TdUnitSpec> td_units;        // exactly 26 (13 human + 13 demon)
    std::map<std::string, BcUnitSpec> bc_units;        // the 22 purchasable units
    std::map<std::string, BcUnitSpec> bc_tokens;       // summoned-only: SlowSkeleton, Soldier
    std::map<std::string, TaSkillSpec> ta_skills;      // exactly 36
    // Static unit/skill -> strategic-function map used by the MASR
    // functional-similarity term: tags from {attack, defense, support, economy}.
    std::map<std::string, std::set<std::string>> function_tags;

    static const Registry& builtin();
    static Registry from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string digest() const;  // hash of canonical serialization, for --version

    const TdUnitSpec* find_td(const std::string& name) const;
    const BcUnitSpec* find_bc(const std::string& name) const;
    const TaSkillSpec* find_ta(const std::string& name) const;
};

// Default budgets. Limits are plain configuration, not rule data; the
// games only require that some limit exists.
struct BudgetConfig {
    int64_t td_defender = 1000;
    int64_t td_invader = 1000;
    int64_t bc = 12;
    int64_t ta_per_character = 6;

    Budget for_role(GameKind game, Role role) const;
};

}  // namespace advgame
