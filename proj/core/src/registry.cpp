#include "advgame/registry.hpp"

#include <nlohmann/json.hpp>

#include "advgame/sim.hpp"

namespace advgame {

using nlohmann::json;

std::string_view to_string(BcElement e) {
    switch (e) {
        case BcElement::Fire: return "Fire";
        case BcElement::Water: return "Water";
        case BcElement::Nature: return "Nature";
        case BcElement::Earth: return "Earth";
        case BcElement::Neutral: return "Neutral";
    }
    return "?";
}

BcElement bc_element_from_string(std::string_view s) {
    if (s == "Fire") return BcElement::Fire;
    if (s == "Water") return BcElement::Water;
    if (s == "Nature") return BcElement::Nature;
    if (s == "Earth") return BcElement::Earth;
    if (s == "Neutral") return BcElement::Neutral;
    throw std::invalid_argument("unknown bc element: " + std::string(s));
}

bool bc_has_advantage(BcElement a, BcElement t) {
    return (a == BcElement::Fire && t == BcElement::Nature) ||
           (a == BcElement::Nature && t == BcElement::Water) ||
           (a == BcElement::Water && t == BcElement::Earth) ||
           (a == BcElement::Earth && t == BcElement::Fire);
}

bool BcUnitSpec::has(BcEffectKind k) const { return find(k) != nullptr; }

const BcAbility* BcUnitSpec::find(BcEffectKind k) const {
    for (const auto& a : abilities)
        if (a.kind == k) return &a;
    return nullptr;
}

BcUnitSpec apply_gold(const BcUnitSpec& bronze) {
    BcUnitSpec g = bronze;
    g.cost = bronze.cost * 3;
    g.attack = bronze.attack * 2;
    g.health = bronze.health * 2;
    for (auto& a : g.abilities) {
        if (a.numeric) {
            a.amount *= 2;
            a.amount2 *= 2;
        }
    }
    return g;
}

std::string_view to_string(TaElement e) {
    switch (e) {
        case TaElement::Fire: return "Fire";
        case TaElement::Water: return "Water";
        case TaElement::Dark: return "Dark";
        case TaElement::Wood: return "Wood";
        case TaElement::Earth: return "Earth";
        case TaElement::Light: return "Light";
    }
    return "?";
}

TaElement ta_element_from_string(std::string_view s) {
    if (s == "Fire") return TaElement::Fire;
    if (s == "Water") return TaElement::Water;
    if (s == "Dark") return TaElement::Dark;
    if (s == "Wood") return TaElement::Wood;
    if (s == "Earth") return TaElement::Earth;
    if (s == "Light") return TaElement::Light;
    throw std::invalid_argument("unknown ta element: " + std::string(s));
}

const std::vector<TaElement>& ta_slots_for(Role role) {
    static const std::vector<TaElement> invader{TaElement::Fire, TaElement::Water, TaElement::Dark};
    static const std::vector<TaElement> defender{TaElement::Wood, TaElement::Earth, TaElement::Light};
    return role == Role::Invader ? invader : defender;
}

double elemental_multiplier(TaElement a, TaElement t) {
    auto beats = [](TaElement x, TaElement y) {
        return (x == TaElement::Fire && y == TaElement::Wood) ||
               (x == TaElement::Wood && y == TaElement::Earth) ||
               (x == TaElement::Earth && y == TaElement::Water) ||
               (x == TaElement::Water && y == TaElement::Fire);
    };
    if ((a == TaElement::Light && t == TaElement::Dark) ||
        (a == TaElement::Dark && t == TaElement::Light))
        return 1.5;
    if (beats(a, t)) return 1.2;
    if (beats(t, a)) return 0.8;
    return 1.0;
}

Budget BudgetConfig::for_role(GameKind game, Role role) const {
    switch (game) {
        case GameKind::TowerDefense:
            return {role == Role::Defender ? td_defender : td_invader};
        case GameKind::BattleCard:
            return {bc};
        case GameKind::TurnAttribute:
            // per-character limit; validation applies it per character,
            // the total budget is three characters' worth
            return {ta_per_character * 3};
    }
    return {0};
}

namespace {

TdUnitSpec td(std::string name, TdSide side, int hp, int cost, int interval, int dmg, int speed,
              std::set<std::string> flags = {}) {
    TdUnitSpec u;
    u.name = std::move(name);
    u.side = side;
    u.health = hp;
    u.cost = cost;
    u.attack_interval_ms = interval;
    u.damage = dmg;
    u.speed = speed;
    u.flags = std::move(flags);
    return u;
}

BcAbility ab(BcEffectKind kind, BcTrigger trig, bool numeric = false, int amount = 0,
             int amount2 = 0, std::string token = {}) {
    BcAbility a;
    a.kind = kind;
    a.trigger = trig;
    a.numeric = numeric;
    a.amount = amount;
    a.amount2 = amount2;
    a.token = std::move(token);
    return a;
}

BcUnitSpec bc(std::string name, Role side, int atk, int hp, int cost, BcElement el,
              std::vector<BcAbility> abilities = {}) {
    BcUnitSpec u;
    u.name = std::move(name);
    u.side = side;
    u.attack = atk;
    u.health = hp;
    u.cost = cost;
    u.element = el;
    u.abilities = std::move(abilities);
    return u;
}

TaSkillSpec ta(std::string name, TaElement el, int cost) {
    return TaSkillSpec{std::move(name), el, cost};
}

Registry make_builtin() {
    Registry r;

    // ---- tower defense: human units
    const auto H = TdSide::Human;
    for (auto& u : {
             td("HandgunSoldier", H, 3, 100, 1000, 1, 0),
             td("RifleSoldier", H, 3, 200, 500, 1, 0),
             td("MachineGunSoldier", H, 3, 400, 250, 1, 0),
             td("ShieldSoldier", H, 15, 50, 0, 0, 0, {"shield_only"}),
             td("EnhancedShieldSoldier", H, 30, 100, 0, 0, 0, {"shield_only", "blocks_jump"}),
             td("FlamethrowerSoldier", H, 2, 200, 1000, 1, 0, {"burns"}),
             td("IceSoldier", H, 2, 200, 1000, 1, 0, {"slows"}),
             td("AntiAirSoldier", H, 2, 175, 1000, 1, 0, {"anti_air"}),
             td("Bomb", H, 50, 200, 0, 30, 0, {"aoe_3x3", "detonates_500ms"}),
             td("LinearExplosion", H, 50, 200, 0, 30, 0, {"aoe_row", "detonates_500ms"}),
             td("MagneticSoldier", H, 2, 100, 2000, 0, 0, {"magnetic_pulse"}),
             td("LightMage", H, 2, 150, 0, 0, 0, {"light_convert"}),
             td("RocketLauncherSoldier", H, 2, 600, 1000, 2, 0, {"rocket_splash"}),
         })
        r.td_units[u.name] = u;

    // ---- tower defense: demon units
    const auto D = TdSide::Demon;
    for (auto& u : {
             td("NormalDemon", D, 10, 100, 1000, 1, 2),
             td("GreatDemon", D, 20, 175, 1000, 1, 2),
             td("DemonKing", D, 100, 800, 1000, 5, 2),
             td("SpeedyDemon", D, 10, 150, 1000, 1, 4),
             td("ShieldDemon", D, 10, 175, 1000, 1, 2, {"shield_damage_reduction_70pct"}),
             td("MachineDemon", D, 20, 250, 1000, 3, 2, {"machine_body", "speed_boost_when_active"}),
             td("BouncingDemon", D, 10, 150, 1000, 1, 2, {"bouncing"}),
             td("ShieldBreakerDemon", D, 10, 150, 1000, 1, 2, {"shieldbreaker"}),
             td("FireDemon", D, 10, 150, 1000, 1, 2, {"fire_immune"}),
             td("FrostDemon", D, 10, 150, 1000, 1, 2, {"ice_immune"}),
             td("FlyingDemon", D, 10, 200, 1000, 1, 2, {"flying"}),
             td("ShadowDemon", D, 10, 300, 1000, 1, 2, {"shadow_row_immunity"}),
             td("SummoningDemon", D, 10, 300, 1000, 1, 1, {"summons_5000ms"}),
         })
        r.td_units[u.name] = u;

    // ---- battle card: invader units
    using K = BcEffectKind;
    using T = BcTrigger;
    const Role I = Role::Invader, F = Role::Defender;
    for (auto& u : {
             bc("FireLizard", I, 2, 2, 1, BcElement::Fire,
                {ab(K::ReflectToKiller, T::OnDeath, true, 2)}),
             bc("WaterElemental", I, 2, 2, 1, BcElement::Water,
                {ab(K::GainAttackOnAttack, T::OnAttack, true, 1)}),
             bc("PoisonFrog", I, 1, 1, 2, BcElement::Nature,
                {ab(K::DestroyOnDamage, T::Passive)}),
             bc("MoltenHound", I, 3, 1, 2, BcElement::Fire,
                {ab(K::SplashAllOnDeath, T::OnDeath, true, 1)}),
             bc("BattleFrenzy", I, 7, 4, 2, BcElement::Neutral,
                {ab(K::AttackDecay, T::OnAttack, true, 4)}),
             bc("BanditLeader", I, 8, 3, 3, BcElement::Neutral,
                {ab(K::OverkillCarry, T::Passive)}),
             bc("LavaGolem", I, 1, 8, 3, BcElement::Fire,
                {ab(K::Taunt, T::Passive), ab(K::BurnAttacker, T::OnDamaged, true, 3)}),
             bc("TideGuardian", I, 4, 2, 3, BcElement::Water,
                {ab(K::DivineShield, T::Passive), ab(K::AttacksTwice, T::Passive)}),
             bc("TideLord", I, 4, 9, 5, BcElement::Water,
                {ab(K::DoubleAttackWhenDamaged, T::OnDamaged)}),
             bc("Phoenix", I, 5, 5, 5, BcElement::Fire,
                {ab(K::SplashAdjacentAttack, T::Passive), ab(K::ReviveOnce, T::Passive)}),
             bc("ShadowOverlord", I, 4, 4, 5, BcElement::Neutral,
                {ab(K::SummonOnDeath, T::OnDeath, false, 0, 0, "SlowSkeleton")}),
         })
        r.bc_units[u.name] = u;

    // ---- battle card: defender units
    for (auto& u : {
             bc("Sapling", F, 2, 2, 1, BcElement::Nature,
                {ab(K::GainHealthOnAttack, T::OnAttack, true, 1)}),
             bc("RockBeetle", F, 1, 5, 1, BcElement::Earth, {ab(K::Taunt, T::Passive)}),
             bc("ForestSeer", F, 2, 2, 2, BcElement::Nature,
                {ab(K::BuffNatureAtStart, T::StartOfGame, true, 1, 2)}),
             bc("StoneWarrior", F, 2, 5, 2, BcElement::Earth,
                {ab(K::Taunt, T::Passive),
                 ab(K::SummonOnDeath, T::OnDeath, false, 0, 0, "RockBeetle")}),
             bc("EliteSoldier", F, 1, 1, 2, BcElement::Neutral,
                {ab(K::GrantAdjacentAtStart, T::StartOfGame, true, 1)}),
             bc("Paladin", F, 3, 6, 3, BcElement::Neutral,
                {ab(K::DivineShield, T::Passive), ab(K::PaladinRage, T::Passive, true, 2)}),
             bc("BlackRock", F, 5, 1, 3, BcElement::Earth,
                {ab(K::HealthPerAllyAtStart, T::StartOfGame, true, 3)}),
             bc("VineProtector", F, 5, 4, 3, BcElement::Nature,
                {ab(K::HealAllOnDeath, T::OnDeath, true, 2)}),
             bc("King", F, 3, 10, 5, BcElement::Neutral,
                {ab(K::SummonOnAttack, T::OnAttack, false, 0, 0, "Soldier")}),
             bc("MountainGiant", F, 4, 9, 5, BcElement::Earth,
                {ab(K::Taunt, T::Passive), ab(K::ReduceAttackerAttack, T::OnDamaged, true, 2)}),
             bc("AncientTreant", F, 4, 4, 5, BcElement::Nature,
                {ab(K::BuffAllAtStart, T::StartOfGame, true, 3, 3)}),
         })
        r.bc_units[u.name] = u;

    // summoned-only tokens
    r.bc_tokens["SlowSkeleton"] = bc("SlowSkeleton", I, 3, 1, 0, BcElement::Neutral);
    r.bc_tokens["Soldier"] = bc("Soldier", F, 2, 2, 0, BcElement::Neutral,
                                {ab(K::DivineShield, T::Passive)});

    // ---- turn attribute: 36 skills
    for (auto& s : {
             ta("flame_splash", TaElement::Fire, 1),
             ta("residual_warmth", TaElement::Fire, 1),
             ta("burst_flame_bomb", TaElement::Fire, 2),
             ta("flame_whirlwind", TaElement::Fire, 2),
             ta("magma_eruption", TaElement::Fire, 3),
             ta("hell_curtain", TaElement::Fire, 3),
             ta("stream_pierce", TaElement::Water, 1),
             ta("water_barrier", TaElement::Water, 1),
             ta("whirlpool_strangle", TaElement::Water, 2),
             ta("ice_branded", TaElement::Water, 2),
             ta("tsunami_ending", TaElement::Water, 3),
             ta("abyss_resonance", TaElement::Water, 3),
             ta("shadow_claw", TaElement::Dark, 1),
             ta("fear_whisper", TaElement::Dark, 1),
             ta("soul_siphon", TaElement::Dark, 2),
             ta("night_ambush", TaElement::Dark, 2),
             ta("final_announcment", TaElement::Dark, 3),
             ta("void_assimilation", TaElement::Dark, 3),
             ta("bud_healing", TaElement::Wood, 1),
             ta("parasitic_seed", TaElement::Wood, 1),
             ta("life_totem", TaElement::Wood, 2),
             ta("natural_purification", TaElement::Wood, 2),
             ta("forest_reincarnation", TaElement::Wood, 3),
             ta("poison_vine", TaElement::Wood, 3),
             ta("rock_armor", TaElement::Earth, 1),
             ta("earth_shock", TaElement::Earth, 1),
             ta("granite_barrier", TaElement::Earth, 2),
             ta("quicksand_trap", TaElement::Earth, 2),
             ta("earth_pulse", TaElement::Earth, 3),
             ta("core_rebound", TaElement::Earth, 3),
             ta("holy_glimmer", TaElement::Light, 1),
             ta("faith_emblem", TaElement::Light, 1),
             ta("divine_link", TaElement::Light, 2),
             ta("luminous_dispel", TaElement::Light, 2),
             ta("angelic_sanctuary", TaElement::Light, 3),
             ta("divine_sword", TaElement::Light, 3),
         })
        r.ta_skills[s.name] = s;

    // ---- strategic-function tags (MASR functional similarity)
    auto tag = [&r](const std::string& name, std::set<std::string> tags) {
        r.function_tags[name] = std::move(tags);
    };
    // TD humans
    tag("HandgunSoldier", {"attack", "economy"});
    tag("RifleSoldier", {"attack"});
    tag("MachineGunSoldier", {"attack"});
    tag("ShieldSoldier", {"defense", "economy"});
    tag("EnhancedShieldSoldier", {"defense"});
    tag("FlamethrowerSoldier", {"attack"});
    tag("IceSoldier", {"attack", "support"});
    tag("AntiAirSoldier", {"attack"});
    tag("Bomb", {"attack", "defense"});
    tag("LinearExplosion", {"attack", "defense"});
    tag("MagneticSoldier", {"support"});
    tag("LightMage", {"support"});
    tag("RocketLauncherSoldier", {"attack"});
    // TD demons
    tag("NormalDemon", {"attack", "economy"});
    tag("GreatDemon", {"attack", "defense"});
    tag("DemonKing", {"attack", "defense"});
    tag("SpeedyDemon", {"attack"});
    tag("ShieldDemon", {"attack", "defense"});
    tag("MachineDemon", {"attack", "defense"});
    tag("BouncingDemon", {"attack"});
    tag("ShieldBreakerDemon", {"attack"});
    tag("FireDemon", {"attack"});
    tag("FrostDemon", {"attack"});
    tag("FlyingDemon", {"attack"});
    tag("ShadowDemon", {"support"});
    tag("SummoningDemon", {"support", "economy"});
    // BCG
    tag("FireLizard", {"attack", "economy"});
    tag("WaterElemental", {"attack", "economy"});
    tag("PoisonFrog", {"attack"});
    tag("MoltenHound", {"attack"});
    tag("BattleFrenzy", {"attack"});
    tag("BanditLeader", {"attack"});
    tag("LavaGolem", {"defense"});
    tag("TideGuardian", {"attack", "defense"});
    tag("TideLord", {"attack"});
    tag("Phoenix", {"attack"});
    tag("ShadowOverlord", {"attack", "support"});
    tag("Sapling", {"attack", "economy"});
    tag("RockBeetle", {"defense", "economy"});
    tag("ForestSeer", {"support"});
    tag("StoneWarrior", {"defense"});
    tag("EliteSoldier", {"support"});
    tag("Paladin", {"defense", "attack"});
    tag("BlackRock", {"attack"});
    tag("VineProtector", {"attack", "support"});
    tag("King", {"defense", "support"});
    tag("MountainGiant", {"defense"});
    tag("AncientTreant", {"support"});
    // TAG
    for (const auto& [name, spec] : r.ta_skills) {
        (void)spec;
        std::set<std::string> tags;
        static const std::set<std::string> healing{"bud_healing", "life_totem", "holy_glimmer",
                                                   "forest_reincarnation"};
        static const std::set<std::string> defensive{
            "water_barrier", "rock_armor", "granite_barrier", "earth_pulse", "angelic_sanctuary",
            "faith_emblem", "divine_link", "fear_whisper", "hell_curtain", "abyss_resonance"};
        static const std::set<std::string> supportive{
            "residual_warmth", "luminous_dispel", "natural_purification", "ice_branded",
            "night_ambush", "quicksand_trap", "parasitic_seed", "stream_pierce", "divine_sword"};
        if (healing.count(name)) tags.insert("support");
        if (defensive.count(name)) tags.insert("defense");
        if (supportive.count(name)) tags.insert("support");
        if (tags.empty() || name == "flame_splash" || name == "burst_flame_bomb" ||
            name == "stream_pierce" || name == "earth_shock" || name == "divine_sword" ||
            name == "parasitic_seed" || name == "holy_glimmer")
            tags.insert("attack");
        if (spec.cost == 1) tags.insert("economy");
        r.function_tags[name] = tags;
    }

    return r;
}

json td_to_json(const TdUnitSpec& u) {
    return json{{"name", u.name},
                {"side", u.side == TdSide::Human ? "human" : "demon"},
                {"health", u.health},
                {"cost", u.cost},
                {"attack_interval_ms", u.attack_interval_ms},
                {"damage", u.damage},
                {"speed", u.speed},
                {"flags", u.flags}};
}

TdUnitSpec td_from_json(const json& j) {
    TdUnitSpec u;
    u.name = j.at("name").get<std::string>();
    u.side = j.at("side").get<std::string>() == "human" ? TdSide::Human : TdSide::Demon;
    u.health = j.at("health").get<int>();
    u.cost = j.at("cost").get<int>();
    u.attack_interval_ms = j.at("attack_interval_ms").get<int>();
    u.damage = j.at("damage").get<int>();
    u.speed = j.at("speed").get<int>();
    u.flags = j.at("flags").get<std::set<std::string>>();
    return u;
}

const char* trigger_name(BcTrigger t) {
    switch (t) {
        case BcTrigger::OnDeath: return "on_death";
        case BcTrigger::OnAttack: return "on_attack";
        case BcTrigger::OnDamaged: return "on_damaged";
        case BcTrigger::StartOfGame: return "start_of_game";
        case BcTrigger::Passive: return "passive";
    }
    return "?";
}

BcTrigger trigger_from_name(const std::string& s) {
    if (s == "on_death") return BcTrigger::OnDeath;
    if (s == "on_attack") return BcTrigger::OnAttack;
    if (s == "on_damaged") return BcTrigger::OnDamaged;
    if (s == "start_of_game") return BcTrigger::StartOfGame;
    return BcTrigger::Passive;
}

const char* effect_name(BcEffectKind k) {
    switch (k) {
        case BcEffectKind::Taunt: return "taunt";
        case BcEffectKind::DivineShield: return "divine_shield";
        case BcEffectKind::AttacksTwice: return "attacks_twice";
        case BcEffectKind::OverkillCarry: return "overkill_carry";
        case BcEffectKind::DestroyOnDamage: return "destroy_on_damage";
        case BcEffectKind::ReviveOnce: return "revive_once";
        case BcEffectKind::SplashAdjacentAttack: return "splash_adjacent_attack";
        case BcEffectKind::DoubleAttackWhenDamaged: return "double_attack_when_damaged";
        case BcEffectKind::ReflectToKiller: return "reflect_to_killer";
        case BcEffectKind::SplashAllOnDeath: return "splash_all_on_death";
        case BcEffectKind::GainAttackOnAttack: return "gain_attack_on_attack";
        case BcEffectKind::GainHealthOnAttack: return "gain_health_on_attack";
        case BcEffectKind::AttackDecay: return "attack_decay";
        case BcEffectKind::BurnAttacker: return "burn_attacker";
        case BcEffectKind::ReduceAttackerAttack: return "reduce_attacker_attack";
        case BcEffectKind::PaladinRage: return "paladin_rage";
        case BcEffectKind::HealAllOnDeath: return "heal_all_on_death";
        case BcEffectKind::HealthPerAllyAtStart: return "health_per_ally_at_start";
        case BcEffectKind::BuffNatureAtStart: return "buff_nature_at_start";
        case BcEffectKind::BuffAllAtStart: return "buff_all_at_start";
        case BcEffectKind::GrantAdjacentAtStart: return "grant_adjacent_at_start";
        case BcEffectKind::SummonOnDeath: return "summon_on_death";
        case BcEffectKind::SummonOnAttack: return "summon_on_attack";
    }
    return "?";
}

BcEffectKind effect_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(BcEffectKind::SummonOnAttack); ++i) {
        auto k = static_cast<BcEffectKind>(i);
        if (s == effect_name(k)) return k;
    }
    throw std::invalid_argument("unknown bc effect: " + s);
}

json bc_to_json(const BcUnitSpec& u) {
    json abilities = json::array();
    for (const auto& a : u.abilities) {
        json ja{{"effect", effect_name(a.kind)},
                {"trigger", trigger_name(a.trigger)},
                {"numeric", a.numeric},
                {"amount", a.amount},
                {"amount2", a.amount2}};
        if (!a.token.empty()) ja["token"] = a.token;
        abilities.push_back(ja);
    }
    return json{{"name", u.name},      {"side", std::string(to_string(u.side))},
                {"attack", u.attack},  {"health", u.health},
                {"cost", u.cost},      {"element", std::string(to_string(u.element))},
                {"abilities", abilities}};
}

BcUnitSpec bc_from_json(const json& j) {
    BcUnitSpec u;
    u.name = j.at("name").get<std::string>();
    u.side = role_from_string(j.at("side").get<std::string>());
    u.attack = j.at("attack").get<int>();
    u.health = j.at("health").get<int>();
    u.cost = j.at("cost").get<int>();
    u.element = bc_element_from_string(j.at("element").get<std::string>());
    for (const auto& ja : j.at("abilities")) {
        BcAbility a;
        a.kind = effect_from_name(ja.at("effect").get<std::string>());
        a.trigger = trigger_from_name(ja.at("trigger").get<std::string>());
        a.numeric = ja.at("numeric").get<bool>();
        a.amount = ja.at("amount").get<int>();
        a.amount2 = ja.at("amount2").get<int>();
        if (ja.contains("token")) a.token = ja.at("token").get<std::string>();
        u.abilities.push_back(a);
    }
    return u;
}

}  // namespace

const Registry& Registry::builtin() {
    static const Registry reg = make_builtin();
    return reg;
}

json Registry::to_json() const {
    json j;
    j["td_units"] = json::array();
    for (const auto& [_, u] : td_units) j["td_units"].push_back(td_to_json(u));
    j["bc_units"] = json::array();
    for (const auto& [_, u] : bc_units) j["bc_units"].push_back(bc_to_json(u));
    j["bc_tokens"] = json::array();
    for (const auto& [_, u] : bc_tokens) j["bc_tokens"].push_back(bc_to_json(u));
    j["ta_skills"] = json::array();
    for (const auto& [_, s] : ta_skills)
        j["ta_skills"].push_back(json{{"name", s.name},
                                      {"element", std::string(to_string(s.element))},
                                      {"cost", s.cost}});
    j["function_tags"] = function_tags;
    return j;
}

Registry Registry::from_json(const json& j) {
    Registry r;
    for (const auto& ju : j.at("td_units")) {
        auto u = td_from_json(ju);
        r.td_units[u.name] = u;
    }
    for (const auto& ju : j.at("bc_units")) {
        auto u = bc_from_json(ju);
        r.bc_units[u.name] = u;
    }
    for (const auto& ju : j.at("bc_tokens")) {
        auto u = bc_from_json(ju);
        r.bc_tokens[u.name] = u;
    }
    for (const auto& js : j.at("ta_skills")) {
        TaSkillSpec s{js.at("name").get<std::string>(),
                      ta_element_from_string(js.at("element").get<std::string>()),
                      js.at("cost").get<int>()};
        r.ta_skills[s.name] = s;
    }
    r.function_tags =
        j.at("function_tags").get<std::map<std::string, std::set<std::string>>>();
    return r;
}

std::string Registry::digest() const { return hex64(fnv1a64(to_json().dump())); }

const TdUnitSpec* Registry::find_td(const std::string& name) const {
    auto it = td_units.find(name);
    return it == td_units.end() ? nullptr : &it->second;
}

const BcUnitSpec* Registry::find_bc(const std::string& name) const {
    auto it = bc_units.find(name);
    return it == bc_units.end() ? nullptr : &it->second;
}

const TaSkillSpec* Registry::find_ta(const std::string& name) const {
    auto it = ta_skills.find(name);
    return it == ta_skills.end() ? nullptr : &it->second;
}

}  // namespace advgame
