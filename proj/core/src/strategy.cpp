#include "advgame/strategy.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace advgame {

using nlohmann::json;

std::string_view to_string(BcTier t) { return t == BcTier::Bronze ? "bronze" : "gold"; }

namespace {

const std::set<std::string> kBcPriorities{"leftmost", "lowest_hp", "highest_attack"};
const std::set<std::string> kTaPolicies{"first", "lowest_hp", "highest_threat"};

ValidationResult fail(ViolationCode code, std::string detail) {
    ValidationResult res;
    res.violation = Violation{code, std::move(detail)};
    return res;
}

// ---- tower defense

ValidationResult validate_td(const json& j, Role role, Budget budget, const Registry& reg) {
    TdStrategy s;
    s.role = role;
    if (role == Role::Defender) {
        if (!j.contains("placements") || !j["placements"].is_array())
            return fail(ViolationCode::MalformedDocument, "defender document needs a placements array");
        for (const auto& jp : j["placements"]) {
            if (!jp.is_object() || !jp.contains("unit_name") || !jp["unit_name"].is_string() ||
                !jp.contains("x") || !jp["x"].is_number_integer() || !jp.contains("y") ||
                !jp["y"].is_number_integer())
                return fail(ViolationCode::MalformedDocument, "placement needs unit_name, x, y");
            s.placements.push_back(
                {jp["unit_name"].get<std::string>(), jp["x"].get<int>(), jp["y"].get<int>()});
        }
    } else {
        if (!j.contains("spawns") || !j["spawns"].is_array())
            return fail(ViolationCode::MalformedDocument, "invader document needs a spawns array");
        for (const auto& jp : j["spawns"]) {
            if (!jp.is_object() || !jp.contains("unit_name") || !jp["unit_name"].is_string() ||
                !jp.contains("y") || !jp["y"].is_number_integer() ||
                !jp.contains("spawn_time_ms") || !jp["spawn_time_ms"].is_number_integer())
                return fail(ViolationCode::MalformedDocument, "spawn needs unit_name, y, spawn_time_ms");
            s.spawns.push_back({jp["unit_name"].get<std::string>(), jp["y"].get<int>(),
                                jp["spawn_time_ms"].get<int64_t>()});
        }
    }

    const TdSide want = role == Role::Defender ? TdSide::Human : TdSide::Demon;
    int64_t cost = 0;
    for (const auto& p : s.placements) {
        const auto* u = reg.find_td(p.unit_name);
        if (!u || u->side != want) return fail(ViolationCode::UnknownUnit, p.unit_name);
        cost += u->cost;
    }
    for (const auto& p : s.spawns) {
        const auto* u = reg.find_td(p.unit_name);
        if (!u || u->side != want) return fail(ViolationCode::UnknownUnit, p.unit_name);
        cost += u->cost;
    }

    for (const auto& p : s.placements)
        if (p.x < 0 || p.x > 10 || p.y < 0 || p.y > 4)
            return fail(ViolationCode::PlacementOutOfBounds,
                        p.unit_name + " at (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
    for (const auto& p : s.spawns)
        if (p.y < 0 || p.y > 4 || p.spawn_time_ms < 0)
            return fail(ViolationCode::PlacementOutOfBounds, p.unit_name + " spawn");

    std::set<std::pair<int, int>> cells;
    for (const auto& p : s.placements)
        if (!cells.insert({p.x, p.y}).second)
            return fail(ViolationCode::CellOccupied,
                        "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");

    s.declared_cost = cost;
    ValidationResult res;
    res.cost = cost;
    res.strategy = s;
    if (!budget.admits(cost))
        res.violation = Violation{ViolationCode::BudgetExceeded,
                                  "cost " + std::to_string(cost) + " > " + std::to_string(budget.limit)};
    return res;
}

// ---- battle card

ValidationResult validate_bc(const json& j, Role role, Budget budget, const Registry& reg) {
    BcStrategy s;
    s.role = role;
    if (!j.contains("roster") || !j["roster"].is_array() || j["roster"].empty())
        return fail(ViolationCode::MalformedDocument, "document needs a non-empty roster array");
    for (const auto& je : j["roster"]) {
        if (!je.is_object() || !je.contains("unit_name") || !je["unit_name"].is_string())
            return fail(ViolationCode::MalformedDocument, "roster entry needs unit_name");
        BcRosterEntry e;
        e.unit_name = je["unit_name"].get<std::string>();
        if (je.contains("tier")) {
            if (!je["tier"].is_string()) return fail(ViolationCode::MalformedDocument, "tier");
            std::string t = je["tier"].get<std::string>();
            if (t == "bronze")
                e.tier = BcTier::Bronze;
            else if (t == "gold")
                e.tier = BcTier::Gold;
            else
                return fail(ViolationCode::MalformedDocument, "tier must be bronze or gold");
        }
        if (je.contains("target_priority")) {
            if (!je["target_priority"].is_string() ||
                !kBcPriorities.count(je["target_priority"].get<std::string>()))
                return fail(ViolationCode::MalformedDocument, "unknown target_priority");
            e.target_priority = je["target_priority"].get<std::string>();
        }
        s.roster.push_back(e);
    }

    int64_t cost = 0;
    for (const auto& e : s.roster) {
        const auto* u = reg.find_bc(e.unit_name);
        if (!u || u->side != role) return fail(ViolationCode::UnknownUnit, e.unit_name);
        cost += e.tier == BcTier::Gold ? u->cost * 3 : u->cost;
    }

    if (s.roster.size() > 7)
        return fail(ViolationCode::RosterTooLarge, std::to_string(s.roster.size()) + " units");

    s.declared_cost = cost;
    ValidationResult res;
    res.cost = cost;
    res.strategy = s;
    if (!budget.admits(cost))
        res.violation = Violation{ViolationCode::BudgetExceeded,
                                  "cost " + std::to_string(cost) + " > " + std::to_string(budget.limit)};
    return res;
}

// ---- turn attribute

ValidationResult validate_ta(const json& j, Role role, Budget per_char_budget, const Registry& reg) {
    TaStrategy s;
    s.role = role;
    if (!j.contains("characters") || !j["characters"].is_array())
        return fail(ViolationCode::MalformedDocument, "document needs a characters array");
    for (const auto& jc : j["characters"]) {
        if (!jc.is_object() || !jc.contains("element") || !jc["element"].is_string() ||
            !jc.contains("skills") || !jc["skills"].is_array())
            return fail(ViolationCode::MalformedDocument, "character needs element and skills");
        TaCharacterPick c;
        try {
            c.element = ta_element_from_string(jc["element"].get<std::string>());
        } catch (const std::invalid_argument&) {
            return fail(ViolationCode::MalformedDocument, "unknown element");
        }
        for (const auto& js : jc["skills"]) {
            if (!js.is_string()) return fail(ViolationCode::MalformedDocument, "skill names");
            c.skills.push_back(js.get<std::string>());
        }
        if (jc.contains("target_policy")) {
            if (!jc["target_policy"].is_string() ||
                !kTaPolicies.count(jc["target_policy"].get<std::string>()))
                return fail(ViolationCode::MalformedDocument, "unknown target_policy");
            c.target_policy = jc["target_policy"].get<std::string>();
        }
        s.characters.push_back(c);
    }

    if (s.characters.size() != 3)
        return fail(ViolationCode::MalformedDocument, "exactly 3 characters required");
    const auto& slots = ta_slots_for(role);
    for (size_t i = 0; i < 3; ++i)
        if (s.characters[i].element != slots[i])
            return fail(ViolationCode::MalformedDocument,
                        "slot " + std::to_string(i + 1) + " must be " +
                            std::string(to_string(slots[i])));
    for (auto& c : s.characters) {
        if (c.skills.size() != 3)
            return fail(ViolationCode::MalformedDocument, "each character needs exactly 3 skills");
        for (const auto& name : c.skills) {
            const auto* sk = reg.find_ta(name);
            if (!sk || sk->element != c.element) return fail(ViolationCode::UnknownSkill, name);
        }
    }

    int64_t total = 0;
    for (auto& c : s.characters) {
        int64_t ccost = 0;
        for (const auto& name : c.skills) ccost += reg.find_ta(name)->cost;
        c.declared_cost = ccost;
        total += ccost;
    }
    ValidationResult res;
    res.cost = total;
    res.strategy = s;
    for (const auto& c : s.characters)
        if (!per_char_budget.admits(c.declared_cost)) {
            res.violation = Violation{ViolationCode::BudgetExceeded,
                                      std::string(to_string(c.element)) + " character cost " +
                                          std::to_string(c.declared_cost) + " > " +
                                          std::to_string(per_char_budget.limit)};
            break;
        }
    return res;
}

}  // namespace

ValidationResult validate(const std::string& doc_text, GameKind game, Role role, Budget budget,
                          const Registry& reg) {
    json j = json::parse(doc_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return fail(ViolationCode::MalformedDocument, "not a JSON object");
    if (j.contains("role")) {
        if (!j["role"].is_string())
            return fail(ViolationCode::MalformedDocument, "role must be a string");
        try {
            if (role_from_string(j["role"].get<std::string>()) != role)
                return fail(ViolationCode::MalformedDocument, "document role does not match");
        } catch (const std::invalid_argument&) {
            return fail(ViolationCode::MalformedDocument, "unknown role");
        }
    }
    switch (game) {
        case GameKind::TowerDefense: return validate_td(j, role, budget, reg);
        case GameKind::BattleCard: return validate_bc(j, role, budget, reg);
        case GameKind::TurnAttribute: {
            // TAG budgets are per character
            Budget per_char{budget.limit / 3};
            return validate_ta(j, role, per_char, reg);
        }
    }
    return fail(ViolationCode::MalformedDocument, "unknown game");
}

int64_t cost_of(const Strategy& s, const Registry& reg) {
    int64_t cost = 0;
    if (const auto* td = std::get_if<TdStrategy>(&s)) {
        auto add = [&](const std::string& name) {
            const auto* u = reg.find_td(name);
            if (!u) throw std::invalid_argument("unknown unit: " + name);
            cost += u->cost;
        };
        for (const auto& p : td->placements) add(p.unit_name);
        for (const auto& p : td->spawns) add(p.unit_name);
    } else if (const auto* bc = std::get_if<BcStrategy>(&s)) {
        for (const auto& e : bc->roster) {
            const auto* u = reg.find_bc(e.unit_name);
            if (!u) throw std::invalid_argument("unknown unit: " + e.unit_name);
            cost += e.tier == BcTier::Gold ? u->cost * 3 : u->cost;
        }
    } else {
        const auto& ta = std::get<TaStrategy>(s);
        for (const auto& c : ta.characters)
            for (const auto& name : c.skills) {
                const auto* sk = reg.find_ta(name);
                if (!sk) throw std::invalid_argument("unknown skill: " + name);
                cost += sk->cost;
            }
    }
    return cost;
}

json to_json(const TdStrategy& s) {
    json j{{"role", to_string(s.role)}, {"declared_cost", s.declared_cost}};
    if (s.role == Role::Defender) {
        j["placements"] = json::array();
        for (const auto& p : s.placements)
            j["placements"].push_back({{"unit_name", p.unit_name}, {"x", p.x}, {"y", p.y}});
    } else {
        j["spawns"] = json::array();
        for (const auto& p : s.spawns)
            j["spawns"].push_back({{"unit_name", p.unit_name},
                                   {"y", p.y},
                                   {"spawn_time_ms", p.spawn_time_ms}});
    }
    return j;
}

json to_json(const BcStrategy& s) {
    json roster = json::array();
    for (const auto& e : s.roster)
        roster.push_back({{"unit_name", e.unit_name},
                          {"tier", std::string(to_string(e.tier))},
                          {"target_priority", e.target_priority}});
    return json{{"role", to_string(s.role)}, {"roster", roster}, {"declared_cost", s.declared_cost}};
}

json to_json(const TaStrategy& s) {
    json chars = json::array();
    for (const auto& c : s.characters)
        chars.push_back({{"element", std::string(to_string(c.element))},
                         {"skills", c.skills},
                         {"target_policy", c.target_policy},
                         {"declared_cost", c.declared_cost}});
    return json{{"role", to_string(s.role)}, {"characters", chars}};
}

json strategy_to_json(const Strategy& s) {
    return std::visit([](const auto& v) { return to_json(v); }, s);
}

std::string strategy_to_text(const Strategy& s) { return strategy_to_json(s).dump(); }

std::set<std::string> action_set(const Strategy& s) {
    std::set<std::string> out;
    if (const auto* td = std::get_if<TdStrategy>(&s)) {
        for (const auto& p : td->placements) out.insert(p.unit_name);
        for (const auto& p : td->spawns) out.insert(p.unit_name);
    } else if (const auto* bc = std::get_if<BcStrategy>(&s)) {
        for (const auto& e : bc->roster) out.insert(e.unit_name);
    } else {
        for (const auto& c : std::get<TaStrategy>(s).characters)
            for (const auto& name : c.skills) out.insert(name);
    }
    return out;
}

std::set<std::string> function_tag_set(const Strategy& s, const Registry& reg) {
    std::set<std::string> out;
    for (const auto& name : action_set(s)) {
        auto it = reg.function_tags.find(name);
        if (it != reg.function_tags.end()) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

}  // namespace advgame
