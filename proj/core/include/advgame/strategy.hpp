#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advgame/registry.hpp"
#include "advgame/types.hpp"

namespace advgame {

// ---------------------------------------------------------------- documents

struct TdPlacement {
    std::string unit_name;
    int x = 0;  // 0..10
    int y = 0;  // 0..4
};

struct TdSpawn {
    std::string unit_name;
    int y = 0;
    int64_t spawn_time_ms = 0;
};

struct TdStrategy {
    Role role = Role::Defender;
    std::vector<TdPlacement> placements;  // defender
    std::vector<TdSpawn> spawns;          // invader
    int64_t declared_cost = 0;
};

enum class BcTier { Bronze, Gold };

std::string_view to_string(BcTier t);

struct BcRosterEntry {
    std::string unit_name;
    BcTier tier = BcTier::Bronze;
    std::string target_priority = "leftmost";  // leftmost | lowest_hp | highest_attack
};

struct BcStrategy {
    Role role = Role::Invader;
    std::vector<BcRosterEntry> roster;  // 1..7
    int64_t declared_cost = 0;
};

struct TaCharacterPick {
    TaElement element = TaElement::Fire;  // fixed by role slot
    std::vector<std::string> skills;      // exactly 3, from this element's pool
    std::string target_policy = "first";  // first | lowest_hp | highest_threat
    int64_t declared_cost = 0;
};

struct TaStrategy {
    Role role = Role::Invader;
    std::vector<TaCharacterPick> characters;  // exactly 3
};

using Strategy = std::variant<TdStrategy, BcStrategy, TaStrategy>;

// ---------------------------------------------------------------- validation

struct Violation {
    ViolationCode code;
    std::string detail;
};

struct ValidationResult {
    std::optional<Violation> violation;  // empty = Valid
    // Authoritative cost recomputed from the registry (0 if names did not
    // resolve); the record's declared_cost.
    int64_t cost = 0;
    std::optional<Strategy> strategy;  // present iff the document parsed

    bool valid() const { return !violation.has_value(); }
};

// Never throws for any parseable text; the first failing check determines the
// code, in order: MalformedDocument, UnknownUnit/UnknownSkill, structural
// bounds, CellOccupied/RosterTooLarge, BudgetExceeded.
ValidationResult validate(const std::string& doc_text, GameKind game, Role role, Budget budget,
                          const Registry& reg = Registry::builtin());

// Registry cost of an already-parsed strategy (gold x3 for BCG; TAG sums all
// three characters). Throws std::invalid_argument on unresolved names.
int64_t cost_of(const Strategy& s, const Registry& reg = Registry::builtin());

// Serialization of strategy documents (the schemas published in docs/).
nlohmann::json to_json(const TdStrategy& s);
nlohmann::json to_json(const BcStrategy& s);
nlohmann::json to_json(const TaStrategy& s);
nlohmann::json strategy_to_json(const Strategy& s);
std::string strategy_to_text(const Strategy& s);

// Unit/skill name set and function-tag set, the MASR similarity features.
std::set<std::string> action_set(const Strategy& s);
std::set<std::string> function_tag_set(const Strategy& s, const Registry& reg = Registry::builtin());

}  // namespace advgame
