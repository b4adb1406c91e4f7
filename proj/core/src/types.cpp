#include "advgame/types.hpp"

namespace advgame {

std::string_view to_string(GameKind g) {
    switch (g) {
        case GameKind::TowerDefense: return "TDG";
        case GameKind::BattleCard: return "BCG";
        case GameKind::TurnAttribute: return "TAG";
    }
    return "?";
}

GameKind game_kind_from_string(std::string_view s) {
    if (s == "TDG") return GameKind::TowerDefense;
    if (s == "BCG") return GameKind::BattleCard;
    if (s == "TAG") return GameKind::TurnAttribute;
    throw std::invalid_argument("unknown game kind: " + std::string(s));
}

std::string_view to_string(Role r) {
    return r == Role::Invader ? "Invader" : "Defender";
}

Role role_from_string(std::string_view s) {
    if (s == "Invader") return Role::Invader;
    if (s == "Defender") return Role::Defender;
    throw std::invalid_argument("unknown role: " + std::string(s));
}

std::string_view to_string(ViolationCode c) {
    switch (c) {
        case ViolationCode::BudgetExceeded: return "BudgetExceeded";
        case ViolationCode::PlacementOutOfBounds: return "PlacementOutOfBounds";
        case ViolationCode::CellOccupied: return "CellOccupied";
        case ViolationCode::RosterTooLarge: return "RosterTooLarge";
        case ViolationCode::UnknownUnit: return "UnknownUnit";
        case ViolationCode::UnknownSkill: return "UnknownSkill";
        case ViolationCode::MalformedDocument: return "MalformedDocument";
        case ViolationCode::ProviderTimeout: return "ProviderTimeout";
    }
    return "?";
}

ViolationCode violation_code_from_string(std::string_view s) {
    if (s == "BudgetExceeded") return ViolationCode::BudgetExceeded;
    if (s == "PlacementOutOfBounds") return ViolationCode::PlacementOutOfBounds;
    if (s == "CellOccupied") return ViolationCode::CellOccupied;
    if (s == "RosterTooLarge") return ViolationCode::RosterTooLarge;
    if (s == "UnknownUnit") return ViolationCode::UnknownUnit;
    if (s == "UnknownSkill") return ViolationCode::UnknownSkill;
    if (s == "MalformedDocument") return ViolationCode::MalformedDocument;
    if (s == "ProviderTimeout") return ViolationCode::ProviderTimeout;
    throw std::invalid_argument("unknown violation code: " + std::string(s));
}

}  // namespace advgame
