#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace advgame {

enum class GameKind { TowerDefense, BattleCard, TurnAttribute };

std::string_view to_string(GameKind g);              // "TDG" / "BCG" / "TAG"
GameKind game_kind_from_string(std::string_view s);  // throws std::invalid_argument

enum class Role { Invader, Defender };

std::string_view to_string(Role r);
Role role_from_string(std::string_view s);
inline Role opponent_of(Role r) { return r == Role::Invader ? Role::Defender : Role::Invader; }

// Closed set of machine-readable failure classes shared across all three games.
enum class ViolationCode {
    BudgetExceeded,
    PlacementOutOfBounds,
    CellOccupied,
    RosterTooLarge,
    UnknownUnit,
    UnknownSkill,
    MalformedDocument,
    ProviderTimeout,
};

std::string_view to_string(ViolationCode c);
ViolationCode violation_code_from_string(std::string_view s);

struct Budget {
    int64_t limit = 0;  // game currency units, >= 0

    bool admits(int64_t declared_cost) const { return declared_cost <= limit; }
};

// Result of one simulation. Exactly one winner; draws are impossible by
// construction (each engine's tie rules plus a time/round cap are total).
// A forfeit names the violating side and the violation that caused it.
struct Outcome {
    Role winner = Role::Defender;
    bool forfeit = false;
    std::optional<Role> forfeited_by;
    std::optional<ViolationCode> violation;
    int64_t terminated_at = 0;   // simulation ms (TDG) or attack/round index (BCG/TAG)
    std::string trace_digest;    // hex of 64-bit hash over the event trace
    double phi_invader = 0.0;    // game-state evaluation per side, for CnstrR
    double phi_defender = 0.0;

    double phi_for(Role r) const { return r == Role::Invader ? phi_invader : phi_defender; }
    bool won_by(Role r) const { return winner == r; }
};

}  // namespace advgame
