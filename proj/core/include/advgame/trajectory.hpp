#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advgame/types.hpp"

namespace advgame {

// One round of one match, from one model's perspective. Two of these are
// emitted per round (one per side). This is the only schema the metrics
// pipeline consumes; logs are JSON-lines, one record per line.
struct TrajectoryRecord {
    std::string match_id;
    GameKind game = GameKind::TowerDefense;
    std::string model_self;
    std::string model_opponent;
    Role role = Role::Invader;
    bool moved_first = false;
    int round_index = 1;  // 1-based
    std::string strategy_doc;  // the structured strategy document, as JSON text
    bool valid = true;
    std::optional<ViolationCode> violation_code;
    int64_t declared_cost = 0;
    int64_t budget_limit = 0;
    Outcome outcome;
    bool is_revision = false;
    std::optional<std::string> feedback_given;

    bool won() const { return outcome.won_by(role); }
};

struct InvalidRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invariant checks: round_index >= 1, is_revision implies round_index > 1,
// !valid implies violation_code present. Throws InvalidRecord.
void check_invariants(const TrajectoryRecord& r);

nlohmann::json to_json(const Outcome& o);
Outcome outcome_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TrajectoryRecord& r);
TrajectoryRecord record_from_json(const nlohmann::json& j);

std::string serialize_record(const TrajectoryRecord& r);       // one JSON line, no newline
TrajectoryRecord parse_record(const std::string& line);        // throws InvalidRecord on bad input

// Deterministic per (game, pair, order): "TDG:botA>botB" where the model
// before '>' moves first.
std::string new_match_id(GameKind game, const std::string& first_mover, const std::string& second_mover);

// Append-only JSON-lines log. Single-writer contract; records themselves are
// immutable values.
class TrajectoryLog {
public:
    explicit TrajectoryLog(std::string path);
    void append(const TrajectoryRecord& r);  // checks invariants, throws InvalidRecord/IoError
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

std::vector<TrajectoryRecord> read_log(const std::string& path);         // throws IoError
std::vector<TrajectoryRecord> parse_log_lines(const std::string& text);  // in-memory variant

}  // namespace advgame
