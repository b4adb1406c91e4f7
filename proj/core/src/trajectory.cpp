#include "advgame/trajectory.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace advgame {

using nlohmann::json;

void check_invariants(const TrajectoryRecord& r) {
    if (r.match_id.empty()) throw InvalidRecord("match_id empty");
    if (r.model_self.empty() || r.model_opponent.empty())
        throw InvalidRecord("model identifiers must be non-empty");
    if (r.round_index < 1) throw InvalidRecord("round_index must be >= 1");
    if (r.is_revision && r.round_index == 1)
        throw InvalidRecord("is_revision=true requires round_index > 1");
    if (!r.valid && !r.violation_code.has_value())
        throw InvalidRecord("invalid record must carry a violation_code");
    if (r.budget_limit < 0) throw InvalidRecord("budget_limit must be >= 0");
}

json to_json(const Outcome& o) {
    json j{
        {"winner", to_string(o.winner)},
        {"forfeit", o.forfeit},
        {"terminated_at", o.terminated_at},
        {"trace_digest", o.trace_digest},
        {"phi_invader", o.phi_invader},
        {"phi_defender", o.phi_defender},
    };
    if (o.forfeited_by) j["forfeited_by"] = to_string(*o.forfeited_by);
    if (o.violation) j["violation_code"] = to_string(*o.violation);
    return j;
}

Outcome outcome_from_json(const json& j) {
    Outcome o;
    o.winner = role_from_string(j.at("winner").get<std::string>());
    o.forfeit = j.at("forfeit").get<bool>();
    o.terminated_at = j.at("terminated_at").get<int64_t>();
    o.trace_digest = j.at("trace_digest").get<std::string>();
    o.phi_invader = j.at("phi_invader").get<double>();
    o.phi_defender = j.at("phi_defender").get<double>();
    if (j.contains("forfeited_by"))
        o.forfeited_by = role_from_string(j.at("forfeited_by").get<std::string>());
    if (j.contains("violation_code"))
        o.violation = violation_code_from_string(j.at("violation_code").get<std::string>());
    return o;
}

json to_json(const TrajectoryRecord& r) {
    json j{
        {"match_id", r.match_id},
        {"game", to_string(r.game)},
        {"model_self", r.model_self},
        {"model_opponent", r.model_opponent},
        {"role", to_string(r.role)},
        {"moved_first", r.moved_first},
        {"round_index", r.round_index},
        {"strategy_doc", r.strategy_doc},
        {"valid", r.valid},
        {"declared_cost", r.declared_cost},
        {"budget_limit", r.budget_limit},
        {"outcome", to_json(r.outcome)},
        {"is_revision", r.is_revision},
    };
    if (r.violation_code) j["violation_code"] = to_string(*r.violation_code);
    if (r.feedback_given) j["feedback_given"] = *r.feedback_given;
    return j;
}

TrajectoryRecord record_from_json(const json& j) {
    TrajectoryRecord r;
    r.match_id = j.at("match_id").get<std::string>();
    r.game = game_kind_from_string(j.at("game").get<std::string>());
    r.model_self = j.at("model_self").get<std::string>();
    r.model_opponent = j.at("model_opponent").get<std::string>();
    r.role = role_from_string(j.at("role").get<std::string>());
    r.moved_first = j.at("moved_first").get<bool>();
    r.round_index = j.at("round_index").get<int>();
    r.strategy_doc = j.at("strategy_doc").get<std::string>();
    r.valid = j.at("valid").get<bool>();
    r.declared_cost = j.at("declared_cost").get<int64_t>();
    r.budget_limit = j.at("budget_limit").get<int64_t>();
    r.outcome = outcome_from_json(j.at("outcome"));
    r.is_revision = j.at("is_revision").get<bool>();
    if (j.contains("violation_code"))
        r.violation_code = violation_code_from_string(j.at("violation_code").get<std::string>());
    if (j.contains("feedback_given")) r.feedback_given = j.at("feedback_given").get<std::string>();
    return r;
}

std::string serialize_record(const TrajectoryRecord& r) { return to_json(r).dump(); }

TrajectoryRecord parse_record(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw InvalidRecord("unparseable log line");
    try {
        TrajectoryRecord r = record_from_json(j);
        check_invariants(r);
        return r;
    } catch (const InvalidRecord&) {
        throw;
    } catch (const std::exception& e) {
        throw InvalidRecord(std::string("bad record: ") + e.what());
    }
}

std::string new_match_id(GameKind game, const std::string& first_mover,
                         const std::string& second_mover) {
    if (first_mover.empty() || second_mover.empty())
        throw std::invalid_argument("model identifiers must be non-empty");
    return std::string(to_string(game)) + ":" + first_mover + ">" + second_mover;
}

TrajectoryLog::TrajectoryLog(std::string path) : path_(std::move(path)) {}

void TrajectoryLog::append(const TrajectoryRecord& r) {
    check_invariants(r);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot open log for append: " + path_);
    out << serialize_record(r) << "\n";
    if (!out) throw IoError("write failed: " + path_);
}

std::vector<TrajectoryRecord> parse_log_lines(const std::string& text) {
    std::vector<TrajectoryRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse_record(line));
    }
    return out;
}

std::vector<TrajectoryRecord> read_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open log: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_log_lines(ss.str());
}

}  // namespace advgame
