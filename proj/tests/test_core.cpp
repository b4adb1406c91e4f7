#include <doctest.h>

#include <nlohmann/json.hpp>

#include "advgame/trajectory.hpp"

using namespace advgame;

namespace {

TrajectoryRecord sample_record() {
    TrajectoryRecord r;
    r.match_id = "TDG:botA>botB";
    r.game = GameKind::TowerDefense;
    r.model_self = "botA";
    r.model_opponent = "botB";
    r.role = Role::Invader;
    r.moved_first = true;
    r.round_index = 2;
    r.strategy_doc = "{\"spawns\":[]}";
    r.valid = true;
    r.declared_cost = 300;
    r.budget_limit = 1000;
    r.outcome.winner = Role::Invader;
    r.outcome.terminated_at = 14000;
    r.outcome.trace_digest = "abc123";
    r.outcome.phi_invader = 0.25;
    r.outcome.phi_defender = -0.25;
    r.is_revision = true;
    r.feedback_given = "round won";
    return r;
}

}  // namespace

TEST_CASE("game kind and role strings are stable") {
    CHECK(to_string(GameKind::TowerDefense) == "TDG");
    CHECK(to_string(GameKind::BattleCard) == "BCG");
    CHECK(to_string(GameKind::TurnAttribute) == "TAG");
    CHECK(game_kind_from_string("BCG") == GameKind::BattleCard);
    CHECK(to_string(Role::Invader) == "Invader");
    CHECK(role_from_string("Defender") == Role::Defender);
    CHECK_THROWS(game_kind_from_string("XYZ"));
}

TEST_CASE("violation codes form a closed set") {
    const char* names[] = {"BudgetExceeded", "PlacementOutOfBounds", "CellOccupied",
                           "RosterTooLarge", "UnknownUnit",          "UnknownSkill",
                           "MalformedDocument", "ProviderTimeout"};
    for (const char* n : names) CHECK(to_string(violation_code_from_string(n)) == n);
    CHECK_THROWS(violation_code_from_string("NotACode"));
}

TEST_CASE("budget admits costs up to the limit") {
    Budget b{1000};
    CHECK(b.admits(1000));
    CHECK(b.admits(0));
    CHECK_FALSE(b.admits(1001));
}

TEST_CASE("match ids encode game, pair, and order") {
    CHECK(new_match_id(GameKind::TowerDefense, "botA", "botB") == "TDG:botA>botB");
    CHECK(new_match_id(GameKind::TowerDefense, "botA", "botB") ==
          new_match_id(GameKind::TowerDefense, "botA", "botB"));
    CHECK(new_match_id(GameKind::TowerDefense, "botA", "botB") !=
          new_match_id(GameKind::TowerDefense, "botB", "botA"));
    CHECK_THROWS(new_match_id(GameKind::TowerDefense, "", "botB"));
}

TEST_CASE("record serialization round-trips") {
    TrajectoryRecord r = sample_record();
    TrajectoryRecord back = parse_record(serialize_record(r));
    CHECK(serialize_record(back) == serialize_record(r));
    CHECK(back.match_id == r.match_id);
    CHECK(back.round_index == 2);
    CHECK(back.outcome.phi_invader == doctest::Approx(0.25));
    CHECK(back.feedback_given == r.feedback_given);
    CHECK(back.won());
}

TEST_CASE("record invariants are enforced") {
    TrajectoryRecord r = sample_record();
    CHECK_NOTHROW(check_invariants(r));

    TrajectoryRecord bad = r;
    bad.round_index = 1;  // is_revision still true
    CHECK_THROWS_AS(check_invariants(bad), InvalidRecord);

    bad = r;
    bad.valid = false;
    bad.violation_code.reset();
    CHECK_THROWS_AS(check_invariants(bad), InvalidRecord);

    bad = r;
    bad.round_index = 0;
    CHECK_THROWS_AS(check_invariants(bad), InvalidRecord);

    CHECK_THROWS_AS(parse_record("not json at all"), InvalidRecord);
    CHECK_THROWS_AS(parse_record("{\"match_id\":\"x\"}"), InvalidRecord);
}

TEST_CASE("forfeit outcomes carry the violating side") {
    Outcome o;
    o.winner = Role::Defender;
    o.forfeit = true;
    o.forfeited_by = Role::Invader;
    o.violation = ViolationCode::BudgetExceeded;
    Outcome back = outcome_from_json(to_json(o));
    CHECK(back.forfeit);
    CHECK(back.forfeited_by == Role::Invader);
    CHECK(back.violation == ViolationCode::BudgetExceeded);
    CHECK_FALSE(back.won_by(Role::Invader));
}

TEST_CASE("log lines parse back to identical records") {
    TrajectoryRecord r = sample_record();
    std::string text = serialize_record(r) + "\n" + serialize_record(r) + "\n\n";
    auto records = parse_log_lines(text);
    REQUIRE(records.size() == 2);
    CHECK(serialize_record(records[1]) == serialize_record(r));
}
