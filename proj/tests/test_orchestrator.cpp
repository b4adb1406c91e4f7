#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "advgame/bots.hpp"
#include "advgame/metrics.hpp"
#include "advgame/orchestrator.hpp"

using namespace advgame;
using nlohmann::json;

namespace {

MatchPlan plan_for(GameKind game, const std::string& a, const std::string& b, int rounds = 5) {
    MatchPlan p;
    p.game = game;
    p.model_a = a;
    p.model_b = b;
    p.rounds = rounds;
    return p;
}

std::string serialize_all(const std::vector<TrajectoryRecord>& rs) {
    std::string out;
    for (const auto& r : rs) out += serialize_record(r) + "\n";
    return out;
}

std::vector<TrajectoryRecord> of_model(const std::vector<TrajectoryRecord>& rs,
                                       const std::string& model) {
    std::vector<TrajectoryRecord> out;
    for (const auto& r : rs)
        if (r.model_self == model) out.push_back(r);
    return out;
}

struct CrashingProvider final : Provider {
    ProviderResponse propose(const ProviderRequest&) override {
        throw std::runtime_error("boom");
    }
    std::string name() const override { return "crash"; }
};

}  // namespace

TEST_CASE("a match emits two records per round with the contract invariants") {
    for (GameKind game :
         {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute}) {
        CAPTURE(to_string(game));
        auto a = make_scripted_bot("greedy_cost");
        auto b = make_scripted_bot("random_valid", 42);
        auto records = run_match(plan_for(game, "greedy", "rando"), *a, *b);
        REQUIRE(records.size() == 10);
        for (size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            CHECK_NOTHROW(check_invariants(r));
            CHECK(r.match_id == new_match_id(game, "greedy", "rando"));
            CHECK(r.round_index == (int)i / 2 + 1);
            // the a-perspective record comes first; a moved first as Invader
            CHECK(r.model_self == (i % 2 == 0 ? "greedy" : "rando"));
            CHECK(r.moved_first == (i % 2 == 0));
            CHECK(r.role == (i % 2 == 0 ? Role::Invader : Role::Defender));
            CHECK(r.valid);
            CHECK(r.declared_cost <= r.budget_limit);
            if (r.round_index > 1) CHECK(r.feedback_given.has_value());
        }
        // both perspectives agree on each round's outcome
        for (size_t i = 0; i < records.size(); i += 2)
            CHECK(records[i].outcome.trace_digest == records[i + 1].outcome.trace_digest);
    }
}

TEST_CASE("keep freezes the strategy and the outcome") {
    auto a = make_scripted_bot("keeper");
    auto b = make_scripted_bot("keeper");
    auto records = run_match(plan_for(GameKind::BattleCard, "k1", "k2"), *a, *b);
    REQUIRE(records.size() == 10);
    for (const auto& r : records) {
        CHECK_FALSE(r.is_revision);
        CHECK(r.strategy_doc == records[r.model_self == "k1" ? 0 : 1].strategy_doc);
        CHECK(r.outcome.trace_digest == records[0].outcome.trace_digest);
    }
    auto k1 = of_model(records, "k1");
    CHECK(metrics::over_correction_risk(k1) == doctest::Approx(0.0));
}

TEST_CASE("over-budget proposals forfeit every round") {
    auto a = make_scripted_bot("overspender");
    auto b = make_scripted_bot("greedy_cost");
    for (GameKind game :
         {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute}) {
        CAPTURE(to_string(game));
        auto records = run_match(plan_for(game, "spender", "greedy"), *a, *b);
        auto spender = of_model(records, "spender");
        REQUIRE(spender.size() == 5);
        for (const auto& r : spender) {
            CHECK_FALSE(r.valid);
            CHECK(r.violation_code == ViolationCode::BudgetExceeded);
            CHECK(r.declared_cost > r.budget_limit);
            CHECK_FALSE(r.won());
            CHECK(r.outcome.forfeit);
            CHECK(r.outcome.forfeited_by == r.role);
            CHECK(r.outcome.phi_for(r.role) <= -1e9);
        }
        CHECK(metrics::over_budget_rate(spender) == doctest::Approx(1.0));
        CHECK(metrics::win_rate(spender) == doctest::Approx(0.0));
        CHECK(metrics::win_rate(of_model(records, "greedy")) == doctest::Approx(1.0));
    }
}

TEST_CASE("an always-revising loser trips the over-correction metric") {
    auto a = make_scripted_bot("greedy_cost");
    auto b = make_scripted_bot("oscillator", 7);
    auto records = run_match(plan_for(GameKind::BattleCard, "greedy", "osc"), *a, *b);
    auto osc = of_model(records, "osc");
    bool osc_lost_some = false;
    for (const auto& r : osc)
        if (r.round_index < 5 && !r.won()) osc_lost_some = true;
    if (osc_lost_some) CHECK(metrics::over_correction_risk(osc) == doctest::Approx(1.0));
    for (const auto& r : osc)
        if (r.round_index > 1) CHECK(r.is_revision);
}

TEST_CASE("matches replay byte-identically") {
    auto run_once = [] {
        auto a = make_scripted_bot("random_valid", 1);
        auto b = make_scripted_bot("random_valid", 2);
        return run_match(plan_for(GameKind::TurnAttribute, "r1", "r2"), *a, *b);
    };
    CHECK(serialize_all(run_once()) == serialize_all(run_once()));
}

TEST_CASE("replayed strategies come back from the file") {
    auto a = make_scripted_bot("greedy_cost");
    auto b = make_scripted_bot("keeper");
    auto original = run_match(plan_for(GameKind::BattleCard, "greedy", "keep"), *a, *b);

    std::string path = "/tmp/advgame_replay_test.jsonl";
    {
        std::ofstream out(path);
        for (const auto& r : of_model(original, "greedy"))
            out << json{{"round", r.round_index}, {"strategy", r.strategy_doc}}.dump() << "\n";
    }
    auto replay = make_replay_provider(path);
    auto c = make_scripted_bot("keeper");
    auto rerun = run_match(plan_for(GameKind::BattleCard, "greedy", "keep"), *replay, *c);
    CHECK(serialize_all(of_model(rerun, "greedy")) ==
          serialize_all(of_model(original, "greedy")));
    std::remove(path.c_str());
}

TEST_CASE("tournament runs the dense pair matrix") {
    TournamentPlan plan;
    plan.models = {"greedy", "rando", "keeper", "spender"};
    plan.games = {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute};
    plan.rounds = 2;
    auto factory = [](const std::string& model) -> std::unique_ptr<Provider> {
        if (model == "greedy") return make_scripted_bot("greedy_cost");
        if (model == "rando") return make_scripted_bot("random_valid", 5);
        if (model == "keeper") return make_scripted_bot("keeper");
        return make_scripted_bot("overspender");
    };
    auto records = run_tournament(plan, factory);
    // 6 pairs x 2 orders x 3 games x 2 rounds x 2 perspectives
    CHECK(records.size() == 6 * 2 * 3 * 2 * 2);

    std::set<std::string> match_ids;
    for (const auto& r : records) match_ids.insert(r.match_id);
    CHECK(match_ids.size() == 36);

    // sorted by (game, match, round, model)
    for (size_t i = 1; i < records.size(); ++i) {
        auto key = [](const TrajectoryRecord& r) {
            return std::tuple{(int)r.game, r.match_id, r.round_index, r.model_self};
        };
        CHECK(key(records[i - 1]) <= key(records[i]));
    }

    // a second run is identical
    CHECK(serialize_all(run_tournament(plan, factory)) == serialize_all(records));
}

TEST_CASE("the opponent allowlist prunes pairs") {
    TournamentPlan plan;
    plan.models = {"a", "b", "c"};
    plan.games = {GameKind::BattleCard};
    plan.rounds = 1;
    plan.opponents = {"a"};
    auto factory = [](const std::string&) { return make_scripted_bot("keeper"); };
    auto records = run_tournament(plan, factory);
    // pairs (a,b) and (a,c) in both orders; (b,c) is pruned
    CHECK(records.size() == 2 * 2 * 1 * 2);
    for (const auto& r : records)
        CHECK((r.model_self == "a" || r.model_opponent == "a"));
}

TEST_CASE("a crashing provider forfeits the whole match on both sides") {
    TournamentPlan plan;
    plan.models = {"ok", "crash"};
    plan.games = {GameKind::BattleCard};
    plan.rounds = 3;
    auto factory = [](const std::string& model) -> std::unique_ptr<Provider> {
        if (model == "crash") return std::make_unique<CrashingProvider>();
        return make_scripted_bot("keeper");
    };
    auto records = run_tournament(plan, factory);
    CHECK(records.size() == 2 * 3 * 2);
    for (const auto& r : records) {
        CHECK_FALSE(r.valid);
        CHECK(r.violation_code == ViolationCode::ProviderTimeout);
        CHECK(r.outcome.forfeit);
    }
}

TEST_CASE("parallel execution changes nothing") {
    TournamentPlan plan;
    plan.models = {"greedy", "rando", "keeper"};
    plan.games = {GameKind::TowerDefense, GameKind::BattleCard};
    plan.rounds = 2;
    auto factory = [](const std::string& model) -> std::unique_ptr<Provider> {
        if (model == "greedy") return make_scripted_bot("greedy_cost");
        if (model == "rando") return make_scripted_bot("random_valid", 5);
        return make_scripted_bot("keeper");
    };
    auto serial = run_tournament(plan, factory);
    plan.jobs = 4;
    auto parallel = run_tournament(plan, factory);
    CHECK(serialize_all(serial) == serialize_all(parallel));
}

TEST_CASE("feedback text tells losses from violations") {
    auto a = make_scripted_bot("overspender");
    auto b = make_scripted_bot("greedy_cost");
    auto records = run_match(plan_for(GameKind::BattleCard, "spender", "greedy"), *a, *b);
    for (const auto& r : records) {
        Feedback f = compose_feedback(r, {});
        if (r.model_self == "spender") {
            CHECK(f.negative);
            CHECK(f.text.find("BudgetExceeded") != std::string::npos);
        } else {
            CHECK_FALSE(f.negative);
        }
    }
}

TEST_CASE("external agents speak JSON over HTTP") {
    const Registry& reg = Registry::builtin();

    httplib::Server server;
    std::atomic<int> calls{0};
    json last_request;
    server.Post("/strategy", [&](const httplib::Request& req, httplib::Response& res) {
        last_request = json::parse(req.body);
        int n = ++calls;
        if (n == 1) {
            // echo a fixed valid roster on the opening round
            json doc{{"role", last_request["role"]},
                     {"roster", json::array({{{"unit_name", "FireLizard"},
                                              {"tier", "bronze"},
                                              {"target_priority", "leftmost"}}})},
                     {"declared_cost", 1}};
            res.set_content(json{{"strategy", doc.dump()}}.dump(), "application/json");
        } else {
            res.set_content(json{{"keep", true}}.dump(), "application/json");
        }
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto agent = make_external_agent("127.0.0.1", port, "/strategy", 5);
    auto opponent = make_scripted_bot("keeper");
    auto records = run_match(plan_for(GameKind::BattleCard, "remote", "keep", 2), *agent, *opponent, reg);

    server.stop();
    worker.join();

    REQUIRE(records.size() == 4);
    auto remote = of_model(records, "remote");
    CHECK(remote[0].valid);
    CHECK(remote[0].strategy_doc.find("FireLizard") != std::string::npos);
    CHECK_FALSE(remote[1].is_revision);  // kept
    CHECK(calls == 2);
    // the second request carried the first round's history and feedback
    CHECK(last_request["round_index"] == 2);
    CHECK(last_request["rules_digest"] == reg.digest());
    REQUIRE(last_request["history"].size() == 1);
    CHECK(last_request["history"][0].contains("feedback"));
}

TEST_CASE("an unreachable agent forfeits with a timeout code") {
    auto agent = make_external_agent("127.0.0.1", 1, "/strategy", 1);  // nothing listens there
    auto opponent = make_scripted_bot("keeper");
    auto records = run_match(plan_for(GameKind::BattleCard, "remote", "keep", 1), *agent, *opponent);
    REQUIRE(records.size() == 2);
    CHECK_FALSE(records[0].valid);
    CHECK(records[0].violation_code == ViolationCode::ProviderTimeout);
    CHECK(records[0].outcome.forfeit);
    CHECK(records[1].won());
}
