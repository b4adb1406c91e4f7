// Acceptance run: ten independent checks over the whole pipeline, one
// PASS/FAIL line each, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "advgame/bots.hpp"
#include "advgame/config.hpp"
#include "advgame/game_bc.hpp"
#include "advgame/game_ta.hpp"
#include "advgame/game_td.hpp"
#include "advgame/metrics.hpp"
#include "advgame/orchestrator.hpp"

#include "bc_scenarios.hpp"
#include "oracle.hpp"

using namespace advgame;
using nlohmann::json;

namespace {

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

#define EXPECT(cond)                                             \
    do {                                                         \
        if (!(cond)) {                                           \
            detail = std::string(#cond) + " at line " +          \
                     std::to_string(__LINE__);                   \
            return false;                                        \
        }                                                        \
    } while (0)

// ------------------------------------------------------------------ checks

bool check_td_calibration(std::string& detail) {
    TdStrategy empty;
    empty.role = Role::Defender;
    TdStrategy normal;
    normal.role = Role::Invader;
    normal.spawns = {{"NormalDemon", 2, 0}};
    auto a = simulate_td(empty, normal);
    EXPECT(a.outcome.winner == Role::Invader);
    EXPECT(std::abs(a.outcome.terminated_at - 14000) <= 50);

    TdStrategy speedy;
    speedy.role = Role::Invader;
    speedy.spawns = {{"SpeedyDemon", 0, 0}};
    auto b = simulate_td(empty, speedy);
    EXPECT(b.outcome.winner == Role::Invader);
    EXPECT(std::abs(b.outcome.terminated_at - 7000) <= 50);
    return true;
}

bool check_engine_determinism(std::string& detail) {
    BudgetConfig budgets;
    for (GameKind game :
         {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute}) {
        for (int i = 0; i < 100; ++i) {
            auto doc_for = [&](Role role, uint64_t seed) {
                auto bot = make_scripted_bot("random_valid", seed);
                ProviderRequest req;
                req.game = game;
                req.role = role;
                req.budget = budgets.for_role(game, role);
                req.round_index = 1;
                req.match_seed = 7777 * i + (role == Role::Invader ? 1 : 2);
                return bot->propose(req).strategy_doc;
            };
            auto parse = [&](Role role, const std::string& doc) {
                auto v = validate(doc, game, role, budgets.for_role(game, role));
                if (!v.valid() || !v.strategy) throw std::runtime_error("bot emitted invalid doc");
                return *v.strategy;
            };
            Strategy inv = parse(Role::Invader, doc_for(Role::Invader, i));
            Strategy def = parse(Role::Defender, doc_for(Role::Defender, 100 + i));
            auto run = [&]() -> SimOutcome {
                switch (game) {
                    case GameKind::TowerDefense:
                        return simulate_td(std::get<TdStrategy>(def), std::get<TdStrategy>(inv));
                    case GameKind::BattleCard:
                        return resolve_battle(std::get<BcStrategy>(inv), std::get<BcStrategy>(def));
                    default:
                        return run_duel(std::get<TaStrategy>(inv), std::get<TaStrategy>(def));
                }
            };
            auto x = run();
            auto y = run();
            EXPECT(x.outcome.trace_digest == y.outcome.trace_digest);
            EXPECT(x.outcome.winner == y.outcome.winner);
            EXPECT(x.outcome.terminated_at == y.outcome.terminated_at);
        }
    }
    return true;
}

bool check_elemental_table(std::string& detail) {
    using E = TaElement;
    auto expected = [](E a, E t) {
        auto beats = [](E x, E y) {
            return (x == E::Fire && y == E::Wood) || (x == E::Wood && y == E::Earth) ||
                   (x == E::Earth && y == E::Water) || (x == E::Water && y == E::Fire);
        };
        if ((a == E::Light && t == E::Dark) || (a == E::Dark && t == E::Light)) return 1.5;
        if (beats(a, t)) return 1.2;
        if (beats(t, a)) return 0.8;
        return 1.0;
    };
    for (E a : {E::Fire, E::Water, E::Dark, E::Wood, E::Earth, E::Light})
        for (E t : {E::Fire, E::Water, E::Dark, E::Wood, E::Earth, E::Light})
            EXPECT(elemental_multiplier(a, t) == expected(a, t));
    return true;
}

bool check_battle_fixtures(std::string& detail) {
    const auto& scenarios = bc_scenarios::all();
    EXPECT(scenarios.size() >= 20);
    for (const auto& sc : scenarios) {
        BcConfig cfg;
        cfg.attack_cap = sc.attack_cap;
        auto out = resolve_battle(bc_scenarios::roster(Role::Invader, sc.invader),
                                  bc_scenarios::roster(Role::Defender, sc.defender), cfg);
        if (out.outcome.winner != sc.winner || out.outcome.terminated_at != sc.steps) {
            detail = sc.name + ": winner/steps mismatch";
            return false;
        }
        for (const auto& ev : sc.events) {
            bool found = false;
            for (const auto& e : out.trace)
                if (e.kind == ev.kind && e.amount == ev.amount) found = true;
            if (!found) {
                detail = sc.name + ": missing event " + ev.kind;
                return false;
            }
        }
    }
    return true;
}

bool check_gold_scaling(std::string& detail) {
    const Registry& reg = Registry::builtin();
    EXPECT(reg.bc_units.size() == 22);
    for (const auto& [name, bronze] : reg.bc_units) {
        BcUnitSpec gold = apply_gold(bronze);
        EXPECT(gold.cost == bronze.cost * 3);
        EXPECT(gold.attack == bronze.attack * 2);
        EXPECT(gold.health == bronze.health * 2);
        EXPECT(gold.abilities.size() == bronze.abilities.size());
        for (size_t i = 0; i < bronze.abilities.size(); ++i) {
            const auto& b = bronze.abilities[i];
            const auto& g = gold.abilities[i];
            EXPECT(g.kind == b.kind);
            EXPECT(g.token == b.token);
            EXPECT(g.amount == (b.numeric ? b.amount * 2 : b.amount));
            EXPECT(g.amount2 == (b.numeric ? b.amount2 * 2 : b.amount2));
        }
    }
    return true;
}

bool check_metric_oracle(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260823);
    const Registry& reg = Registry::builtin();
    metrics::SimilarityWeights w{0.6, 0.0, 0.4};
    for (int trial = 0; trial < 1000; ++trial) {
        auto rs = oracle::make_log(rng);
        EXPECT(rs.size() <= 200);
        EXPECT(close(metrics::win_rate(rs), oracle::wr(rs)));
        EXPECT(close(metrics::over_correction_risk(rs), oracle::orr(rs)));
        EXPECT(close(metrics::correction_success(rs), oracle::csr(rs)));
        EXPECT(close(metrics::over_budget_rate(rs), oracle::obr(rs)));
        EXPECT(close(metrics::constructive_rate(rs), oracle::cnstr(rs)));
        EXPECT(close(metrics::masr_average(rs, w, nullptr, reg),
                     oracle::masr_avg(rs, w.theta_struct, w.theta_func, reg)));
        if (auto v = oracle::rvr(rs)) {
            EXPECT(close(metrics::rule_violation_rate(rs), *v));
        }
        if (auto s = oracle::slope(rs)) {
            EXPECT(close(metrics::improvement_slope(rs), *s));
        }
        for (const char* m : {"wr", "orr", "csr"}) {
            auto lib = metrics::first_mover_advantage(rs, m);
            auto ora = oracle::fma(rs, m);
            EXPECT(lib.defined == ora.has_value());
            if (ora) EXPECT(close(lib.value, *ora));
        }
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    EXPECT(secs < 60);
    return true;
}

bool check_slope_values(std::string& detail) {
    EXPECT(close(metrics::ols_slope({0, 0, 1, 1, 1}), 0.3));
    EXPECT(close(metrics::ols_slope({0.4, 0.4, 0.4, 0.4}), 0.0));
    EXPECT(close(metrics::ols_slope({0, 0.25, 0.5, 0.75, 1}), 0.25));
    return true;
}

bool check_tournament_pipeline(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    TournamentPlan plan;
    plan.models = {"greedy", "rando", "keeper", "spender"};
    plan.games = {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute};
    plan.rounds = 5;
    auto factory = [](const std::string& model) -> std::unique_ptr<Provider> {
        if (model == "greedy") return make_scripted_bot("greedy_cost");
        if (model == "rando") return make_scripted_bot("random_valid", 99);
        if (model == "keeper") return make_scripted_bot("keeper");
        return make_scripted_bot("overspender");
    };
    auto records = run_tournament(plan, factory);
    EXPECT(records.size() == 360);  // 6 pairs x 2 orders x 3 games x 5 rounds x 2 sides

    // round-trip every record through its wire format, recompute, compare
    std::string wire;
    for (const auto& r : records) wire += serialize_record(r) + "\n";
    auto reparsed = parse_log_lines(wire);
    EXPECT(reparsed.size() == records.size());
    auto report1 = metrics::compute_report(records);
    auto report2 = metrics::compute_report(reparsed);
    EXPECT(metrics::to_json(report1) == metrics::to_json(report2));

    EXPECT(close(report1.average.at("spender").obr, 1.0));
    EXPECT(close(report1.average.at("spender").wr, 0.0));

    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    EXPECT(secs < 300);
    return true;
}

bool check_validator_fuzz(std::string& detail) {
    std::mt19937_64 rng(424242);
    const char alphabet[] = "{}[]\":,abcdeXYZ019 .-_\n\\/truefalse";
    auto rand_text = [&](int max_len) {
        int n = (int)(rng() % max_len);
        std::string s;
        for (int i = 0; i < n; ++i) s += alphabet[rng() % (sizeof(alphabet) - 1)];
        return s;
    };
    BudgetConfig budgets;
    for (int i = 0; i < 10000; ++i) {
        GameKind game = (GameKind)(rng() % 3);
        Role role = (Role)(rng() % 2);
        std::string doc;
        switch (rng() % 4) {
            case 0: doc = rand_text(120); break;
            case 1: doc = "{\"role\": \"" + rand_text(12) + "\"}"; break;
            case 2: {
                json j{{"role", rng() % 2 ? "Invader" : "Defender"},
                       {"declared_cost", (int64_t)(rng() % 5000) - 500},
                       {"placements", json::array({{{"unit_name", rand_text(16)},
                                                    {"x", (int)(rng() % 40) - 10},
                                                    {"y", (int)(rng() % 20) - 5}}})},
                       {"roster", json::array({{{"unit_name", rand_text(16)},
                                                {"tier", rng() % 2 ? "gold" : "brz"}}})}};
                doc = j.dump();
                break;
            }
            default: {
                json j{{"role", "Invader"}, {"characters", json::array()}};
                for (int c = 0; c < (int)(rng() % 5); ++c)
                    j["characters"].push_back(
                        {{"element", rand_text(8)},
                         {"skills", json::array({rand_text(14), rand_text(14)})},
                         {"declared_cost", (int64_t)(rng() % 30)}});
                doc = j.dump();
                break;
            }
        }
        try {
            auto v = validate(doc, game, role, budgets.for_role(game, role));
            if (!v.valid()) {
                int code = (int)v.violation->code;
                EXPECT(code >= 0 && code <= (int)ViolationCode::ProviderTimeout);
                // the code must survive the closed-set string round-trip
                EXPECT(violation_code_from_string(to_string(v.violation->code)) ==
                       v.violation->code);
            }
        } catch (const std::exception& e) {
            detail = std::string("validate threw: ") + e.what();
            return false;
        }
    }
    return true;
}

bool check_radar_endpoints(std::string& detail) {
    metrics::MetricReport report;
    auto set = [&](const std::string& model, double wr, double orr) {
        metrics::MetricValues v;
        v.wr = wr;
        v.orr = orr;
        v.csr = 0.5;
        v.slope = 0.1 * wr;
        v.obr = orr / 2;
        report.per_game[model]["BCG"] = v;
        report.average[model] = v;
    };
    set("low_orr", 0.2, 0.1);
    set("mid", 0.5, 0.4);
    set("high_orr", 0.9, 0.9);
    auto radar = metrics::radar_normalize(report);
    EXPECT(radar.metric_names ==
           std::vector<std::string>({"wr", "csr", "slope", "inv_orr", "inv_obr"}));
    size_t inv_orr = 3;
    EXPECT(close(radar.rows.at("low_orr")[inv_orr], 1.0));   // fewest over-corrections
    EXPECT(close(radar.rows.at("high_orr")[inv_orr], 0.0));
    EXPECT(close(radar.rows.at("high_orr")[0], 1.0));        // best win rate
    EXPECT(radar.degenerate[1]);                             // csr constant across models
    EXPECT(close(radar.rows.at("mid")[1], 0.5));
    return true;
}

}  // namespace

int main() {
    std::vector<Check> checks = {
        {"tower-defense crossing calibration (14 s / 7 s within 50 ms)", check_td_calibration},
        {"100 random strategy pairs per game replay to identical digests", check_engine_determinism},
        {"all 36 elemental matchups match the closed-form table", check_elemental_table},
        {"hand-resolved auto-battler fixtures (>= 20) all reproduce", check_battle_fixtures},
        {"gold tier scaling exact for all 22 purchasable units", check_gold_scaling},
        {"1000 synthetic logs agree with brute-force metrics to 1e-9", check_metric_oracle},
        {"OLS slope fixed points ([0,0,1,1,1] -> 0.3, constant -> 0)", check_slope_values},
        {"4-bot tournament: 360 records, report survives re-ingestion", check_tournament_pipeline},
        {"10000-document fuzz: validator total, codes in the closed set", check_validator_fuzz},
        {"radar normalization endpoints and degenerate flagging", check_radar_endpoints},
    };

    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = checks[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %zu/10: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1, checks[i].name.c_str(),
                    ok ? "" : " -- ", ok ? "" : detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
