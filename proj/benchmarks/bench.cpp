#include <benchmark/benchmark.h>

#include <random>

#include "advgame/bots.hpp"
#include "advgame/game_bc.hpp"
#include "advgame/game_ta.hpp"
#include "advgame/game_td.hpp"
#include "advgame/metrics.hpp"
#include "advgame/orchestrator.hpp"

#include "../tests/oracle.hpp"

using namespace advgame;

namespace {

Strategy bot_strategy(GameKind game, Role role, uint64_t seed) {
    auto bot = make_scripted_bot("random_valid", seed);
    BudgetConfig budgets;
    ProviderRequest req;
    req.game = game;
    req.role = role;
    req.budget = budgets.for_role(game, role);
    req.match_seed = seed * 31;
    auto v = validate(bot->propose(req).strategy_doc, game, role, req.budget);
    return *v.strategy;
}

void bench_td(benchmark::State& state) {
    auto def = std::get<TdStrategy>(bot_strategy(GameKind::TowerDefense, Role::Defender, 1));
    auto inv = std::get<TdStrategy>(bot_strategy(GameKind::TowerDefense, Role::Invader, 2));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_td(def, inv));
}
BENCHMARK(bench_td);

void bench_td_untraced(benchmark::State& state) {
    auto def = std::get<TdStrategy>(bot_strategy(GameKind::TowerDefense, Role::Defender, 1));
    auto inv = std::get<TdStrategy>(bot_strategy(GameKind::TowerDefense, Role::Invader, 2));
    TdConfig cfg;
    cfg.record_trace = false;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_td(def, inv, cfg));
}
BENCHMARK(bench_td_untraced);

void bench_bc(benchmark::State& state) {
    auto inv = std::get<BcStrategy>(bot_strategy(GameKind::BattleCard, Role::Invader, 3));
    auto def = std::get<BcStrategy>(bot_strategy(GameKind::BattleCard, Role::Defender, 4));
    for (auto _ : state) benchmark::DoNotOptimize(resolve_battle(inv, def));
}
BENCHMARK(bench_bc);

void bench_ta(benchmark::State& state) {
    auto inv = std::get<TaStrategy>(bot_strategy(GameKind::TurnAttribute, Role::Invader, 5));
    auto def = std::get<TaStrategy>(bot_strategy(GameKind::TurnAttribute, Role::Defender, 6));
    for (auto _ : state) benchmark::DoNotOptimize(run_duel(inv, def));
}
BENCHMARK(bench_ta);

void bench_validate(benchmark::State& state) {
    auto bot = make_scripted_bot("random_valid", 7);
    BudgetConfig budgets;
    ProviderRequest req;
    req.game = GameKind::BattleCard;
    req.role = Role::Invader;
    req.budget = budgets.for_role(req.game, req.role);
    std::string doc = bot->propose(req).strategy_doc;
    for (auto _ : state)
        benchmark::DoNotOptimize(validate(doc, req.game, req.role, req.budget));
}
BENCHMARK(bench_validate);

void bench_match(benchmark::State& state) {
    MatchPlan plan;
    plan.game = GameKind::BattleCard;
    plan.model_a = "a";
    plan.model_b = "b";
    for (auto _ : state) {
        auto a = make_scripted_bot("random_valid", 8);
        auto b = make_scripted_bot("greedy_cost");
        benchmark::DoNotOptimize(run_match(plan, *a, *b));
    }
}
BENCHMARK(bench_match);

void bench_report(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::vector<TrajectoryRecord> log;
    while (log.size() < 2000) {
        auto part = oracle::make_log(rng);
        log.insert(log.end(), part.begin(), part.end());
    }
    for (auto _ : state) benchmark::DoNotOptimize(metrics::compute_report(log));
    state.SetItemsProcessed((int64_t)state.iterations() * (int64_t)log.size());
}
BENCHMARK(bench_report);

}  // namespace

BENCHMARK_MAIN();
