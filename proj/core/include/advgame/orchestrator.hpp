#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "advgame/registry.hpp"
#include "advgame/sim.hpp"
#include "advgame/strategy.hpp"
#include "advgame/trajectory.hpp"

namespace advgame {

struct Feedback {
    bool negative = false;
    std::string text;
};

struct HistoryEntry {
    std::string strategy_doc;
    bool valid = true;
    Outcome outcome;
    Feedback feedback;
};

// What a provider sees each round: round 1 gets an empty history, later
// rounds the full per-round record of its own strategies, outcomes and the
// feedback it was given.
struct ProviderRequest {
    GameKind game = GameKind::TowerDefense;
    Role role = Role::Invader;
    std::string rules_digest;
    Budget budget;
    int round_index = 1;
    std::vector<HistoryEntry> history;
    uint64_t match_seed = 0;  // per-match seed for any scripted stochasticity
};

// A provider answers with a strategy document or "keep" (reuse the previous
// one; is_revision stays false for that round).
struct ProviderResponse {
    bool keep = false;
    std::string strategy_doc;  // JSON text, ignored when keep
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual ProviderResponse propose(const ProviderRequest& req) = 0;
    // Scripted/replay providers are deterministic given identical requests;
    // external agents are exempt.
    virtual std::string name() const = 0;
};

// External agent over HTTP: POST {game, role, rules_digest, budget,
// round_index, history:[{strategy, outcome, feedback}]} -> {strategy | keep}.
// A transport failure or timeout surfaces as ProviderTimeout (forfeit).
std::unique_ptr<Provider> make_external_agent(const std::string& host, int port,
                                              const std::string& path = "/strategy",
                                              int timeout_s = 120);

struct ProviderTimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MatchPlan {
    GameKind game = GameKind::TowerDefense;
    std::string model_a;
    std::string model_b;
    int rounds = 5;
    bool a_first = true;  // the first mover plays Invader
    BudgetConfig budgets;
};

Feedback compose_feedback(const TrajectoryRecord& record, const std::vector<TraceEvent>& trace);

// Runs the closed loop for one match and returns two records per round, the
// a-perspective record first. A violation (or provider timeout) forfeits the
// round to the opponent; the engine never runs on a forfeited round.
std::vector<TrajectoryRecord> run_match(const MatchPlan& plan, Provider& provider_a,
                                        Provider& provider_b,
                                        const Registry& reg = Registry::builtin());

struct TournamentPlan {
    std::vector<std::string> models;  // >= 2
    std::vector<GameKind> games;
    int rounds = 5;
    BudgetConfig budgets;
    // Optional allowlist: when non-empty, a pair is scheduled only if at
    // least one side is in the list (the fixed-opponent protocol).
    std::vector<std::string> opponents;
    int jobs = 1;
};

using ProviderFactory = std::function<std::unique_ptr<Provider>(const std::string& model)>;

// Dense matrix: every unordered pair x every game x both move orders.
// A crashed match is recorded as a double forfeit and the tournament
// continues. Records come back sorted (game, match_id, round, model).
std::vector<TrajectoryRecord> run_tournament(const TournamentPlan& plan,
                                             const ProviderFactory& factory,
                                             const Registry& reg = Registry::builtin());

}  // namespace advgame
