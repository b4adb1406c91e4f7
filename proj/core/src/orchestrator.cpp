#include "advgame/orchestrator.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "advgame/game_bc.hpp"
#include "advgame/game_td.hpp"
#include "advgame/game_ta.hpp"

#include <httplib.h>

namespace advgame {

using nlohmann::json;

namespace {

constexpr double kForfeitPhi = 1e9;  // Phi sentinel: forfeits are maximally bad states

class ExternalAgent final : public Provider {
public:
    ExternalAgent(std::string host, int port, std::string path, int timeout_s)
        : host_(std::move(host)), port_(port), path_(std::move(path)), timeout_s_(timeout_s) {}

    ProviderResponse propose(const ProviderRequest& req) override {
        json history = json::array();
        for (const auto& h : req.history) {
            history.push_back(json{
                {"strategy", h.strategy_doc},
                {"valid", h.valid},
                {"outcome", to_json(h.outcome)},
                {"feedback", json{{"negative", h.feedback.negative}, {"text", h.feedback.text}}},
            });
        }
        json body{
            {"game", to_string(req.game)},
            {"role", to_string(req.role)},
            {"rules_digest", req.rules_digest},
            {"budget", req.budget.limit},
            {"round_index", req.round_index},
            {"history", std::move(history)},
        };

        httplib::Client client(host_, port_);
        client.set_connection_timeout(timeout_s_, 0);
        client.set_read_timeout(timeout_s_, 0);
        auto res = client.Post(path_, body.dump(), "application/json");
        if (!res || res->status != 200)
            throw ProviderTimeoutError("external agent unreachable: " + host_);
        json j = json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw ProviderTimeoutError("external agent returned non-JSON");
        ProviderResponse out;
        if (j.value("keep", false)) {
            out.keep = true;
            return out;
        }
        if (!j.contains("strategy")) throw ProviderTimeoutError("external agent response lacks strategy");
        out.strategy_doc = j["strategy"].is_string() ? j["strategy"].get<std::string>()
                                                     : j["strategy"].dump();
        return out;
    }

    std::string name() const override { return host_ + ":" + std::to_string(port_); }

private:
    std::string host_;
    int port_;
    std::string path_;
    int timeout_s_;
};

struct SideState {
    std::string model;
    Role role = Role::Invader;
    Budget budget;
    std::string doc;                      // current strategy text
    std::optional<ValidationResult> val;  // of the current doc
    bool is_revision = false;
    std::vector<HistoryEntry> history;
};

SimOutcome run_engine(GameKind game, const Strategy& invader, const Strategy& defender,
                      const Registry& reg) {
    switch (game) {
        case GameKind::TowerDefense:
            return simulate_td(std::get<TdStrategy>(defender), std::get<TdStrategy>(invader), {},
                               reg);
        case GameKind::BattleCard:
            return resolve_battle(std::get<BcStrategy>(invader), std::get<BcStrategy>(defender),
                                  {}, reg);
        case GameKind::TurnAttribute:
            return run_duel(std::get<TaStrategy>(invader), std::get<TaStrategy>(defender), {},
                            reg);
    }
    throw std::logic_error("unknown game");
}

Outcome forfeit_outcome(Role violator, ViolationCode code) {
    Outcome o;
    o.winner = violator == Role::Invader ? Role::Defender : Role::Invader;
    o.forfeit = true;
    o.forfeited_by = violator;
    o.violation = code;
    o.phi_invader = violator == Role::Invader ? -kForfeitPhi : kForfeitPhi;
    o.phi_defender = -o.phi_invader;
    return o;
}

}  // namespace

std::unique_ptr<Provider> make_external_agent(const std::string& host, int port,
                                              const std::string& path, int timeout_s) {
    return std::make_unique<ExternalAgent>(host, port, path, timeout_s);
}

Feedback compose_feedback(const TrajectoryRecord& record, const std::vector<TraceEvent>& trace) {
    Feedback f;
    std::ostringstream text;
    if (!record.valid) {
        f.negative = true;
        text << "violation " << to_string(*record.violation_code);
        if (*record.violation_code == ViolationCode::BudgetExceeded)
            text << ": declared cost " << record.declared_cost << " exceeds budget "
                 << record.budget_limit << " by " << record.declared_cost - record.budget_limit;
        text << "; round forfeited";
    } else if (!record.won()) {
        f.negative = true;
        text << "round lost";
        // loss cause digest from the event trace
        for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
            if (it->kind == "breach") {
                text << ": demon " << it->actor << " crossed at row " << it->amount << ", t="
                     << it->t << " ms";
                break;
            }
            if (it->kind == "death" && !it->target.empty()) {
                text << ": last unit down was " << it->target << " at step " << it->t;
                break;
            }
        }
        if (record.outcome.forfeit) text << ": opponent default did not apply";
    } else {
        f.negative = false;
        text << "round won";
        if (record.outcome.forfeit) text << " by opponent forfeit";
    }
    f.text = text.str();
    return f;
}

std::vector<TrajectoryRecord> run_match(const MatchPlan& plan, Provider& provider_a,
                                        Provider& provider_b, const Registry& reg) {
    SideState a{plan.model_a}, b{plan.model_b};
    a.role = plan.a_first ? Role::Invader : Role::Defender;
    b.role = plan.a_first ? Role::Defender : Role::Invader;
    a.budget = plan.budgets.for_role(plan.game, a.role);
    b.budget = plan.budgets.for_role(plan.game, b.role);
    const std::string& first = plan.a_first ? plan.model_a : plan.model_b;
    const std::string& second = plan.a_first ? plan.model_b : plan.model_a;
    const std::string match_id = new_match_id(plan.game, first, second);
    const uint64_t match_seed = fnv1a64(match_id);
    const std::string rules_digest = reg.digest();

    std::vector<TrajectoryRecord> out;
    Provider* providers[2] = {&provider_a, &provider_b};
    SideState* sides[2] = {&a, &b};

    for (int r = 1; r <= plan.rounds; ++r) {
        for (int i = 0; i < 2; ++i) {
            SideState& s = *sides[i];
            ProviderRequest req{plan.game, s.role, rules_digest, s.budget, r, s.history,
                                match_seed};
            s.is_revision = false;
            std::optional<ViolationCode> transport_failure;
            ProviderResponse resp;
            try {
                resp = providers[i]->propose(req);
            } catch (const ProviderTimeoutError&) {
                transport_failure = ViolationCode::ProviderTimeout;
            }
            if (transport_failure) {
                s.doc.clear();
                s.val = ValidationResult{Violation{*transport_failure, "provider timeout"}, 0,
                                         std::nullopt};
            } else if (resp.keep && r > 1 && s.val.has_value()) {
                // reuse the previous document and its validation
            } else if (resp.keep) {
                // keep with no prior strategy: nothing to reuse
                s.doc.clear();
                s.val = validate("", plan.game, s.role, s.budget, reg);
            } else {
                s.doc = resp.strategy_doc;
                s.val = validate(s.doc, plan.game, s.role, s.budget, reg);
                s.is_revision = r > 1;
            }
        }

        Outcome outcome;
        std::vector<TraceEvent> trace;
        bool a_valid = a.val->valid();
        bool b_valid = b.val->valid();
        if (a_valid && b_valid) {
            const Strategy& sa = *a.val->strategy;
            const Strategy& sb = *b.val->strategy;
            SimOutcome sim = a.role == Role::Invader ? run_engine(plan.game, sa, sb, reg)
                                                     : run_engine(plan.game, sb, sa, reg);
            outcome = sim.outcome;
            trace = std::move(sim.trace);
        } else if (!a_valid && !b_valid) {
            // double violation: the invader defaults first in the act order
            Role violator = a.role == Role::Invader ? a.role : b.role;
            ViolationCode code =
                violator == a.role ? a.val->violation->code : b.val->violation->code;
            outcome = forfeit_outcome(violator, code);
        } else {
            SideState& bad = a_valid ? b : a;
            outcome = forfeit_outcome(bad.role, bad.val->violation->code);
        }

        for (SideState* sp : {&a, &b}) {
            SideState& s = *sp;
            TrajectoryRecord rec;
            rec.match_id = match_id;
            rec.game = plan.game;
            rec.model_self = s.model;
            rec.model_opponent = sp == &a ? b.model : a.model;
            rec.role = s.role;
            rec.moved_first = s.role == Role::Invader;
            rec.round_index = r;
            rec.strategy_doc = s.doc;
            rec.valid = s.val->valid();
            if (!rec.valid) rec.violation_code = s.val->violation->code;
            rec.declared_cost = s.val->cost;
            rec.budget_limit = s.budget.limit;
            rec.outcome = outcome;
            rec.is_revision = s.is_revision;
            Feedback fb = compose_feedback(rec, trace);
            rec.feedback_given = fb.text;
            s.history.push_back({s.doc, rec.valid, outcome, fb});
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<TrajectoryRecord> run_tournament(const TournamentPlan& plan,
                                             const ProviderFactory& factory, const Registry& reg) {
    if (plan.models.size() < 2) throw std::invalid_argument("tournament needs >= 2 models");

    auto allowed = [&](const std::string& m) {
        return plan.opponents.empty() ||
               std::find(plan.opponents.begin(), plan.opponents.end(), m) != plan.opponents.end();
    };

    std::vector<MatchPlan> matches;
    for (size_t i = 0; i < plan.models.size(); ++i) {
        for (size_t j = i + 1; j < plan.models.size(); ++j) {
            if (!allowed(plan.models[i]) && !allowed(plan.models[j])) continue;
            for (GameKind game : plan.games) {
                for (bool a_first : {true, false}) {
                    matches.push_back({game, plan.models[i], plan.models[j], plan.rounds, a_first,
                                       plan.budgets});
                }
            }
        }
    }

    auto play = [&](const MatchPlan& m) -> std::vector<TrajectoryRecord> {
        try {
            auto pa = factory(m.model_a);
            auto pb = factory(m.model_b);
            return run_match(m, *pa, *pb, reg);
        } catch (const std::exception&) {
            // crashed match: double forfeit, tournament continues
            std::vector<TrajectoryRecord> recs;
            const std::string first = m.a_first ? m.model_a : m.model_b;
            const std::string second = m.a_first ? m.model_b : m.model_a;
            std::string id = new_match_id(m.game, first, second);
            for (int r = 1; r <= m.rounds; ++r) {
                for (const std::string* model : {&m.model_a, &m.model_b}) {
                    bool is_a = model == &m.model_a;
                    Role role = (is_a == m.a_first) ? Role::Invader : Role::Defender;
                    TrajectoryRecord rec;
                    rec.match_id = id;
                    rec.game = m.game;
                    rec.model_self = *model;
                    rec.model_opponent = is_a ? m.model_b : m.model_a;
                    rec.role = role;
                    rec.moved_first = role == Role::Invader;
                    rec.round_index = r;
                    rec.valid = false;
                    rec.violation_code = ViolationCode::ProviderTimeout;
                    rec.budget_limit = m.budgets.for_role(m.game, role).limit;
                    rec.outcome = forfeit_outcome(Role::Invader, ViolationCode::ProviderTimeout);
                    rec.feedback_given = "match aborted: provider failure";
                    recs.push_back(std::move(rec));
                }
            }
            return recs;
        }
    };

    std::vector<TrajectoryRecord> all;
    int jobs = std::max(1, plan.jobs);
    if (jobs == 1) {
        for (const auto& m : matches) {
            auto recs = play(m);
            all.insert(all.end(), recs.begin(), recs.end());
        }
    } else {
        std::vector<std::future<std::vector<TrajectoryRecord>>> futs;
        futs.reserve(matches.size());
        size_t next = 0;
        while (next < matches.size() || !futs.empty()) {
            while (next < matches.size() && (int)futs.size() < jobs)
                futs.push_back(std::async(std::launch::async, play, matches[next++]));
            auto recs = futs.front().get();
            futs.erase(futs.begin());
            all.insert(all.end(), recs.begin(), recs.end());
        }
    }

    std::sort(all.begin(), all.end(), [](const TrajectoryRecord& x, const TrajectoryRecord& y) {
        return std::tie(x.game, x.match_id, x.round_index, x.model_self) <
               std::tie(y.game, y.match_id, y.round_index, y.model_self);
    });
    return all;
}

}  // namespace advgame
