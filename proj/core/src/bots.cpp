#include "advgame/bots.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

namespace advgame {

using nlohmann::json;

namespace {

std::vector<const TdUnitSpec*> td_units_of(const Registry& reg, TdSide side) {
    std::vector<const TdUnitSpec*> out;
    for (const auto& [_, u] : reg.td_units)
        if (u.side == side) out.push_back(&u);
    // priciest first, name as the tiebreak, for deterministic greed
    std::sort(out.begin(), out.end(), [](const TdUnitSpec* x, const TdUnitSpec* y) {
        return std::tie(y->cost, x->name) < std::tie(x->cost, y->name);
    });
    return out;
}

std::vector<const BcUnitSpec*> bc_units_sorted(const Registry& reg, Role side) {
    std::vector<const BcUnitSpec*> out;
    for (const auto& [_, u] : reg.bc_units)
        if (u.side == side) out.push_back(&u);
    std::sort(out.begin(), out.end(), [](const BcUnitSpec* x, const BcUnitSpec* y) {
        return std::tie(y->cost, x->name) < std::tie(x->cost, y->name);
    });
    return out;
}

std::vector<const TaSkillSpec*> ta_pool(const Registry& reg, TaElement el) {
    std::vector<const TaSkillSpec*> out;
    for (const auto& [_, s] : reg.ta_skills)
        if (s.element == el) out.push_back(&s);
    std::sort(out.begin(), out.end(),
              [](const TaSkillSpec* x, const TaSkillSpec* y) { return x->name < y->name; });
    return out;
}

// Highest-cost 3-subset within the per-character budget, lexicographic tiebreak.
std::vector<std::string> best_loadout(const std::vector<const TaSkillSpec*>& pool,
                                      int64_t budget) {
    std::vector<std::string> best;
    int best_cost = -1;
    int n = (int)pool.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                int c = pool[i]->cost + pool[j]->cost + pool[k]->cost;
                if (c <= budget && c > best_cost) {
                    best_cost = c;
                    best = {pool[i]->name, pool[j]->name, pool[k]->name};
                }
            }
    return best;
}

TdStrategy greedy_td(Role role, int64_t budget, const Registry& reg) {
    TdStrategy s;
    s.role = role;
    if (role == Role::Defender) {
        auto units = td_units_of(reg, TdSide::Human);
        int cell = 0;
        int64_t left = budget;
        while (cell < 55) {
            const TdUnitSpec* pick = nullptr;
            for (const auto* u : units)
                if (u->cost <= left) {
                    pick = u;
                    break;
                }
            if (!pick) break;
            s.placements.push_back({pick->name, cell % 11, cell / 11});
            left -= pick->cost;
            ++cell;
        }
    } else {
        auto units = td_units_of(reg, TdSide::Demon);
        int64_t left = budget;
        int k = 0;
        while (true) {
            const TdUnitSpec* pick = nullptr;
            for (const auto* u : units)
                if (u->cost <= left) {
                    pick = u;
                    break;
                }
            if (!pick) break;
            s.spawns.push_back({pick->name, k % 5, 1000ll * k});
            left -= pick->cost;
            ++k;
        }
    }
    s.declared_cost = cost_of(s, reg);
    return s;
}

BcStrategy greedy_bc(Role role, int64_t budget, const Registry& reg) {
    BcStrategy s;
    s.role = role;
    int64_t left = budget;
    for (const auto* u : bc_units_sorted(reg, role)) {
        if ((int)s.roster.size() >= 7) break;
        if (u->cost <= left) {
            s.roster.push_back({u->name, BcTier::Bronze, "leftmost"});
            left -= u->cost;
        }
    }
    if (s.roster.empty()) s.roster.push_back({bc_units_sorted(reg, role).back()->name, BcTier::Bronze,
                                              "leftmost"});
    s.declared_cost = cost_of(s, reg);
    return s;
}

TaStrategy greedy_ta(Role role, int64_t per_char_budget, const Registry& reg) {
    TaStrategy s;
    s.role = role;
    for (TaElement el : ta_slots_for(role)) {
        TaCharacterPick pick;
        pick.element = el;
        pick.skills = best_loadout(ta_pool(reg, el), per_char_budget);
        int64_t c = 0;
        for (const auto& name : pick.skills) c += reg.find_ta(name)->cost;
        pick.declared_cost = c;
        s.characters.push_back(std::move(pick));
    }
    return s;
}

Strategy greedy_for(const ProviderRequest& req, const Registry& reg) {
    switch (req.game) {
        case GameKind::TowerDefense:
            return greedy_td(req.role, req.budget.limit, reg);
        case GameKind::BattleCard:
            return greedy_bc(req.role, req.budget.limit, reg);
        case GameKind::TurnAttribute:
            return greedy_ta(req.role, req.budget.limit / 3, reg);
    }
    throw std::logic_error("unknown game");
}

Strategy random_for(const ProviderRequest& req, const Registry& reg, std::mt19937_64& rng) {
    auto pick_idx = [&](size_t n) { return (size_t)(rng() % n); };
    switch (req.game) {
        case GameKind::TowerDefense: {
            TdStrategy s;
            s.role = req.role;
            if (req.role == Role::Defender) {
                auto units = td_units_of(reg, TdSide::Human);
                std::set<std::pair<int, int>> used;
                int64_t left = req.budget.limit;
                int attempts = 0;
                while (attempts++ < 40 && used.size() < 55) {
                    const auto* u = units[pick_idx(units.size())];
                    if (u->cost > left) continue;
                    int x = (int)pick_idx(11), y = (int)pick_idx(5);
                    if (!used.insert({x, y}).second) continue;
                    s.placements.push_back({u->name, x, y});
                    left -= u->cost;
                }
                if (s.placements.empty()) s.placements.push_back({"HandgunSoldier", 0, 0});
            } else {
                auto units = td_units_of(reg, TdSide::Demon);
                int64_t left = req.budget.limit;
                int attempts = 0;
                while (attempts++ < 40) {
                    const auto* u = units[pick_idx(units.size())];
                    if (u->cost > left) continue;
                    s.spawns.push_back({u->name, (int)pick_idx(5),
                                        (int64_t)(pick_idx(20)) * 500});
                    left -= u->cost;
                }
                if (s.spawns.empty()) s.spawns.push_back({"NormalDemon", 0, 0});
            }
            s.declared_cost = cost_of(s, reg);
            return s;
        }
        case GameKind::BattleCard: {
            BcStrategy s;
            s.role = req.role;
            auto units = bc_units_sorted(reg, req.role);
            const char* prios[] = {"leftmost", "lowest_hp", "highest_attack"};
            int64_t left = req.budget.limit;
            size_t want = 1 + pick_idx(7);
            int attempts = 0;
            while (s.roster.size() < want && attempts++ < 40) {
                const auto* u = units[pick_idx(units.size())];
                bool gold = pick_idx(4) == 0;
                int64_t c = gold ? 3ll * u->cost : u->cost;
                if (c > left) continue;
                s.roster.push_back({u->name, gold ? BcTier::Gold : BcTier::Bronze,
                                    prios[pick_idx(3)]});
                left -= c;
            }
            if (s.roster.empty()) s.roster.push_back({units.back()->name, BcTier::Bronze,
                                                      "leftmost"});
            s.declared_cost = cost_of(s, reg);
            return s;
        }
        case GameKind::TurnAttribute: {
            TaStrategy s;
            s.role = req.role;
            const char* policies[] = {"first", "lowest_hp", "highest_threat"};
            int64_t per_char = req.budget.limit / 3;
            for (TaElement el : ta_slots_for(req.role)) {
                auto pool = ta_pool(reg, el);
                TaCharacterPick pick;
                pick.element = el;
                pick.target_policy = policies[pick_idx(3)];
                while (true) {
                    std::vector<size_t> idx;
                    while (idx.size() < 3) {
                        size_t i = pick_idx(pool.size());
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
                    }
                    int c = 0;
                    for (size_t i : idx) c += pool[i]->cost;
                    if (c <= per_char) {
                        for (size_t i : idx) pick.skills.push_back(pool[i]->name);
                        pick.declared_cost = c;
                        break;
                    }
                }
                s.characters.push_back(std::move(pick));
            }
            return s;
        }
    }
    throw std::logic_error("unknown game");
}

class ScriptedBot final : public Provider {
public:
    ScriptedBot(std::string policy, uint64_t seed, const Registry& reg)
        : policy_(std::move(policy)), seed_(seed), reg_(reg) {}

    ProviderResponse propose(const ProviderRequest& req) override {
        ProviderResponse out;
        if (policy_ == "keeper") {
            if (req.round_index > 1) {
                out.keep = true;
                return out;
            }
            out.strategy_doc = strategy_to_text(greedy_for(req, reg_));
            return out;
        }
        if (policy_ == "greedy_cost") {
            out.strategy_doc = strategy_to_text(greedy_for(req, reg_));
            return out;
        }
        if (policy_ == "random_valid") {
            std::mt19937_64 rng(seed_ ^ req.match_seed ^
                                (0x9e3779b97f4a7c15ull * (uint64_t)req.round_index) ^
                                (req.role == Role::Invader ? 1 : 2));
            out.strategy_doc = strategy_to_text(random_for(req, reg_, rng));
            return out;
        }
        if (policy_ == "oscillator") {
            // alternates between two distinct valid strategies so every round
            // after the first is a revision
            if (req.round_index % 2 == 1) {
                out.strategy_doc = strategy_to_text(greedy_for(req, reg_));
            } else {
                std::mt19937_64 rng(seed_ ^ req.match_seed ^
                                    (req.role == Role::Invader ? 1 : 2));
                out.strategy_doc = strategy_to_text(random_for(req, reg_, rng));
            }
            return out;
        }
        if (policy_ == "overspender") {
            Strategy s = greedy_for(req, reg_);
            // duplicate the priciest line items until the cost clears the budget
            if (auto* td = std::get_if<TdStrategy>(&s)) {
                while (cost_of(s, reg_) <= req.budget.limit) {
                    if (req.role == Role::Defender) {
                        TdPlacement p = td->placements.front();
                        p.x = (int)(td->placements.size() % 11);
                        p.y = (int)(td->placements.size() / 11 % 5);
                        td->placements.push_back(p);
                    } else {
                        td->spawns.push_back(td->spawns.front());
                    }
                }
                td->declared_cost = cost_of(s, reg_);
            } else if (auto* bc = std::get_if<BcStrategy>(&s)) {
                for (auto& e : bc->roster) e.tier = BcTier::Gold;
                bc->declared_cost = cost_of(s, reg_);
            } else if (auto* ta = std::get_if<TaStrategy>(&s)) {
                for (auto& c : ta->characters) {
                    auto pool = ta_pool(reg_, c.element);
                    c.skills.clear();
                    // the three priciest skills of the pool always break 6
                    std::sort(pool.begin(), pool.end(),
                              [](const TaSkillSpec* x, const TaSkillSpec* y) {
                                  return std::tie(y->cost, x->name) < std::tie(x->cost, y->name);
                              });
                    int64_t cost = 0;
                    for (int i = 0; i < 3; ++i) {
                        c.skills.push_back(pool[i]->name);
                        cost += pool[i]->cost;
                    }
                    c.declared_cost = cost;
                }
            }
            out.strategy_doc = strategy_to_text(s);
            return out;
        }
        throw std::invalid_argument("unknown bot policy: " + policy_);
    }

    std::string name() const override { return policy_; }

private:
    std::string policy_;
    uint64_t seed_;
    const Registry& reg_;
};

class ReplayProvider final : public Provider {
public:
    explicit ReplayProvider(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open replay file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) throw IoError("bad replay line in " + path);
            Entry e;
            e.round = j.value("round", 1);
            e.keep = j.value("keep", false);
            if (j.contains("strategy"))
                e.doc = j["strategy"].is_string() ? j["strategy"].get<std::string>()
                                                  : j["strategy"].dump();
            entries_.push_back(std::move(e));
        }
        if (entries_.empty()) throw IoError("empty replay file: " + path);
        std::stable_sort(entries_.begin(), entries_.end(),
                         [](const Entry& x, const Entry& y) { return x.round < y.round; });
    }

    ProviderResponse propose(const ProviderRequest& req) override {
        const Entry* pick = &entries_.front();
        for (const auto& e : entries_)
            if (e.round <= req.round_index) pick = &e;
        ProviderResponse out;
        out.keep = pick->keep;
        out.strategy_doc = pick->doc;
        return out;
    }

    std::string name() const override { return "replay:" + path_; }

private:
    struct Entry {
        int round = 1;
        bool keep = false;
        std::string doc;
    };
    std::string path_;
    std::vector<Entry> entries_;
};

}  // namespace

bool is_known_bot_policy(const std::string& policy_id) {
    return policy_id == "greedy_cost" || policy_id == "random_valid" || policy_id == "keeper" ||
           policy_id == "oscillator" || policy_id == "overspender";
}

std::unique_ptr<Provider> make_scripted_bot(const std::string& policy_id, uint64_t seed,
                                            const Registry& reg) {
    if (!is_known_bot_policy(policy_id))
        throw std::invalid_argument("unknown bot policy: " + policy_id);
    return std::make_unique<ScriptedBot>(policy_id, seed, reg);
}

std::unique_ptr<Provider> make_replay_provider(const std::string& path) {
    return std::make_unique<ReplayProvider>(path);
}

}  // namespace advgame
