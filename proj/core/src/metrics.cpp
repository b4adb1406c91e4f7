#include "advgame/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

namespace advgame {
namespace metrics {

using nlohmann::json;

namespace {

// match_id -> records sorted by round_index; every group is one model's view
// of one match.
std::map<std::string, std::vector<const TrajectoryRecord*>> by_match(
    const std::vector<TrajectoryRecord>& rs) {
    std::map<std::string, std::vector<const TrajectoryRecord*>> out;
    for (const auto& r : rs) out[r.match_id].push_back(&r);
    for (auto& [_, v] : out)
        std::stable_sort(v.begin(), v.end(), [](const TrajectoryRecord* a,
                                                const TrajectoryRecord* b) {
            return a->round_index < b->round_index;
        });
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t inter = 0;
    for (const auto& x : a) inter += b.count(x);
    std::size_t uni = a.size() + b.size() - inter;
    return (double)inter / ((double)uni + kEpsilon);
}

std::optional<Strategy> parse_strategy(const TrajectoryRecord& r, const Registry& reg) {
    // permissive budget: only parse/name resolution matters here
    ValidationResult v = validate(r.strategy_doc, r.game, r.role, Budget{1ll << 40}, reg);
    return v.strategy;
}

}  // namespace

bool negative_feedback(const TrajectoryRecord& r) { return !r.valid || !r.won(); }

double win_rate(const std::vector<TrajectoryRecord>& rs) {
    if (rs.empty()) throw EmptyLog("win_rate over empty log");
    int64_t wins = std::count_if(rs.begin(), rs.end(),
                                 [](const TrajectoryRecord& r) { return r.won(); });
    return (double)wins / (double)rs.size();
}

double over_correction_risk(const std::vector<TrajectoryRecord>& rs) {
    int64_t num = 0, den = 0;
    for (const auto& [_, match] : by_match(rs)) {
        for (size_t i = 0; i + 1 < match.size(); ++i) {
            if (!negative_feedback(*match[i])) continue;
            ++den;
            if (match[i + 1]->is_revision) ++num;
        }
    }
    return den == 0 ? 0.0 : (double)num / (double)den;
}

double correction_success(const std::vector<TrajectoryRecord>& rs) {
    int64_t num = 0, den = 0;
    for (const auto& [_, match] : by_match(rs)) {
        for (size_t i = 1; i < match.size(); ++i) {
            if (!match[i]->is_revision) continue;
            ++den;
            const TrajectoryRecord& prev = *match[i - 1];
            const TrajectoryRecord& cur = *match[i];
            bool fixed_violation = !prev.valid && cur.valid;
            bool flipped_loss = !prev.won() && cur.won();
            if (fixed_violation || flipped_loss) ++num;
        }
    }
    return den == 0 ? 0.0 : (double)num / (double)den;
}

double over_budget_rate(const std::vector<TrajectoryRecord>& rs) {
    if (rs.empty()) throw EmptyLog("over_budget_rate over empty log");
    int64_t over = std::count_if(rs.begin(), rs.end(), [](const TrajectoryRecord& r) {
        return r.declared_cost > r.budget_limit;
    });
    return (double)over / (double)rs.size();
}

double rule_violation_rate(const std::vector<TrajectoryRecord>& rs) {
    int64_t bad = 0, total = 0;
    for (const auto& r : rs) {
        if (r.round_index != 1) continue;
        ++total;
        if (!r.valid) ++bad;
    }
    if (total == 0) throw EmptyLog("rule_violation_rate needs round-1 records");
    return (double)bad / (double)total;
}

double constructive_rate(const std::vector<TrajectoryRecord>& rs) {
    int64_t num = 0, den = 0;
    for (const auto& [_, match] : by_match(rs)) {
        for (size_t i = 0; i + 1 < match.size(); ++i) {
            if (!negative_feedback(*match[i]) || !match[i + 1]->is_revision) continue;
            ++den;
            double prev = match[i]->outcome.phi_for(match[i]->role);
            double next = match[i + 1]->outcome.phi_for(match[i + 1]->role);
            if (next > prev) ++num;
        }
    }
    return (double)num / ((double)den + kEpsilon);
}

double ols_slope(const std::vector<double>& ys) {
    size_t n = ys.size();
    if (n < 2) throw InsufficientRounds("slope needs >= 2 points");
    double xbar = (n + 1) / 2.0;
    double ybar = 0;
    for (double y : ys) ybar += y;
    ybar /= (double)n;
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = (double)(i + 1) - xbar;
        num += dx * (ys[i] - ybar);
        den += dx * dx;
    }
    return num / den;
}

double improvement_slope(const std::vector<TrajectoryRecord>& rs) {
    std::map<int, std::pair<int64_t, int64_t>> per_round;  // round -> (wins, n)
    for (const auto& r : rs) {
        auto& [wins, n] = per_round[r.round_index];
        if (r.won()) ++wins;
        ++n;
    }
    if (per_round.size() < 2) throw InsufficientRounds("slope needs >= 2 round indices");
    double xbar = 0, ybar = 0;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [round, wn] : per_round)
        pts.push_back({(double)round, (double)wn.first / (double)wn.second});
    for (const auto& [x, y] : pts) {
        xbar += x;
        ybar += y;
    }
    xbar /= (double)pts.size();
    ybar /= (double)pts.size();
    double num = 0, den = 0;
    for (const auto& [x, y] : pts) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    return num / den;
}

void check_weights(const SimilarityWeights& w) {
    if (w.theta_struct < 0 || w.theta_sem < 0 || w.theta_func < 0)
        throw WeightSumInvalid("similarity weights must be non-negative");
    if (std::abs(w.theta_struct + w.theta_sem + w.theta_func - 1.0) > 1e-9)
        throw WeightSumInvalid("similarity weights must sum to 1");
}

double masr(const Strategy& prev, const Strategy& next, const SimilarityWeights& w,
            const SemanticHook& sem, const Registry& reg) {
    check_weights(w);
    double s = w.theta_struct * jaccard(action_set(prev), action_set(next)) +
               w.theta_func * jaccard(function_tag_set(prev, reg), function_tag_set(next, reg));
    if (w.theta_sem > 0 && sem) s += w.theta_sem * std::clamp(sem(prev, next), 0.0, 1.0);
    return s;
}

double masr_average(const std::vector<TrajectoryRecord>& rs, const SimilarityWeights& w,
                    const SemanticHook& sem, const Registry& reg) {
    check_weights(w);
    double sum = 0;
    int64_t den = 0;
    for (const auto& [_, match] : by_match(rs)) {
        for (size_t i = 0; i + 1 < match.size(); ++i) {
            if (!negative_feedback(*match[i]) || !match[i + 1]->is_revision) continue;
            ++den;
            auto prev = parse_strategy(*match[i], reg);
            auto next = parse_strategy(*match[i + 1], reg);
            // unparseable documents contribute zero similarity
            if (prev && next) sum += masr(*prev, *next, w, sem, reg);
        }
    }
    return sum / ((double)den + kEpsilon);
}

FmaValue first_mover_advantage(const std::vector<TrajectoryRecord>& rs,
                               const std::string& metric) {
    std::vector<TrajectoryRecord> first, second;
    for (const auto& r : rs) (r.moved_first ? first : second).push_back(r);
    FmaValue out;
    if (first.empty() || second.empty()) return out;
    auto eval = [&](const std::vector<TrajectoryRecord>& part) {
        if (metric == "wr") return win_rate(part);
        if (metric == "orr") return over_correction_risk(part);
        if (metric == "csr") return correction_success(part);
        throw std::invalid_argument("unknown FMA metric: " + metric);
    };
    out.value = eval(first) - eval(second);
    out.defined = true;
    return out;
}

PearsonResult pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DegenerateInput("pearson needs paired samples, n >= 2");
    size_t n = xs.size();
    double xbar = 0, ybar = 0;
    for (size_t i = 0; i < n; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= (double)n;
    ybar /= (double)n;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        syy += (ys[i] - ybar) * (ys[i] - ybar);
    }
    if (sxx == 0 || syy == 0) throw DegenerateInput("pearson input has zero variance");
    PearsonResult out;
    out.r = sxy / std::sqrt(sxx * syy);
    out.r = std::clamp(out.r, -1.0, 1.0);
    if (n == 2 || std::abs(out.r) >= 1.0 - 1e-15) {
        out.p = n == 2 ? 1.0 : 0.0;
        return out;
    }
    double df = (double)n - 2;
    double t = out.r * std::sqrt(df / (1.0 - out.r * out.r));
    boost::math::students_t dist(df);
    out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return out;
}

// ------------------------------------------------------------ report

namespace {

MetricValues values_for(const std::vector<TrajectoryRecord>& rs, const SimilarityWeights& w,
                        const Registry& reg) {
    MetricValues v;
    v.n_rounds = (int64_t)rs.size();
    v.n_proposals = (int64_t)rs.size();
    v.n_revisions = std::count_if(rs.begin(), rs.end(),
                                  [](const TrajectoryRecord& r) { return r.is_revision; });
    v.n_neg_feedback = std::count_if(rs.begin(), rs.end(), negative_feedback);
    v.wr = win_rate(rs);
    v.orr = over_correction_risk(rs);
    v.csr = correction_success(rs);
    try {
        v.slope = improvement_slope(rs);
    } catch (const InsufficientRounds&) {
        v.slope = 0.0;
        v.slope_defined = false;
    }
    v.obr = over_budget_rate(rs);
    try {
        v.rvr = rule_violation_rate(rs);
    } catch (const EmptyLog&) {
        v.rvr = 0.0;
    }
    v.cnstr = constructive_rate(rs);
    v.masr = masr_average(rs, w, nullptr, reg);
    for (const char* m : {"wr", "orr", "csr"}) {
        FmaValue f = first_mover_advantage(rs, m);
        v.fma[m] = f.value;
        v.fma_defined[m] = f.defined;
    }
    return v;
}

MetricValues average_values(const std::vector<const MetricValues*>& per_game) {
    MetricValues avg;
    double n = (double)per_game.size();
    for (const auto* g : per_game) {
        avg.wr += g->wr / n;
        avg.orr += g->orr / n;
        avg.csr += g->csr / n;
        avg.slope += g->slope / n;
        avg.obr += g->obr / n;
        avg.rvr += g->rvr / n;
        avg.cnstr += g->cnstr / n;
        avg.masr += g->masr / n;
        avg.n_rounds += g->n_rounds;
        avg.n_revisions += g->n_revisions;
        avg.n_neg_feedback += g->n_neg_feedback;
        avg.n_proposals += g->n_proposals;
        avg.slope_defined = avg.slope_defined && g->slope_defined;
    }
    for (const char* m : {"wr", "orr", "csr"}) {
        double sum = 0;
        int cnt = 0;
        for (const auto* g : per_game) {
            if (g->fma_defined.at(m)) {
                sum += g->fma.at(m);
                ++cnt;
            }
        }
        avg.fma[m] = cnt == 0 ? 0.0 : sum / cnt;
        avg.fma_defined[m] = cnt > 0;
    }
    return avg;
}

json values_to_json(const MetricValues& v) {
    return json{
        {"wr", v.wr},
        {"orr", v.orr},
        {"csr", v.csr},
        {"slope", v.slope},
        {"slope_defined", v.slope_defined},
        {"obr", v.obr},
        {"rvr", v.rvr},
        {"cnstr", v.cnstr},
        {"masr", v.masr},
        {"fma", v.fma},
        {"fma_defined", v.fma_defined},
        {"n_rounds", v.n_rounds},
        {"n_revisions", v.n_revisions},
        {"n_neg_feedback", v.n_neg_feedback},
        {"n_proposals", v.n_proposals},
    };
}

MetricValues values_from_json(const json& j) {
    MetricValues v;
    v.wr = j.at("wr");
    v.orr = j.at("orr");
    v.csr = j.at("csr");
    v.slope = j.at("slope");
    v.slope_defined = j.at("slope_defined");
    v.obr = j.at("obr");
    v.rvr = j.at("rvr");
    v.cnstr = j.at("cnstr");
    v.masr = j.at("masr");
    v.fma = j.at("fma").get<std::map<std::string, double>>();
    v.fma_defined = j.at("fma_defined").get<std::map<std::string, bool>>();
    v.n_rounds = j.at("n_rounds");
    v.n_revisions = j.at("n_revisions");
    v.n_neg_feedback = j.at("n_neg_feedback");
    v.n_proposals = j.at("n_proposals");
    return v;
}

}  // namespace

MetricReport compute_report(const std::vector<TrajectoryRecord>& log,
                            const SimilarityWeights& weights, const Registry& reg) {
    if (log.empty()) throw EmptyLog("cannot report on an empty log");
    check_weights(weights);

    std::map<std::string, std::map<std::string, std::vector<TrajectoryRecord>>> split;
    for (const auto& r : log) split[r.model_self][std::string(to_string(r.game))].push_back(r);

    MetricReport report;
    for (const auto& [model, games] : split) {
        std::vector<const MetricValues*> collected;
        for (const auto& [game, rs] : games)
            report.per_game[model][game] = values_for(rs, weights, reg);
        for (const auto& [game, v] : report.per_game[model]) collected.push_back(&v);
        report.average[model] = average_values(collected);
    }

    if (report.average.size() >= 2) {
        std::vector<double> obrs, wrs;
        for (const auto& [_, v] : report.average) {
            obrs.push_back(v.obr);
            wrs.push_back(v.wr);
        }
        try {
            report.obr_wr_correlation = pearson(obrs, wrs);
        } catch (const DegenerateInput&) {
            report.obr_wr_correlation.reset();
        }
    }
    return report;
}

json to_json(const MetricReport& report) {
    json per_game = json::object();
    for (const auto& [model, games] : report.per_game) {
        per_game[model] = json::object();
        for (const auto& [game, v] : games) per_game[model][game] = values_to_json(v);
    }
    json average = json::object();
    for (const auto& [model, v] : report.average) average[model] = values_to_json(v);
    json j{{"per_game", per_game}, {"average", average}};
    if (report.obr_wr_correlation)
        j["obr_wr_correlation"] = json{{"r", report.obr_wr_correlation->r},
                                       {"p", report.obr_wr_correlation->p}};
    return j;
}

MetricReport report_from_json(const json& j) {
    MetricReport report;
    for (auto it = j.at("per_game").begin(); it != j.at("per_game").end(); ++it)
        for (auto git = it.value().begin(); git != it.value().end(); ++git)
            report.per_game[it.key()][git.key()] = values_from_json(git.value());
    for (auto it = j.at("average").begin(); it != j.at("average").end(); ++it)
        report.average[it.key()] = values_from_json(it.value());
    if (j.contains("obr_wr_correlation"))
        report.obr_wr_correlation =
            PearsonResult{j["obr_wr_correlation"].at("r"), j["obr_wr_correlation"].at("p")};
    return report;
}

RadarTable radar_normalize(const MetricReport& report) {
    if (report.average.size() < 2) throw DegenerateInput("radar needs >= 2 models");
    RadarTable table;
    table.metric_names = {"wr", "csr", "slope", "inv_orr", "inv_obr"};
    std::vector<std::vector<double>> raw;  // metric-major
    std::vector<std::string> models;
    for (const auto& [model, _] : report.average) models.push_back(model);
    for (const auto& name : table.metric_names) {
        std::vector<double> col;
        for (const auto& model : models) {
            const MetricValues& v = report.average.at(model);
            if (name == "wr") col.push_back(v.wr);
            else if (name == "csr") col.push_back(v.csr);
            else if (name == "slope") col.push_back(v.slope);
            else if (name == "inv_orr") col.push_back(1.0 - v.orr);
            else col.push_back(1.0 - v.obr);
        }
        raw.push_back(std::move(col));
    }
    for (const auto& col : raw) {
        double lo = *std::min_element(col.begin(), col.end());
        double hi = *std::max_element(col.begin(), col.end());
        bool degenerate = hi - lo < kEpsilon;
        table.degenerate.push_back(degenerate);
        for (size_t m = 0; m < models.size(); ++m) {
            double scaled = degenerate ? 0.5 : (col[m] - lo) / (hi - lo);
            table.rows[models[m]].push_back(scaled);
        }
    }
    return table;
}

namespace {

const std::vector<std::pair<const char*, double MetricValues::*>> kColumns = {
    {"WR", &MetricValues::wr},     {"ORR", &MetricValues::orr},
    {"CSR", &MetricValues::csr},   {"Slope", &MetricValues::slope},
    {"OBR", &MetricValues::obr},   {"RVR", &MetricValues::rvr},
    {"CnstrR", &MetricValues::cnstr}, {"MASR", &MetricValues::masr},
};

}  // namespace

std::string report_markdown(const MetricReport& report) {
    std::ostringstream out;
    auto table = [&](const std::map<std::string, MetricValues>& rows, const std::string& title) {
        out << "## " << title << "\n\n| Model |";
        for (const auto& [name, _] : kColumns) out << " " << name << " |";
        out << " FMA(WR) |\n|---|";
        for (size_t i = 0; i < kColumns.size() + 1; ++i) out << "---|";
        out << "\n";
        for (const auto& [model, v] : rows) {
            out << "| " << model << " |";
            for (const auto& [_, member] : kColumns) {
                char buf[32];
                std::snprintf(buf, sizeof buf, " %.4f |", v.*member);
                out << buf;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.4f |\n", v.fma.at("wr"));
            out << buf;
        }
        out << "\n";
    };
    table(report.average, "Averages across games");
    std::map<std::string, std::map<std::string, MetricValues>> by_game;
    for (const auto& [model, games] : report.per_game)
        for (const auto& [game, v] : games) by_game[game][model] = v;
    for (const auto& [game, rows] : by_game) table(rows, game);
    if (report.obr_wr_correlation) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "OBR vs WR: Pearson r = %.4f, p = %.6f\n",
                      report.obr_wr_correlation->r, report.obr_wr_correlation->p);
        out << buf;
    }
    return out.str();
}

std::string report_csv(const MetricReport& report) {
    std::ostringstream out;
    out << "model,game";
    for (const auto& [name, _] : kColumns) out << "," << name;
    out << ",FMA_WR,FMA_ORR,FMA_CSR,n_rounds\n";
    auto row = [&](const std::string& model, const std::string& game, const MetricValues& v) {
        out << model << "," << game;
        char buf[32];
        for (const auto& [_, member] : kColumns) {
            std::snprintf(buf, sizeof buf, ",%.6f", v.*member);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,", v.fma.at("wr"), v.fma.at("orr"),
                      v.fma.at("csr"));
        out << buf << v.n_rounds << "\n";
    };
    for (const auto& [model, games] : report.per_game)
        for (const auto& [game, v] : games) row(model, game, v);
    for (const auto& [model, v] : report.average) row(model, "avg", v);
    return out.str();
}

json radar_json(const MetricReport& report) {
    RadarTable table = radar_normalize(report);
    json rows = json::object();
    for (const auto& [model, vals] : table.rows) rows[model] = vals;
    return json{
        {"metrics", table.metric_names},
        {"degenerate", table.degenerate},
        {"models", rows},
    };
}

}  // namespace metrics
}  // namespace advgame
