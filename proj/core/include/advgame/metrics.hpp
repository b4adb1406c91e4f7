#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advgame/strategy.hpp"
#include "advgame/trajectory.hpp"

namespace advgame {
namespace metrics {

inline constexpr double kEpsilon = 1e-9;  // denominator guard

struct EmptyLog : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientRounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WeightSumInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A record counts as carrying negative feedback when its round was lost or
// invalid; this is the signal ORR / CSR / CnstrR condition on.
bool negative_feedback(const TrajectoryRecord& r);

// ------------------------------------------------------------ per-model rates
// All take the records of ONE model (any mix of games unless noted) and are
// pure functions of the log.

double win_rate(const std::vector<TrajectoryRecord>& rs);             // throws EmptyLog
double over_correction_risk(const std::vector<TrajectoryRecord>& rs); // 0 on empty denominator
double correction_success(const std::vector<TrajectoryRecord>& rs);   // 0 when no revisions
double over_budget_rate(const std::vector<TrajectoryRecord>& rs);     // throws EmptyLog
double rule_violation_rate(const std::vector<TrajectoryRecord>& rs);  // round-1 records only; throws EmptyLog
double constructive_rate(const std::vector<TrajectoryRecord>& rs);    // Phi read from outcomes

// OLS slope of per-round win rate against round index 1..R. Throws
// InsufficientRounds when fewer than two round indices are present.
double improvement_slope(const std::vector<TrajectoryRecord>& rs);
double ols_slope(const std::vector<double>& ys);  // xs = 1..n

struct SimilarityWeights {
    double theta_struct = 0.5;
    double theta_sem = 0.0;
    double theta_func = 0.5;
};
void check_weights(const SimilarityWeights& w);  // throws WeightSumInvalid

using SemanticHook = std::function<double(const Strategy&, const Strategy&)>;

// Pairwise similarity of consecutive strategies: weighted Jaccard of action
// sets and function-tag sets, plus an optional caller-supplied semantic term.
double masr(const Strategy& prev, const Strategy& next, const SimilarityWeights& w,
            const SemanticHook& sem = nullptr, const Registry& reg = Registry::builtin());

// Average MASR over a model's correction steps (revision after negative
// feedback), epsilon-guarded.
double masr_average(const std::vector<TrajectoryRecord>& rs, const SimilarityWeights& w,
                    const SemanticHook& sem = nullptr, const Registry& reg = Registry::builtin());

struct FmaValue {
    double value = 0.0;
    bool defined = false;  // requires rounds under both move orders
};
// mean(metric | moved_first) - mean(metric | moved_second), for
// metric in {"wr", "orr", "csr"}.
FmaValue first_mover_advantage(const std::vector<TrajectoryRecord>& rs, const std::string& metric);

struct PearsonResult {
    double r = 0.0;
    double p = 1.0;  // two-sided, via the t-distribution
};
PearsonResult pearson(const std::vector<double>& xs, const std::vector<double>& ys);  // throws DegenerateInput

// ------------------------------------------------------------ report

struct MetricValues {
    double wr = 0, orr = 0, csr = 0, slope = 0, obr = 0, rvr = 0, cnstr = 0, masr = 0;
    std::map<std::string, double> fma;  // "wr" / "orr" / "csr"
    std::map<std::string, bool> fma_defined;
    int64_t n_rounds = 0, n_revisions = 0, n_neg_feedback = 0, n_proposals = 0;
    bool slope_defined = true;
};

struct MetricReport {
    // per (model, game) and per model averaged across games (unweighted mean
    // over the games the model played).
    std::map<std::string, std::map<std::string, MetricValues>> per_game;  // model -> game tag -> values
    std::map<std::string, MetricValues> average;
    std::optional<PearsonResult> obr_wr_correlation;  // needs >= 2 models with variance
};

MetricReport compute_report(const std::vector<TrajectoryRecord>& log,
                            const SimilarityWeights& weights = {},
                            const Registry& reg = Registry::builtin());

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

// Radar table: WR, CSR, slope, 1-ORR, 1-OBR min-max scaled across models so
// higher is better. A metric constant across models maps everyone to 0.5 and
// is flagged.
struct RadarTable {
    std::vector<std::string> metric_names;  // wr, csr, slope, inv_orr, inv_obr
    std::map<std::string, std::vector<double>> rows;  // model -> normalized values
    std::vector<bool> degenerate;  // per metric
};
RadarTable radar_normalize(const MetricReport& report);  // throws DegenerateInput if < 2 models

std::string report_markdown(const MetricReport& report);
std::string report_csv(const MetricReport& report);
nlohmann::json radar_json(const MetricReport& report);

}  // namespace metrics
}  // namespace advgame
