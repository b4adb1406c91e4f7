#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "advgame/bots.hpp"
#include "advgame/config.hpp"
#include "advgame/game_bc.hpp"
#include "advgame/game_td.hpp"
#include "advgame/game_ta.hpp"
#include "advgame/metrics.hpp"
#include "advgame/orchestrator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace advgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

GameKind parse_game(const std::string& s) {
    std::string up;
    for (char c : s) up += (char)std::toupper((unsigned char)c);
    return game_kind_from_string(up);
}

// Model spec grammar: "policy[:seed]", "replay:<file>", or
// "http://host:port[/path]".
std::unique_ptr<Provider> provider_from_spec(const std::string& spec, const Registry& reg) {
    if (spec.rfind("http://", 0) == 0) {
        std::string rest = spec.substr(7);
        std::string path = "/strategy";
        if (size_t slash = rest.find('/'); slash != std::string::npos) {
            path = rest.substr(slash);
            rest = rest.substr(0, slash);
        }
        size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("external spec needs host:port: " + spec);
        return make_external_agent(rest.substr(0, colon), std::stoi(rest.substr(colon + 1)),
                                   path);
    }
    if (spec.rfind("replay:", 0) == 0) return make_replay_provider(spec.substr(7));
    std::string policy = spec;
    uint64_t seed = 0;
    if (size_t colon = spec.find(':'); colon != std::string::npos) {
        policy = spec.substr(0, colon);
        seed = std::stoull(spec.substr(colon + 1));
    }
    return make_scripted_bot(policy, seed, reg);
}

SimOutcome dispatch(GameKind game, const Strategy& invader, const Strategy& defender,
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

void write_records(const std::string& path, const std::vector<TrajectoryRecord>& recs) {
    std::ostringstream out;
    for (const auto& r : recs) out << serialize_record(r) << "\n";
    spit(path, out.str());
}

int cmd_simulate(const std::string& game_s, const std::string& defender_file,
                 const std::string& invader_file, const std::string& trace_file) {
    const Registry& reg = Registry::builtin();
    GameKind game = parse_game(game_s);
    BudgetConfig budgets;

    struct Side {
        const char* label;
        Role role;
        std::string file;
    } sides[2] = {{"defender", Role::Defender, defender_file},
                  {"invader", Role::Invader, invader_file}};
    Strategy strategies[2];
    for (auto& side : sides) {
        ValidationResult v = validate(slurp(side.file), game, side.role,
                                      budgets.for_role(game, side.role), reg);
        if (!v.valid()) {
            std::cerr << side.label << " strategy invalid: " << to_string(v.violation->code)
                      << " (" << v.violation->detail << ")\n";
            return kExitValidation;
        }
        strategies[side.role == Role::Defender ? 0 : 1] = *v.strategy;
    }

    SimOutcome sim = dispatch(game, strategies[1], strategies[0], reg);
    std::cout << to_json(sim.outcome).dump(2) << "\n";
    if (!trace_file.empty()) {
        std::ostringstream out;
        for (const auto& e : sim.trace) out << to_json(e).dump() << "\n";
        spit(trace_file, out.str());
    }
    return kExitOk;
}

int cmd_match(const std::string& game_s, const std::string& spec_a, const std::string& spec_b,
              int rounds, bool b_first, const std::string& out_file) {
    const Registry& reg = Registry::builtin();
    MatchPlan plan;
    plan.game = parse_game(game_s);
    plan.model_a = spec_a;
    plan.model_b = spec_b;
    plan.rounds = rounds;
    plan.a_first = !b_first;
    auto pa = provider_from_spec(spec_a, reg);
    auto pb = provider_from_spec(spec_b, reg);
    auto recs = run_match(plan, *pa, *pb, reg);
    if (out_file.empty()) {
        for (const auto& r : recs) std::cout << serialize_record(r) << "\n";
    } else {
        write_records(out_file, recs);
    }
    return kExitOk;
}

int cmd_tournament(const std::string& config_file, const std::string& out_dir, int jobs_override) {
    const Registry& reg = Registry::builtin();
    RunConfig cfg = load_run_config(config_file);
    if (cfg.models.size() < 2) {
        std::cerr << "tournament needs at least 2 models\n";
        return kExitValidation;
    }
    if (jobs_override > 0) cfg.jobs = jobs_override;
    TournamentPlan plan = plan_from_config(cfg);
    auto recs = run_tournament(plan, factory_from_config(cfg, reg), reg);
    fs::create_directories(out_dir);
    write_records((fs::path(out_dir) / "tournament.jsonl").string(), recs);
    std::cout << "wrote " << recs.size() << " records to " << out_dir << "/tournament.jsonl\n";
    return kExitOk;
}

int cmd_metrics(const std::vector<std::string>& log_files, const std::string& out_file) {
    std::vector<TrajectoryRecord> log;
    for (const auto& path : log_files) {
        auto recs = read_log(path);
        log.insert(log.end(), recs.begin(), recs.end());
    }
    metrics::MetricReport report = metrics::compute_report(log);
    std::string text = metrics::to_json(report).dump(2) + "\n";
    if (out_file.empty()) std::cout << text;
    else spit(out_file, text);
    return kExitOk;
}

int cmd_report(const std::string& report_file, const std::string& format) {
    json j = json::parse(slurp(report_file), nullptr, false);
    if (j.is_discarded()) throw InvalidRecord("report file is not valid JSON: " + report_file);
    metrics::MetricReport report = metrics::report_from_json(j);
    if (format == "md") std::cout << metrics::report_markdown(report);
    else if (format == "csv") std::cout << metrics::report_csv(report);
    else std::cout << metrics::radar_json(report).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial strategy game harness"};
    app.set_version_flag("--version",
                         std::string("advgame 1.0.0, rules digest ") +
                             Registry::builtin().digest());
    app.require_subcommand(1);

    std::string game, defender_file, invader_file, trace_file;
    auto* simulate = app.add_subcommand("simulate", "Run one engine on two strategy files");
    simulate->add_option("--game", game, "tdg | bcg | tag")->required();
    simulate->add_option("--defender", defender_file, "defender strategy JSON")->required();
    simulate->add_option("--invader", invader_file, "invader strategy JSON")->required();
    simulate->add_option("--trace", trace_file, "write the event trace as JSON lines");

    std::string spec_a, spec_b, out_file;
    int rounds = 5;
    bool b_first = false;
    auto* match = app.add_subcommand("match", "Run one closed-loop match");
    match->add_option("--game", game, "tdg | bcg | tag")->required();
    match->add_option("--model-a", spec_a, "provider spec (policy[:seed] | replay:file | http://host:port)")
        ->required();
    match->add_option("--model-b", spec_b, "provider spec")->required();
    match->add_option("--rounds", rounds, "rounds per match");
    match->add_flag("--b-first", b_first, "model B moves first");
    match->add_option("--out", out_file, "log file (default stdout)");

    std::string config_file, out_dir;
    int jobs = 0;
    auto* tournament = app.add_subcommand("tournament", "Run the full match matrix");
    tournament->add_option("--config", config_file, "run config (TOML)")->required();
    tournament->add_option("--out", out_dir, "output directory")->required();
    tournament->add_option("--jobs", jobs, "parallel matches (overrides config)");

    std::vector<std::string> log_files;
    std::string report_out;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compute the metric report from logs");
    metrics_cmd->add_option("--log", log_files, "trajectory log files")->required()
        ->expected(-1);
    metrics_cmd->add_option("--out", report_out, "report file (default stdout)");

    std::string report_file, format = "md";
    auto* report = app.add_subcommand("report", "Render a metric report");
    report->add_option("--report", report_file, "report JSON")->required();
    report->add_option("--format", format, "md | csv | radar-json")
        ->check(CLI::IsMember({"md", "csv", "radar-json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return cmd_simulate(game, defender_file, invader_file, trace_file);
        if (*match) return cmd_match(game, spec_a, spec_b, rounds, b_first, out_file);
        if (*tournament) return cmd_tournament(config_file, out_dir, jobs);
        if (*metrics_cmd) return cmd_metrics(log_files, report_out);
        if (*report) return cmd_report(report_file, format);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
