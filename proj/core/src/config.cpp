#include "advgame/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "advgame/bots.hpp"

namespace advgame {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// drops a # comment that is not inside a quoted string
std::string drop_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

struct TomlValue {
    enum Kind { Int, Bool, Str, Array } kind = Int;
    int64_t i = 0;
    bool b = false;
    std::string s;
    std::vector<TomlValue> items;
};

TomlValue parse_value(const std::string& raw, int lineno) {
    std::string v = strip(raw);
    if (v.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value");
    TomlValue out;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("line " + std::to_string(lineno) + ": unterminated string");
        out.kind = TomlValue::Str;
        out.s = v.substr(1, v.size() - 2);
        return out;
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("line " + std::to_string(lineno) + ": unterminated array");
        out.kind = TomlValue::Array;
        std::string body = v.substr(1, v.size() - 2);
        std::string cur;
        bool quoted = false;
        auto flush = [&] {
            if (!strip(cur).empty()) out.items.push_back(parse_value(cur, lineno));
            cur.clear();
        };
        for (char c : body) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) flush();
            else cur += c;
        }
        flush();
        return out;
    }
    if (v == "true" || v == "false") {
        out.kind = TomlValue::Bool;
        out.b = v == "true";
        return out;
    }
    try {
        size_t used = 0;
        out.i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(lineno) + ": bad value '" + v + "'");
    }
    return out;
}

int64_t as_int(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Int) throw ConfigError("key '" + key + "' must be an integer");
    return v.i;
}

std::string as_str(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Str) throw ConfigError("key '" + key + "' must be a string");
    return v.s;
}

std::vector<std::string> as_str_array(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Array) throw ConfigError("key '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : v.items) out.push_back(as_str(item, key));
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& toml_text) {
    RunConfig cfg;
    std::istringstream in(toml_text);
    std::string line;
    std::string section;  // "", "budgets", "models"
    int lineno = 0;
    bool games_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        line = strip(drop_comment(line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.rfind("[[", 0) == 0 && line.size() > 4 && line.substr(line.size() - 2) == "]]") {
                std::string name = strip(line.substr(2, line.size() - 4));
                if (name != "models")
                    throw ConfigError("line " + std::to_string(lineno) +
                                      ": unknown table array '" + name + "'");
                section = "models";
                cfg.models.emplace_back();
            } else if (line.back() == ']') {
                std::string name = strip(line.substr(1, line.size() - 2));
                if (name != "budgets")
                    throw ConfigError("line " + std::to_string(lineno) + ": unknown table '" +
                                      name + "'");
                section = "budgets";
            } else {
                throw ConfigError("line " + std::to_string(lineno) + ": bad table header");
            }
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        TomlValue value = parse_value(line.substr(eq + 1), lineno);

        if (section.empty()) {
            if (key == "games") {
                games_seen = true;
                for (const auto& g : as_str_array(value, key))
                    cfg.games.push_back(game_kind_from_string(g));
            } else if (key == "rounds") {
                cfg.rounds = (int)as_int(value, key);
            } else if (key == "opponents") {
                cfg.opponents = as_str_array(value, key);
            } else if (key == "jobs") {
                cfg.jobs = (int)as_int(value, key);
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } else if (section == "budgets") {
            if (key == "td_defender") cfg.budgets.td_defender = as_int(value, key);
            else if (key == "td_invader") cfg.budgets.td_invader = as_int(value, key);
            else if (key == "bc") cfg.budgets.bc = as_int(value, key);
            else if (key == "ta_per_character") cfg.budgets.ta_per_character = as_int(value, key);
            else throw ConfigError("unknown budgets key '" + key + "'");
        } else {
            ModelConfig& m = cfg.models.back();
            if (key == "name") m.name = as_str(value, key);
            else if (key == "kind") m.kind = as_str(value, key);
            else if (key == "policy") m.policy = as_str(value, key);
            else if (key == "seed") m.seed = (uint64_t)as_int(value, key);
            else if (key == "host") m.host = as_str(value, key);
            else if (key == "port") m.port = (int)as_int(value, key);
            else if (key == "path") m.path = as_str(value, key);
            else if (key == "timeout_s") m.timeout_s = (int)as_int(value, key);
            else if (key == "file") m.file = as_str(value, key);
            else throw ConfigError("unknown model key '" + key + "'");
        }
    }

    if (!games_seen)
        cfg.games = {GameKind::TowerDefense, GameKind::BattleCard, GameKind::TurnAttribute};
    if (cfg.rounds < 1) throw ConfigError("rounds must be >= 1");
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    for (const auto& m : cfg.models) {
        if (m.name.empty()) throw ConfigError("every model needs a name");
        if (m.kind == "scripted") {
            if (!is_known_bot_policy(m.policy))
                throw ConfigError("unknown bot policy '" + m.policy + "'");
        } else if (m.kind == "external") {
            if (m.host.empty() || m.port <= 0)
                throw ConfigError("external model '" + m.name + "' needs host and port");
        } else if (m.kind == "replay") {
            if (m.file.empty()) throw ConfigError("replay model '" + m.name + "' needs a file");
        } else {
            throw ConfigError("unknown provider kind '" + m.kind + "'");
        }
    }
    std::vector<std::string> names;
    for (const auto& m : cfg.models) names.push_back(m.name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw ConfigError("duplicate model names");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

TournamentPlan plan_from_config(const RunConfig& cfg) {
    TournamentPlan plan;
    for (const auto& m : cfg.models) plan.models.push_back(m.name);
    plan.games = cfg.games;
    plan.rounds = cfg.rounds;
    plan.budgets = cfg.budgets;
    plan.opponents = cfg.opponents;
    plan.jobs = cfg.jobs;
    return plan;
}

ProviderFactory factory_from_config(const RunConfig& cfg, const Registry& reg) {
    auto models = cfg.models;
    return [models, &reg](const std::string& name) -> std::unique_ptr<Provider> {
        for (const auto& m : models) {
            if (m.name != name) continue;
            if (m.kind == "scripted") return make_scripted_bot(m.policy, m.seed, reg);
            if (m.kind == "external")
                return make_external_agent(m.host, m.port, m.path, m.timeout_s);
            return make_replay_provider(m.file);
        }
        throw std::invalid_argument("no provider configured for model: " + name);
    };
}

}  // namespace advgame
