#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "advgame/types.hpp"

namespace advgame {

// One line of the deterministic event trace. `t` is simulation ms for TDG,
// the attack-resolution step for BCG, the round for TAG.
struct TraceEvent {
    int64_t t = 0;
    std::string kind;
    std::string actor;
    std::string target;
    double amount = 0.0;

    std::string canonical() const;  // stable serialization used for the digest
};

nlohmann::json to_json(const TraceEvent& e);

struct SimOutcome {
    Outcome outcome;
    std::vector<TraceEvent> trace;
};

// FNV-1a, 64-bit.
uint64_t fnv1a64(std::string_view data, uint64_t seed = 14695981039346656037ull);
std::string hex64(uint64_t v);

std::string digest_trace(const std::vector<TraceEvent>& trace);

}  // namespace advgame
