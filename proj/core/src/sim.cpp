#include "advgame/sim.hpp"

#include <cinttypes>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace advgame {

std::string TraceEvent::canonical() const {
    char buf[64];
    // amount printed with fixed precision so the digest is bit-stable
    std::snprintf(buf, sizeof(buf), "%" PRId64 "|%.6f", t, amount);
    return std::string(buf) + "|" + kind + "|" + actor + "|" + target;
}

nlohmann::json to_json(const TraceEvent& e) {
    return nlohmann::json{{"t", e.t}, {"kind", e.kind}, {"actor", e.actor},
                          {"target", e.target}, {"amount", e.amount}};
}

uint64_t fnv1a64(std::string_view data, uint64_t seed) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
    return buf;
}

std::string digest_trace(const std::vector<TraceEvent>& trace) {
    uint64_t h = 14695981039346656037ull;
    for (const auto& e : trace) {
        h = fnv1a64(e.canonical(), h);
        h = fnv1a64("\n", h);
    }
    return hex64(h);
}

}  // namespace advgame
