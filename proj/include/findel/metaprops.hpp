#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "findel/marketplace.hpp"

namespace findel {

// Executable shadow of the state-consistency definition: four conditions
// that every reachable marketplace state satisfies.
struct ConsistencyReport {
    bool fresh_dominates_contracts = true;  // live ids < fresh_id
    bool fresh_dominates_events = true;     // Executed/Deleted ids < fresh_id
    bool live_not_closed = true;            // live ids never Executed/Deleted
    bool no_double_close = true;            // no id both Executed and Deleted

    // (condition index 1-4, offending id)
    std::vector<std::pair<int, Id>> violations;

    bool pass() const {
        return fresh_dominates_contracts && fresh_dominates_events && live_not_closed &&
               no_double_close;
    }
};

ConsistencyReport check_consistent(const State& s);

// Consistency is preserved by every rule application (rejections included).
bool check_preservation(const State& s, const Action& a);

// Registered transactions are never removed or modified.
bool check_ledger_monotone(const State& s, const State& s2);

// Triggered events are never retracted.
bool check_events_monotone(const State& s, const State& s2);

// After one step, a contract live in s is either still live, or exactly
// one of Executed/Deleted was recorded for it.
bool check_trichotomy(const State& s, const State& s2, const FinContract& c);

struct TraceProfile {
    std::string name = "default";
    std::size_t max_depth = 5;
    std::size_t description_pool = 4;
    std::size_t address_pool = 5;
    // Probability (percent) that a generated primitive is steered to
    // contain at least one gateway query.
    int gateway_bias = 0;
};

TraceProfile default_profile();
TraceProfile gateway_heavy_profile();

// Deterministic per seed. The initial state and gateway timeline come
// with the actions so traces are self-contained.
struct RandomTrace {
    State initial;
    GatewayTimeline timeline;
    std::vector<Action> actions;
};

RandomTrace random_trace(std::uint64_t seed, std::size_t length,
                         const TraceProfile& profile = {});

// Deterministic structural generator used by the property suites.
PrimPtr random_primitive(std::uint64_t seed, std::size_t max_depth,
                         int gateway_bias = 0);

}  // namespace findel
