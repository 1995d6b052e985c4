#pragma once

#include <string>
#include <vector>

#include "findel/analyzer.hpp"
#include "findel/derivatives.hpp"
#include "findel/marketplace.hpp"
#include "findel/metaprops.hpp"
#include "findel/oracle.hpp"

namespace findel {

// Scenario files drive the marketplace from the CLI: a config block,
// contract descriptions (inline text or named derivatives), initial
// balances, scripted gateway timelines, and an ordered action list.

struct ScenarioConfig {
    SugarConfig sugar;
    EngineConfig engine;
    Time year_length = kDefaultYear;
};

struct Scenario {
    ScenarioConfig config;
    State initial;
    GatewayTimeline timeline;
    std::vector<Action> actions;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

struct RunOptions {
    bool check_consistency = false;
};

struct RunOutput {
    TraceResult trace;
    std::string json;   // byte-identical across runs of the same scenario
    int exit_code = 0;  // 2 on a consistency violation
};

RunOutput run_scenario(const Scenario& sc, const RunOptions& options = {});

// Serializers shared by the CLI subcommands; all output is canonical
// (fixed field order, no timestamps).
std::string reports_to_json(const OwnershipReport& ownership,
                            const GatewayReport& gateway,
                            const TimeWindowReport& windows);
std::string cashflow_to_json(const std::optional<CashFlow>& flows);

Env load_env(const std::string& json_text);
Env load_env_file(const std::string& path);

}  // namespace findel
