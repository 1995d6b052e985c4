#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "findel/scenario.hpp"

namespace {

using namespace findel;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, std::uint64_t> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, std::uint64_t> params;
    for (const std::string& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parameter must be key=value: " + kv);
        std::string value = kv.substr(eq + 1);
        params[kv.substr(0, eq)] =
            value == "INF" ? kInfTime : std::stoull(value);
    }
    return params;
}

// Accepts either a named derivative (with key=value params) or inline
// contract text.
PrimPtr resolve_contract(const std::string& text,
                         const std::vector<std::string>& kvs,
                         const SugarConfig& cfg) {
    auto names = derivative_names();
    if (std::find(names.begin(), names.end(), text) != names.end())
        return make_derivative(text, parse_params(kvs), cfg).prim;
    return parse(text, cfg);
}

int cmd_parse(const std::string& path, Time delta) {
    std::string text = read_file(path);
    PrimPtr p = parse(text, SugarConfig{delta});
    std::cout << print(p) << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& trace_out,
            bool check_consistency) {
    Scenario sc = load_scenario_file(path);
    RunOutput out = run_scenario(sc, RunOptions{check_consistency});
    if (trace_out.empty()) {
        std::cout << out.json;
    } else {
        std::ofstream f(trace_out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write trace file: " + trace_out);
        f << out.json;
    }
    if (out.exit_code == 2) std::cerr << "consistency violation\n";
    return out.exit_code;
}

int cmd_analyze(const std::string& contract, const std::vector<std::string>& kvs,
                Time now, Time delta, const std::vector<std::string>& gateway_kvs) {
    SugarConfig cfg{delta};
    PrimPtr p = resolve_contract(contract, kvs, cfg);

    AnalyzerScenario scenario;
    scenario.now = now;
    if (gateway_kvs.empty()) {
        // Default snapshot: every queried address reports 1.
        auto report = gateway_sensitivity(p, scenario);  // discover addresses
        std::vector<Address> addrs;
        for (const auto& e : report.entries) addrs.push_back(e.addr);
        std::sort(addrs.begin(), addrs.end());
        addrs.erase(std::unique(addrs.begin(), addrs.end()), addrs.end());
        for (Address a : addrs) scenario.gateways.push_back({a, 1, now});
    } else {
        for (const auto& [addr, value] : parse_params(gateway_kvs))
            scenario.gateways.push_back({std::stoull(addr), value, now});
    }

    std::cout << reports_to_json(ownership_report(p, 1, 2),
                                 gateway_sensitivity(p, scenario),
                                 timewindow_report(p, now));
    return 0;
}

int cmd_predict(const std::string& contract, const std::vector<std::string>& kvs,
                const std::string& env_path, Time delta) {
    SugarConfig cfg{delta};
    PrimPtr p = resolve_contract(contract, kvs, cfg);
    Env env;
    if (!env_path.empty()) env = load_env_file(env_path);
    std::cout << cashflow_to_json(cashflows(p, 1, 1, 2, env));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Findel derivatives: parse, simulate, and analyze contracts"};
    app.require_subcommand(1);

    Time delta = 30;
    app.add_option("--delta", delta, "At-window half-width used when desugaring");

    auto* parse_cmd = app.add_subcommand("parse", "Parse a contract file and reprint it");
    std::string parse_file;
    parse_cmd->add_option("file", parse_file, "contract text file")->required();

    auto* run_cmd = app.add_subcommand("run", "Run a scenario through the marketplace");
    std::string scenario_file, trace_out;
    bool check_consistency = false;
    run_cmd->add_option("scenario", scenario_file, "scenario JSON file")->required();
    run_cmd->add_option("--trace-out", trace_out, "write the trace here instead of stdout");
    run_cmd->add_flag("--check-consistency", check_consistency,
                      "verify state consistency after every step (exit 2 on violation)");

    auto* analyze_cmd =
        app.add_subcommand("analyze", "Ownership, gateway, and time-window reports");
    std::string analyze_contract;
    std::vector<std::string> analyze_params, analyze_gateways;
    Time analyze_now = 1;
    analyze_cmd->add_option("contract", analyze_contract,
                            "derivative name or contract text")->required();
    analyze_cmd->add_option("params", analyze_params, "derivative parameters (key=value)");
    analyze_cmd->add_option("--now", analyze_now, "current time for the reports");
    analyze_cmd->add_option("--gateway", analyze_gateways,
                            "baseline gateway values (addr=value)");

    auto* predict_cmd =
        app.add_subcommand("predict", "Predicted cash flows from the denotational oracle");
    std::string predict_contract, env_file;
    std::vector<std::string> predict_params;
    predict_cmd->add_option("contract", predict_contract,
                            "derivative name or contract text")->required();
    predict_cmd->add_option("params", predict_params, "derivative parameters (key=value)");
    predict_cmd->add_option("--env", env_file, "env JSON: gateways, now, join/or policies");

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed()) return cmd_parse(parse_file, delta);
        if (run_cmd->parsed()) return cmd_run(scenario_file, trace_out, check_consistency);
        if (analyze_cmd->parsed())
            return cmd_analyze(analyze_contract, analyze_params, analyze_now, delta,
                               analyze_gateways);
        if (predict_cmd->parsed())
            return cmd_predict(predict_contract, predict_params, env_file, delta);
    } catch (const findel::ParseError& e) {
        std::cerr << "syntax error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
