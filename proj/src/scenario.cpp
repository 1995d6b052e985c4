#include "findel/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace findel {

using Json = nlohmann::ordered_json;

namespace {

Time time_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "INF") return kInfTime;
        throw ScenarioError("expected a number or \"INF\", got " + j.dump());
    }
    return j.get<Time>();
}

Json time_to_json(Time t) {
    if (t == kInfTime) return "INF";
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Action action_from_json(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "issue") {
        return make_issue(j.at("dsc_id").get<Id>(), j.at("issuer").get<Address>(),
                          j.value("proposed_owner", Address{0}));
    }
    if (type == "join") {
        return make_join(j.at("ctr_id").get<Id>(), j.at("caller").get<Address>());
    }
    if (type == "join_or") {
        std::string choice = j.at("choice").get<std::string>();
        if (choice != "first" && choice != "second")
            throw ScenarioError("join_or choice must be \"first\" or \"second\"");
        return make_join_or(j.at("ctr_id").get<Id>(), j.at("caller").get<Address>(),
                            choice == "first" ? Choice::First : Choice::Second);
    }
    if (type == "tick") {
        return make_tick(j.at("n").get<std::uint64_t>());
    }
    throw ScenarioError("unknown action type: " + type);
}

Json action_to_json(const Action& a) {
    Json j;
    switch (a.kind) {
        case Action::Kind::Issue:
            j["type"] = "issue";
            j["dsc_id"] = a.dsc_id;
            j["issuer"] = a.issuer;
            j["proposed_owner"] = a.proposed_owner;
            break;
        case Action::Kind::Join:
            j["type"] = "join";
            j["ctr_id"] = a.ctr_id;
            j["caller"] = a.caller;
            break;
        case Action::Kind::JoinOr:
            j["type"] = "join_or";
            j["ctr_id"] = a.ctr_id;
            j["caller"] = a.caller;
            j["choice"] = a.choice == Choice::First ? "first" : "second";
            break;
        case Action::Kind::Tick:
            j["type"] = "tick";
            j["n"] = a.ticks;
            break;
    }
    return j;
}

Json event_to_json(const Event& e) {
    Json j;
    switch (e.kind) {
        case EventKind::IssuedFor:
            j["event"] = "issued_for";
            j["ctr_id"] = e.ctr_id;
            j["proposed_owner"] = e.proposed_owner;
            break;
        case EventKind::Executed:
            j["event"] = "executed";
            j["ctr_id"] = e.ctr_id;
            break;
        case EventKind::Deleted:
            j["event"] = "deleted";
            j["ctr_id"] = e.ctr_id;
            break;
    }
    return j;
}

Json transaction_to_json(const Transaction& t) {
    Json j;
    j["id"] = t.id;
    j["ctr_id"] = t.ctr_id;
    j["from"] = t.from;
    j["to"] = t.to;
    j["amount"] = t.amount;
    j["currency"] = to_string(t.currency);
    j["timestamp"] = time_to_json(t.timestamp);
    return j;
}

Json contract_to_json(const FinContract& c) {
    Json j;
    j["ctr_id"] = c.ctr_id;
    j["dsc_id"] = c.dsc_id;
    j["primitive"] = print(c.prim);
    j["issuer"] = c.issuer;
    j["owner"] = c.owner;
    j["proposed_owner"] = c.proposed_owner;
    j["scale"] = c.scale;
    return j;
}

Json balance_to_json(const Balance& b) {
    Json arr = Json::array();
    for (const auto& [key, amount] : b) {
        Json j;
        j["address"] = key.first;
        j["currency"] = to_string(key.second);
        j["amount"] = amount;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }

    Scenario sc;
    if (j.contains("config")) {
        const Json& cfg = j["config"];
        if (cfg.contains("delta")) sc.config.sugar.delta = time_from_json(cfg["delta"]);
        if (cfg.contains("freshness_threshold"))
            sc.config.engine.freshness_threshold =
                time_from_json(cfg["freshness_threshold"]);
        if (cfg.contains("year_length"))
            sc.config.year_length = time_from_json(cfg["year_length"]);
    }
    sc.initial.config = sc.config.engine;

    Id max_dsc = 0;
    for (const Json& d : j.value("descriptions", Json::array())) {
        ContractDescription dsc;
        dsc.dsc_id = d.at("dsc_id").get<Id>();
        if (d.contains("contract")) {
            dsc.prim = parse(d["contract"].get<std::string>(), sc.config.sugar);
        } else if (d.contains("derivative")) {
            const Json& dd = d["derivative"];
            std::map<std::string, std::uint64_t> params;
            Json params_json = dd.value("params", Json::object());
            for (const auto& [key, value] : params_json.items())
                params[key] = time_from_json(value);
            std::string name = dd.at("name").get<std::string>();
            if (name == "cds" && !params.count("year"))
                params["year"] = sc.config.year_length;
            dsc.prim = make_derivative(name, params, sc.config.sugar).prim;
        } else {
            throw ScenarioError("description needs a \"contract\" or \"derivative\"");
        }
        dsc.scale = d.value("scale", std::uint64_t{1});
        dsc.valid_from = d.contains("valid_from") ? time_from_json(d["valid_from"]) : 0;
        dsc.valid_until =
            d.contains("valid_until") ? time_from_json(d["valid_until"]) : kInfTime;
        for (const ContractDescription& seen : sc.initial.descriptions)
            if (seen.dsc_id == dsc.dsc_id)
                throw ScenarioError("duplicate dsc_id " + std::to_string(dsc.dsc_id));
        max_dsc = std::max(max_dsc, dsc.dsc_id);
        sc.initial.descriptions.push_back(std::move(dsc));
    }
    sc.initial.fresh_id = max_dsc + 1;

    for (const Json& b : j.value("balances", Json::array())) {
        sc.initial.balance[{b.at("address").get<Address>(),
                            currency_from_string(b.at("currency").get<std::string>())}] =
            b.at("amount").get<std::int64_t>();
    }

    if (j.contains("time")) sc.initial.time = time_from_json(j["time"]);
    if (sc.initial.time == kInfTime)
        throw ScenarioError("the scenario clock cannot start at INF");

    for (const Json& g : j.value("gateways", Json::array())) {
        std::vector<GatewaySample> samples;
        for (const Json& s : g.value("samples", Json::array()))
            samples.push_back({time_from_json(s.at("time")),
                               s.at("value").get<std::uint64_t>()});
        sc.timeline.entries.push_back({g.at("address").get<Address>(),
                                       std::move(samples)});
    }

    for (const Json& a : j.value("actions", Json::array()))
        sc.actions.push_back(action_from_json(a));

    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    return load_scenario(read_file(path));
}

RunOutput run_scenario(const Scenario& sc, const RunOptions& options) {
    RunOutput out;
    State s = sc.initial;
    Json steps = Json::array();
    bool inconsistent = false;

    for (const Action& a : sc.actions) {
        s.gateways = sc.timeline.materialize(s.time);
        std::size_t events_before = s.events.size();
        std::size_t ledger_before = s.ledger.size();
        ApplyResult r = apply(s, a);

        Json step;
        step["action"] = action_to_json(a);
        step["outcome"] = to_string(r.outcome);
        if (r.rejection) step["reason"] = to_string(*r.rejection);
        Json new_events = Json::array();
        for (std::size_t i = 0; i + events_before < r.state.events.size(); ++i)
            new_events.push_back(event_to_json(r.state.events[i]));
        step["new_events"] = std::move(new_events);
        Json new_txs = Json::array();
        for (std::size_t i = ledger_before; i < r.state.ledger.size(); ++i)
            new_txs.push_back(transaction_to_json(r.state.ledger[i]));
        step["new_transactions"] = std::move(new_txs);
        steps.push_back(std::move(step));

        s = std::move(r.state);
        if (options.check_consistency && !check_consistent(s).pass()) {
            inconsistent = true;
            break;
        }
    }
    s.gateways = sc.timeline.materialize(s.time);

    Json final_state;
    final_state["time"] = time_to_json(s.time);
    final_state["balances"] = balance_to_json(s.balance);
    Json contracts = Json::array();
    for (const FinContract& c : s.contracts) contracts.push_back(contract_to_json(c));
    final_state["contracts"] = std::move(contracts);
    Json ledger = Json::array();
    for (const Transaction& t : s.ledger) ledger.push_back(transaction_to_json(t));
    final_state["ledger"] = std::move(ledger);
    Json events = Json::array();
    for (const Event& e : s.events) events.push_back(event_to_json(e));
    final_state["events"] = std::move(events);

    Json doc;
    doc["steps"] = std::move(steps);
    doc["final"] = std::move(final_state);
    doc["consistent"] = !inconsistent;

    out.trace = run_trace(sc.initial, sc.actions, sc.timeline);
    out.json = doc.dump(2) + "\n";
    out.exit_code = inconsistent ? 2 : 0;
    return out;
}

std::string reports_to_json(const OwnershipReport& ownership,
                            const GatewayReport& gateway,
                            const TimeWindowReport& windows) {
    Json doc;

    Json own;
    own["issuer"] = ownership.issuer;
    own["joiner"] = ownership.joiner;
    own["accidental_swap"] = ownership.has_accidental_swap();
    Json entries = Json::array();
    for (const OwnershipEntry& e : ownership.entries) {
        Json j;
        j["path"] = e.path;
        j["generated"] = print(e.generated);
        j["issuer_role"] = to_string(e.issuer_role);
        j["proposed_owner_role"] = to_string(e.proposed_owner_role);
        j["flagged"] = e.flagged;
        entries.push_back(std::move(j));
    }
    own["entries"] = std::move(entries);
    doc["ownership"] = std::move(own);

    Json gtw;
    Json gentries = Json::array();
    for (const GatewayEntry& e : gateway.entries) {
        Json j;
        j["path"] = e.path;
        j["address"] = e.addr;
        j["effect"] = "full_deletion";
        j["atomic"] = e.full_deletion;
        Json rolled = Json::array();
        for (const Transaction& t : e.rolled_back)
            rolled.push_back(transaction_to_json(t));
        j["rolled_back"] = std::move(rolled);
        gentries.push_back(std::move(j));
    }
    gtw["entries"] = std::move(gentries);
    doc["gateway"] = std::move(gtw);

    Json tw;
    Json wentries = Json::array();
    for (const TimeWindowEntry& e : windows.entries) {
        Json j;
        j["path"] = e.path;
        j["from"] = time_to_json(e.t0);
        j["until"] = time_to_json(e.t1);
        j["consequence_of_missing"] = "deleted";
        j["expired"] = e.expired;
        wentries.push_back(std::move(j));
    }
    tw["entries"] = std::move(wentries);
    doc["timewindows"] = std::move(tw);

    return doc.dump(2) + "\n";
}

std::string cashflow_to_json(const std::optional<CashFlow>& flows) {
    Json doc;
    if (!flows) {
        doc["outcome"] = "failure";
        doc["flows"] = Json::array();
    } else {
        doc["outcome"] = "success";
        Json arr = Json::array();
        for (const Flow& f : *flows) {
            Json j;
            j["from"] = f.from;
            j["to"] = f.to;
            j["amount"] = f.amount;
            j["currency"] = to_string(f.currency);
            arr.push_back(std::move(j));
        }
        doc["flows"] = std::move(arr);
    }
    return doc.dump(2) + "\n";
}

Env load_env(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ScenarioError(std::string("env file is not valid JSON: ") + e.what());
    }
    Env env;
    if (j.contains("now")) env.now = time_from_json(j["now"]);
    for (const Json& g : j.value("gateways", Json::array()))
        env.gateway_fn[g.at("address").get<Address>()] =
            g.at("value").get<std::uint64_t>();
    Json or_policy = j.value("or_policy", Json::object());
    for (const auto& [path, choice] : or_policy.items()) {
        std::string c = choice.get<std::string>();
        if (c != "first" && c != "second")
            throw ScenarioError("or_policy values must be \"first\" or \"second\"");
        env.or_policy[path] = c == "first" ? Choice::First : Choice::Second;
    }
    Json join_policy = j.value("join_policy", Json::object());
    for (const auto& [path, t] : join_policy.items())
        env.join_policy[path] = time_from_json(t);
    return env;
}

Env load_env_file(const std::string& path) { return load_env(read_file(path)); }

}  // namespace findel
