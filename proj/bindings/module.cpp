#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "findel/scenario.hpp"

namespace py = pybind11;
using namespace findel;

namespace {

// Thin value wrapper: PrimPtr points at const nodes, which pybind11
// holders cannot own directly.
struct PyContract {
    PrimPtr prim;
};

PyContract contract_from(const std::string& text,
                         const std::map<std::string, std::uint64_t>& params,
                         Time delta) {
    SugarConfig cfg{delta};
    auto names = derivative_names();
    if (std::find(names.begin(), names.end(), text) != names.end())
        return {make_derivative(text, params, cfg).prim};
    return {parse(text, cfg)};
}

}  // namespace

PYBIND11_MODULE(_findel, m) {
    m.doc() = "Findel financial contracts: parsing, simulation, and analysis";

    py::class_<PyContract>(m, "Contract")
        .def("__str__", [](const PyContract& c) { return print(c.prim); })
        .def("__repr__",
             [](const PyContract& c) { return "Contract(" + print(c.prim) + ")"; })
        .def(
            "__eq__",
            [](const PyContract& a, const PyContract& b) {
                return equal(a.prim, b.prim);
            },
            py::is_operator());

    m.def(
        "parse",
        [](const std::string& text, Time delta) {
            return PyContract{parse(text, SugarConfig{delta})};
        },
        py::arg("text"), py::arg("delta") = 30,
        "Parse contract text (sugar is desugared eagerly).");

    m.def("contract", &contract_from, py::arg("name_or_text"),
          py::arg("params") = std::map<std::string, std::uint64_t>{},
          py::arg("delta") = 30,
          "Build a contract from a derivative name or inline text.");

    m.def("derivative_names", &derivative_names);

    m.def(
        "run_scenario",
        [](const std::string& json_text, bool check_consistency) {
            Scenario sc = load_scenario(json_text);
            RunOutput out = run_scenario(sc, RunOptions{check_consistency});
            return py::make_tuple(out.json, out.exit_code);
        },
        py::arg("scenario_json"), py::arg("check_consistency") = false,
        "Run a scenario (JSON text); returns (trace_json, exit_code).");

    m.def(
        "predict",
        [](const PyContract& c, const std::string& env_json) {
            Env env;
            if (!env_json.empty()) env = load_env(env_json);
            return cashflow_to_json(cashflows(c.prim, 1, 1, 2, env));
        },
        py::arg("contract"), py::arg("env_json") = std::string{},
        "Predicted cash flows as JSON (issuer=1, owner=2).");

    m.def(
        "analyze",
        [](const PyContract& c, Time now) {
            AnalyzerScenario scenario;
            scenario.now = now;
            auto probe = gateway_sensitivity(c.prim, scenario);
            for (const auto& e : probe.entries) {
                bool seen = false;
                for (const Gateway& g : scenario.gateways) seen |= g.addr == e.addr;
                if (!seen) scenario.gateways.push_back({e.addr, 1, now});
            }
            return reports_to_json(ownership_report(c.prim, 1, 2),
                                   gateway_sensitivity(c.prim, scenario),
                                   timewindow_report(c.prim, now));
        },
        py::arg("contract"), py::arg("now") = Time{1},
        "Ownership, gateway, and time-window reports as JSON.");
}
