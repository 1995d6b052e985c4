"""Findel financial contracts: parsing, simulation, and analysis."""

try:
    from ._findel import (
        Contract,
        analyze,
        contract,
        derivative_names,
        parse,
        predict,
        run_scenario,
    )
except ImportError:  # running against an in-tree build
    from _findel import (
        Contract,
        analyze,
        contract,
        derivative_names,
        parse,
        predict,
        run_scenario,
    )

__all__ = [
    "Contract",
    "analyze",
    "contract",
    "derivative_names",
    "parse",
    "predict",
    "run_scenario",
]
