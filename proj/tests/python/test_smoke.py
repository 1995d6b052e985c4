"""Smoke tests for the python bindings. Runnable directly or via pytest."""

import json

import findel


def test_parse_and_print():
    c = findel.parse("And( Zero , At(100, One(USD)) )")
    assert str(c) == "And(Zero, Timebound(70, 130, One(USD)))"
    assert findel.parse("At(100, Zero)", delta=5) == findel.parse(
        "Timebound(95, 105, Zero)"
    )


def test_named_derivatives():
    names = findel.derivative_names()
    assert "frce" in names and "cds" in names
    frce = findel.contract("frce")
    assert str(frce) == "And(Give(Scale(11, One(USD))), Scale(10, One(EUR)))"
    zcb = findel.contract("zcb", {"now": 0, "t": 100})
    assert "Timebound(70, 130" in str(zcb)


def test_run_scenario():
    scenario = {
        "descriptions": [
            {
                "dsc_id": 1,
                "contract": "And(Give(Scale(11, One(USD))), Scale(10, One(EUR)))",
            }
        ],
        "balances": [
            {"address": 1, "currency": "USD", "amount": 100},
            {"address": 1, "currency": "EUR", "amount": 50},
            {"address": 2, "currency": "USD", "amount": 20},
            {"address": 2, "currency": "EUR", "amount": 30},
        ],
        "actions": [
            {"type": "issue", "dsc_id": 1, "issuer": 1, "proposed_owner": 2},
            {"type": "join", "ctr_id": 2, "caller": 2},
        ],
    }
    trace, exit_code = findel.run_scenario(json.dumps(scenario), True)
    assert exit_code == 0
    doc = json.loads(trace)
    assert doc["consistent"] is True
    balances = {
        (b["address"], b["currency"]): b["amount"] for b in doc["final"]["balances"]
    }
    assert balances[(1, "USD")] == 111
    assert balances[(2, "EUR")] == 40


def test_predict():
    flows = json.loads(findel.predict(findel.contract("frce")))
    assert flows["outcome"] == "success"
    amounts = sorted(f["amount"] for f in flows["flows"])
    assert amounts == [10, 11]

    failing = json.loads(findel.predict(findel.parse("ScaleObs(7, One(USD))")))
    assert failing["outcome"] == "failure"


def test_analyze():
    buggy = json.loads(findel.analyze(findel.contract("opt", {"t": 100})))
    assert buggy["ownership"]["accidental_swap"] is True
    fixed = json.loads(findel.analyze(findel.contract("opt_fixed", {"t": 100})))
    assert fixed["ownership"]["accidental_swap"] is False


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
    print("all smoke tests passed")
