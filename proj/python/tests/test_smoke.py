"""Smoke tests for the compiled python module."""

import math

import pytest

import pce


def test_builtin_names():
    assert "z2-quintic" in pce.builtin_systems()
    assert set(pce.builtin_conditions()) >= {
        "lambda1",
        "lambda2",
        "lambda3",
        "lambda4",
    }


def test_symbolic_tau_linear_is_isochronous():
    out = pce.tau("linear", max_k=4)
    assert len(out["taus"]) == 4
    for t in out["taus"]:
        assert t["raw"]["terms"] == []


def test_symbolic_tau_lambda1_reduced():
    out = pce.tau("z2-quintic", "lambda1", max_k=2, reduce=True)
    # tau_1 = (1/12)(-48 - 10 a2^2 - 9 a3 - 36 a7 - 4 a7^2): five terms
    t1 = out["taus"][0]["reduced"]
    assert len(t1["terms"]) == 5
    consts = [term for term in t1["terms"] if set(term["exponents"]) == {0}]
    assert consts and consts[0]["re"] == "-4"


def test_tau_at_point_matches_symbolic_constant():
    vals = pce.tau_at("z2-quintic", "lambda1", {"a2": 0, "a3": 0, "a4": 0, "a7": 0})
    assert vals[0] == pytest.approx(-4.0, abs=1e-12)


def test_period_of_linear_center():
    p = pce.period("linear", "", {}, 0.1)
    assert p == pytest.approx(2 * math.pi, abs=1e-9)


def test_resultant_of_common_root_pair():
    # p = x - 1, q = x^2 - 1 share the root 1: resultant is 0
    p = {"variables": ["x"], "terms": [
        {"exponents": [1], "re": "1", "im": "0"},
        {"exponents": [0], "re": "-1", "im": "0"},
    ]}
    q = {"variables": ["x"], "terms": [
        {"exponents": [2], "re": "1", "im": "0"},
        {"exponents": [0], "re": "-1", "im": "0"},
    ]}
    r = pce.resultant(p, q, "x")
    assert r["terms"] == []


def test_real_root_count():
    # x^2 - 2
    assert pce.real_root_count(["-2", "0", "1"]) == 2
    # x^2 + 1
    assert pce.real_root_count(["1", "0", "1"]) == 0
    # (x-1)^2 counted once
    assert pce.real_root_count(["1", "-2", "1"]) == 1


def test_run_case_small():
    rep = pce.run_case("lambda1", starts=400, seed=1)
    assert rep["name"] == "lambda1"
    assert rep["solution_count"] >= 1
    tiers = {v["tier"] for v in rep["verdicts"]}
    assert tiers <= {"proof", "symbolic+isolation", "numeric-evidence"}
