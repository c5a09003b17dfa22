import math

import pytest

import chernforge as cf


def test_version():
    assert cf.__version__ == "0.1.0"


def test_scenario_catalog():
    names = {s["name"] for s in cf.list_scenarios()}
    assert "monopole-integrality" in names
    assert "suspension" in names
    assert len(names) >= 13


def test_monopole_chern_number():
    for n in (-1, 2):
        flux = cf.characteristic_number(f"monopole:n={n}", "chern", 1, "s2", 96)
        assert abs(flux - n) < 1e-6


def test_gauss_bonnet():
    assert abs(cf.characteristic_number("ts2", "euler", 0, "s2", 96) - 2.0) < 1e-6


def test_character_evaluation():
    v = cf.evaluate("chern:k=1,bundle=monopole:n=1", "latitude:theta0=pi/2")
    assert abs(v - 0.5) < 1e-6
    flat = cf.evaluate("chern:k=1,bundle=flat:rank=2:dim=2", "t2-x-loop:y0=1.0")
    assert min(flat, 1 - flat) < 1e-8


def test_holonomy_matches_character():
    theta0 = math.pi / 3
    hol = cf.holonomy_trace("monopole:n=1", f"latitude:theta0={theta0!r}")
    oracle = (-math.atan2(hol.imag, hol.real) / (2 * math.pi)) % 1.0
    value = cf.evaluate("chern:k=1,bundle=monopole:n=1", f"latitude:theta0={theta0!r}")
    d = abs(value - oracle)
    assert min(d, 1 - d) < 1e-6


def test_run_scenario_report():
    r = cf.run_scenario("flat-vanishing", {"resolution": 24})
    assert r["schema"] == 1
    assert r["pass"] is True
    assert all(c["pass"] for c in r["checks"])


def test_report_json_deterministic():
    a = cf.report_json("gauss-bonnet", {"resolution": 48})
    b = cf.report_json("gauss-bonnet", {"resolution": 48})
    assert a == b


def test_parse_errors_raise():
    with pytest.raises(ValueError):
        cf.evaluate("chern:k=", "latitude:theta0=pi/2")
    with pytest.raises(ValueError):
        cf.run_scenario("not-a-scenario")
