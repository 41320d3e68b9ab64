import cmath
import math
import os

import pytest

import corona

CONFIGS = os.environ.get("CORONA_CONFIGS", os.path.join(os.path.dirname(__file__), "..", "..", "configs"))


def config(name):
    return os.path.join(CONFIGS, name + ".json")


@pytest.fixture(scope="module")
def worked():
    return corona.solve(config("worked_third"))


def test_check_and_norms():
    assert corona.check(config("worked_third"))
    assert not corona.check(config("common_zero"))
    delta = corona.delta_lower(config("worked_third"))
    assert delta["lo"] <= math.sqrt(2) / 3 <= delta["hi"] + 1e-12
    sup = corona.family_sup_norm(config("worked"))
    assert sup["lo"] <= math.sqrt(17) <= sup["hi"]


def test_worked_solution(worked):
    assert len(worked.centers) == 1
    assert worked.C0 == pytest.approx(1.2 * math.sqrt(2))
    assert worked.residual["hi"] <= 0.5
    for z in (0j, 0.5 + 0.5j, cmath.exp(1j)):
        for s in (0.0, 0.3, 1.0):
            g = worked.g(z, [s])
            f = ((z / 3), (2 + s - z) / 3)
            assert abs(g[0] * f[0] + g[1] * f[1] - 1) < 1e-12
            assert math.hypot(abs(g[0]), abs(g[1])) <= 2 * worked.C0


def test_forced_component_derivative(worked):
    for s in (0.0, 0.5, 1.0):
        d = worked.partial(0j, [s], [1])
        assert abs(d[1] + 3 / (2 + s) ** 2) < 1e-8
        assert worked.fd_check(0.2j, [min(max(s, 0.01), 0.99)], [1], 1e-4) < 1e-6


def test_verify_report(worked):
    import json

    report = json.loads(worked.verify(8, 5))
    assert report["verdict"] == "pass"
    assert {g["name"] for g in report["gates"]} >= {"residual", "bezout_identity", "norm_bound"}


def test_two_parameter_family():
    sol = corona.solve(config("plane"), order=1)
    assert sol.order == 1
    assert len(sol.centers) >= 4
    assert abs(sum(sol.eta([0.3, 0.8])) - 1) < 1e-12


def test_point_tools():
    g, a, b = corona.xgcd([0, 1], [1, -0.5])
    assert g == [1] and a == [0.5] and b == [1]
    cert = corona.sup_disc([1, 0, 1j], 64)
    assert cert["lo"] <= 2 <= cert["hi"]
    gs, solver, res = corona.solve_point([[0, 1], [1, -0.5]])
    assert solver == "gcd_chain" and res["hi"] < 1e-12


def test_errors_are_typed():
    with pytest.raises(corona.CoronaError):
        corona.solve(config("common_zero"))
    with pytest.raises(corona.CoronaError):
        corona.load_solution(os.path.join(CONFIGS, "missing.json"))


def test_corrupted_solution_fails():
    import json

    sol = corona.load_solution(os.path.join(CONFIGS, "corrupted.solution.json"))
    report = json.loads(sol.verify())
    assert report["verdict"] == "fail"
    residual = next(g for g in report["gates"] if g["name"] == "residual")
    assert not residual["pass"] and residual["witness"] is not None
