import math

import pytest

import qlb


def test_collision_closed_form():
    r = qlb.comp_bound_analytic(64, 2, 0.5)
    target = math.sqrt(0.5) - math.sqrt(2 / 64)
    total, t = 0.0, 0
    while total < target:
        t += 1
        total += math.sqrt((t - 1) / 64)
    assert r["T"] == t


def test_comp_gate_is_a_value_error():
    with pytest.raises(ValueError):
        qlb.comp_bound_analytic(2, 2, 0.9)


def test_step_norm_first_query_is_zero():
    assert qlb.comp_step_norm("collision", 3, 2, 1) == 0.0
    assert qlb.comp_step_norm("collision", 3, 2, 2) <= math.sqrt(1 / 2) + 1e-9


def test_numeric_comp_bound_is_finite():
    r = qlb.comp_bound("preimage", 2, 3, 0.1)
    assert r["T"] >= 1


def test_mladv_bound_runs():
    r = qlb.mladv_bound("collision", 2, 2, 4.0, 0.1)
    assert r["bound_name"] == "MLADV"


def test_degrees():
    assert qlb.exact_degree("parity", 3) == 3
    assert qlb.approx_degree("parity", 3, 1 / 3) == 3
    assert qlb.approx_degree("or", 2, 0.0) == 2


def test_perm_bound():
    cited, derived = qlb.perm_success_bound(1000, 10)
    assert cited == pytest.approx((1 + 20 * math.sqrt(2)) ** 2 / 960)
    assert derived >= cited


def test_sdpt_eta_power():
    r = qlb.sdpt_scalars(2.0, 0.5, 0.125, 400)
    names = {c["name"]: c["pass"] for c in r["checks"]}
    assert names["i_eta_power"] and names["ii_c_below_one"]


def test_suite_is_deterministic():
    assert qlb.run_suite("sdpt", 5) == qlb.run_suite("sdpt", 5)
    assert "all" in qlb.suite_names()
