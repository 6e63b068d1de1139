import math

import pytest

try:
    import fucikhom as fh
except ImportError:
    import _fucikhom as fh


def test_pi_p_matches_closed_form():
    for p in (1.5, 2.0, 3.0, 4.5):
        assert fh.pi_p(p) == pytest.approx(fh.pi_p_closed_form(p), abs=1e-9)
    assert fh.pi_p(2.0) == pytest.approx(math.pi, abs=1e-10)


def test_constant_weight_eigenvalue():
    I = fh.Interval(0.0, 1.0)
    w = fh.PeriodicWeight.constant(2.0)
    est = fh.lambda1_shoot(w, None, I, 2.0)
    assert est["lambda"] == pytest.approx(math.pi**2 / 2.0, rel=1e-7)


def test_shooting_vs_rayleigh():
    I = fh.Interval(0.0, 1.0)
    w = fh.PeriodicWeight.piecewise([0.5], [1.0, 3.0])
    a = fh.lambda1_shoot(w, 0.25, I, 2.0)["lambda"]
    b = fh.lambda1_rayleigh(w, 0.25, I, 2.0, 2048)["lambda"]
    assert a == pytest.approx(b, rel=1e-4)


def test_curve_point_matches_closed_form():
    I = fh.Interval(0.0, 1.0)
    one = fh.PeriodicWeight.constant(1.0)
    got = fh.c_value(2, "plus", 2.0, one, one, None, I, 2.0)
    want = fh.closed_form_constant(2, "plus", 2.0, 1.0, 1.0, I, 2.0)
    assert got.c == pytest.approx(want.c, rel=1e-6)
    assert got.alpha * 1.0 == pytest.approx(got.c / 2.0)


def test_sweep_eigen_within_bound():
    I = fh.Interval(0.0, 1.0)
    w = fh.PeriodicWeight.piecewise([0.5], [1.0, 3.0])
    rep = fh.sweep_eigen(w, I, 2.0, [1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32])
    assert all(r["ratio"] <= 1.0 for r in rep["records"])
    assert rep["fitted_order"] >= 0.9
