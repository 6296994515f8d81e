import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mocktheta import special as sp


def test_erf_basic():
    assert sp.erf_real(0) == 0.0
    assert sp.erfc_real(0) == 1.0


@pytest.mark.parametrize("x", [-3.0, -0.7, 0.01, 0.5, 1.0, 1.9, 2.1, 4.0, 6.0])
def test_erf_matches_stdlib(x):
    assert sp.erf_real(x) == pytest.approx(math.erf(x), abs=1e-15)
    assert sp.erfc_real(x) == pytest.approx(math.erfc(x), rel=2e-14)


@given(st.floats(0, 25))
def test_erfcx_consistent(x):
    want = math.erfc(x) * math.exp(x * x) if x < 20 else None
    got = sp.erfcx(x)
    if want is not None:
        assert got == pytest.approx(want, rel=1e-13)
    assert 0 < got <= 1


def test_erfcx_negative():
    with pytest.raises(ValueError):
        sp.erfcx(-1.0)


def test_E_fn():
    assert sp.E_fn(0) == 0
    assert sp.E_fn(10) == 1.0
    assert sp.E_fn(-0.4) == pytest.approx(-sp.E_fn(0.4))


def test_beta_fn():
    assert sp.beta_fn(0) == 1.0
    # beta(v) = int_v^inf e^{-pi u} u^{-1/2} du / 1, normalised so beta(0) = 1; oracle by trapezoid
    v = 50.0
    assert sp.beta_fn(v) * math.exp(math.pi * v) * math.sqrt(v) == pytest.approx(1 / math.pi, rel=0.02)
    t = np.linspace(v, v + 20, 400001)
    f = np.exp(-math.pi * t) / np.sqrt(t)
    trap = float(np.sum((f[1:] + f[:-1]) / 2 * np.diff(t)))
    assert sp.beta_fn(v) == pytest.approx(trap, rel=1e-8)


def test_log_beta_far_tail():
    lb = sp.log_beta(1e4)
    assert np.isfinite(lb)
    assert lb == pytest.approx(-math.pi * 1e4 - 0.5 * math.log(1e4) - math.log(math.pi), rel=1e-9)
    with pytest.raises(ValueError):
        sp.beta_fn(-1)


def test_q_pow():
    assert sp.q_pow(1j, 1) == pytest.approx(math.exp(-2 * math.pi))
    assert sp.q_pow(0.3 + 0.7j, 0) == 1
    with pytest.raises(ValueError):
        sp.q_pow(0.2 - 1j, 1)


def test_branches():
    assert sp.sqrt_branch(1) == 1
    assert sp.pow_neg_i_tau(1j, 0.5) == pytest.approx(1)
    assert sp.pow_neg_i_tau(2j, 1.5) == pytest.approx(2 ** 1.5)
    with pytest.raises(ValueError):
        sp.pow_neg_i_tau(1j, 1)


@given(st.floats(-3, 3), st.floats(0.05, 3))
def test_sqrt_neg_i_tau_right_half_plane(x, y):
    r = sp.pow_neg_i_tau(complex(x, y), 0.5)
    assert r.real > 0
    assert r * r == pytest.approx(-1j * complex(x, y))


def test_root_of_unity_exact_angle():
    assert sp.root_of_unity(4, 1) == pytest.approx(1j, abs=1e-16)
    assert sp.root_of_unity(16, 33) == pytest.approx(sp.root_of_unity(16, 1), abs=1e-16)


def test_integrate_exponential():
    r = sp.integrate_decaying(lambda t: np.exp(-t), 1.0, "exp", tol=1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)


def test_integrate_half_gaussian():
    r = sp.integrate_decaying(lambda t: np.exp(-math.pi * t * t), math.pi, "gauss", tol=1e-12)
    assert r.value == pytest.approx(0.5, abs=1e-12)


def test_integrate_against_trapezoid():
    f = lambda t: np.exp(-5 * t * t) / np.cosh(5 * t)  # noqa: E731
    r = sp.integrate_decaying(f, 5.0, "gauss", tol=1e-10)
    t = np.linspace(0.0, 10.0, 1_000_001)
    y = f(t)
    trap = float(np.sum((y[1:] + y[:-1]) / 2 * np.diff(t)))
    assert r.value == pytest.approx(trap, abs=1e-9)


def test_integrate_vector_valued():
    f = lambda t: np.vstack([np.exp(-t), 2 * np.exp(-2 * t)])  # noqa: E731
    r = sp.integrate_decaying(f, 1.0, "exp", tol=1e-12)
    assert np.allclose(r.value, [1.0, 1.0], atol=1e-12)


def test_integrate_panel_cap():
    rule = sp.QuadratureRule(nodes=2, initial_panels=1, max_panels=4)
    with pytest.raises(sp.NonConvergenceError):
        sp.integrate_decaying(lambda t: np.cos(40 * t) * np.exp(-t), 1.0, tol=1e-14, rule=rule)


def test_tail_cutoff_validation():
    with pytest.raises(ValueError):
        sp.tail_cutoff(0, "exp", 1, 1e-8)
    with pytest.raises(ValueError):
        sp.tail_cutoff(1, "poly", 1, 1e-8)
