import json
import math
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mocktheta import qexact as qx
from mocktheta import tenth as tn
from mocktheta import zwegers as z
from mocktheta.special import NonConvergenceError, pow_neg_i_tau, q_pow

TAU = 0.21 + 1.1j
FAMILIES = [tn.Family.F1, tn.Family.F2]


def eval_series(s, tau):
    return sum(complex(c) * q_pow(tau, e) for e, c in s.items())


def test_family_tags():
    assert tn.family("F1") is tn.Family.F1
    assert {f.value for f in tn.Family} == {"F1", "F2"}
    with pytest.raises(ValueError):
        tn.family("F3")


def test_component5_against_exact_series():
    tau = 1.3j
    s = qx.mock_theta_series("X", 40)
    want = q_pow(tau, Fr(-1, 40)) * eval_series(s, tau)
    assert tn.F_vector("F1", tau).entries[4] == pytest.approx(want, abs=1e-10)


def test_component1_cusp_behaviour():
    tau = 6j
    assert tn.F_vector("F1", tau).entries[0] / q_pow(tau, Fr(1, 10)) == pytest.approx(1, abs=1e-6)


@given(st.sampled_from(qx.MOCK_NAMES), st.floats(-0.5, 0.5), st.floats(0.6, 2.0))
def test_numeric_matches_exact_expansion(name, x, y):
    tau = complex(x, y)
    s = qx.mock_theta_series(name, 40)
    assert tn.mock_theta_value(name, q_pow(tau, 1)) == pytest.approx(eval_series(s, tau), abs=1e-11)


def test_theta3_at_i():
    want = math.pi ** 0.25 / math.gamma(0.75)
    direct = sum(math.exp(-math.pi * n * n) for n in range(-60, 61))
    assert tn.jtheta(3, 1j) == pytest.approx(want, abs=1e-14)
    assert direct == pytest.approx(want, abs=1e-14)


def test_mock_theta_needs_disc():
    with pytest.raises(ValueError):
        tn.mock_theta_value("phi", 1.0)


@pytest.mark.parametrize("f", FAMILIES)
def test_completion_decomposition(f):
    F = tn.F_vector(f, TAU).entries
    H = tn.H_vector(f, TAU).entries
    G = tn.G_vector(f, TAU).entries
    assert np.max(np.abs(F - H - G)) < 1e-8


def test_H1_components_5_6():
    L = z.TENTH_LATTICE
    th2 = tn.jtheta(2, TAU)
    H = tn.H_vector("F1", TAU).entries
    assert H[4] == pytest.approx(z.vartheta(L, z.h1_char(1, 0), TAU) / th2, abs=1e-12)
    assert H[5] == pytest.approx(z.vartheta(L, z.h1_char(3, 0), TAU) / th2, abs=1e-12)


def test_H2_component5():
    L = z.TENTH_LATTICE
    ch = z.ThetaChar(z.vscale(Fr(1, 10), z.E), z.vscale(Fr(1, 20), z.E))
    want = tn.zeta(80, -3) * z.vartheta(L, ch, TAU / 2) / tn.jtheta(2, (TAU + 1) / 2)
    assert tn.H_vector("F2", TAU).entries[4] == pytest.approx(want, abs=1e-10)


def test_shadow_components():
    g1 = tn.shadow_vector("F1", TAU).entries
    want = math.sqrt(20) * (z.g_unary(z.UnaryChar(Fr(1, 20)), 20 * TAU) - z.g_unary(z.UnaryChar(Fr(9, 20)), 20 * TAU))
    assert g1[4] == pytest.approx(want, abs=1e-14)
    g2 = tn.shadow_vector("F2", TAU).entries
    want = math.sqrt(10) * (-math.sqrt(2) * tn.zeta(5, -1)) * z.g_unary(z.UnaryChar(Fr(8, 20), Fr(1, 2)), 10 * TAU)
    assert g2[0] == pytest.approx(want, abs=1e-14)


@pytest.mark.parametrize("f", FAMILIES)
def test_shadow_S_law(f):
    M = tn.transform_set(f).M
    g = tn.shadow_vector(f, TAU).entries
    gS = tn.shadow_vector(f, -1 / TAU).entries
    assert np.max(np.abs(gS + pow_neg_i_tau(TAU, Fr(3, 2)) * M @ g)) < 1e-8


@pytest.mark.parametrize("f", FAMILIES)
def test_G_vanishes_high(f):
    # slowest shadow term is sigma = 1/20, i.e. q^(1/40) at scale 20 and q^(1/80) at scale 10
    rate = math.pi / (20 if f is tn.Family.F1 else 40)
    lo = np.max(np.abs(tn.G_vector(f, 0.1 + 12j).entries))
    hi = np.max(np.abs(tn.G_vector(f, 0.1 + 60j).entries))
    assert hi < 10 * lo * math.exp(-rate * 48)
    assert hi < 2e-3


def test_G_resolution_stable():
    a = tn.G_vector("F1", TAU, 1e-10).entries
    b = tn.G_vector("F1", TAU, 1e-13).entries
    assert np.max(np.abs(a - b)) < 1e-10


def test_mordell_K_bounds_and_oracle():
    beta = math.pi
    cap = 0.5 * math.sqrt(math.pi / (5 * beta))
    for j in (1, 2, 3, 4):
        k = tn.mordell_K(j, beta)
        assert abs(k.imag) < 1e-15 and 0 < k.real < cap
    x = np.linspace(0, 8, 1_000_001)
    y = np.exp(-5 * beta * x * x) * np.cosh(beta * x) / np.cosh(5 * beta * x)
    trap = float(np.sum((y[1:] + y[:-1]) / 2 * np.diff(x)))
    assert tn.mordell_K(1, beta) == pytest.approx(trap, abs=1e-9)


@given(st.floats(0.05, 20))
def test_L5_closed_form(beta):
    assert tn.mordell_L(5, beta) == pytest.approx(0.5 * math.sqrt(math.pi / (5 * beta)), rel=1e-11)


def test_mordell_rejects_left_half_plane():
    with pytest.raises(ValueError):
        tn.mordell_K(1, -1 + 1j)


def test_J_layout():
    beta = 2.0
    J1 = tn.J_vector("F1", beta).entries
    r20 = math.sqrt(20)
    assert J1[0] == pytest.approx(-r20 * tn.mordell_K(1, beta))
    assert J1[3] == pytest.approx(-r20 * tn.mordell_L(3, beta))
    assert J1[0].real < 0 and J1[1].real < 0
    J2 = tn.J_vector("F2", beta).entries
    h = Fr(1, 2)
    assert J2[4] == pytest.approx(math.sqrt(40) * (tn.mordell_K(9 * h, 2 * beta) - tn.mordell_K(h, 2 * beta)))


@pytest.mark.parametrize("f", FAMILIES)
def test_J_transformation(f):
    M = tn.transform_set(f).M
    lhs = tn.J_vector(f, -1j * np.pi * TAU).entries
    rhs = pow_neg_i_tau(TAU, Fr(-3, 2)) * M @ tn.J_vector(f, 1j * np.pi / TAU).entries
    assert np.max(np.abs(lhs + rhs)) < 1e-8


def test_M_entries():
    M1 = tn.transform_set("F1").M
    assert M1[0, 4] == pytest.approx(2 / math.sqrt(5) * math.sin(2 * math.pi / 5), abs=1e-15)
    assert M1[0, 5] == pytest.approx(-2 / math.sqrt(5) * math.sin(math.pi / 5), abs=1e-15)


def test_T_entries():
    T2 = tn.transform_set("F2").T
    assert T2[0, 0] == pytest.approx(tn.zeta(5), abs=1e-15)
    assert T2[2, 4] == pytest.approx(tn.zeta(80, -1), abs=1e-15)


@pytest.mark.parametrize("f", FAMILIES)
def test_matrix_structure(f):
    ts = tn.transform_set(f)
    assert np.max(np.abs(ts.M - ts.M.T)) < 1e-12
    assert np.max(np.abs(ts.M @ ts.M - np.eye(6))) < 1e-12
    nz = np.abs(ts.T) > 0
    assert (nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all()
    assert np.allclose(np.abs(ts.T[nz]), 1, atol=1e-15)
    with pytest.raises(ValueError):
        ts.M[0, 0] = 1.0


@pytest.mark.parametrize("f", FAMILIES)
def test_S_and_T_laws(f):
    ts = tn.transform_set(f)
    F = tn.F_vector(f, TAU).entries
    FS = tn.F_vector(f, -1 / TAU).entries
    J = tn.J_vector(f, 1j * np.pi / TAU).entries
    r = pow_neg_i_tau(TAU, Fr(1, 2))
    assert np.max(np.abs(FS - r * ts.M @ F - J / r)) < 1e-8
    assert np.max(np.abs(tn.F_vector(f, TAU + 1).entries - ts.T @ F)) < 1e-9


def test_theta_vectors():
    tv = tn.theta_vectors(432, TAU)
    tvS = tn.theta_vectors(432, -1 / TAU)
    assert np.max(np.abs(tvS.values - pow_neg_i_tau(TAU, Fr(1, 2)) * tv.S @ tv.values)) < 1e-10
    t422 = tn.theta_vectors(422, TAU)
    assert t422.T[2, 1] == pytest.approx(np.sqrt(1j))
    assert np.max(np.abs(tn.theta_vectors(422, TAU + 1).values - t422.T @ t422.values)) < 1e-10
    with pytest.raises(ValueError):
        tn.theta_vectors(234, TAU)


def test_form_vector_json_round_trip():
    v = tn.F_vector("F2", TAU)
    d = json.loads(v.to_json())
    assert set(d) == {"family", "tau", "entries", "err"}
    w = tn.FormVector.from_json(v.to_json())
    assert w.family is v.family and w.tau == v.tau
    assert np.array_equal(w.entries, v.entries)


def test_form_vector_validation():
    with pytest.raises(ValueError):
        tn.FormVector("F1", TAU, np.zeros(5))
    with pytest.raises(NonConvergenceError):
        tn.FormVector("F1", TAU, np.array([np.nan] + [0] * 5))


def test_sample_points_reproducible():
    a = tn.sample_points()
    assert a == tn.sample_points()
    assert len(a) == 20
    assert all(-0.5 <= t.real <= 0.5 and 0.5 <= t.imag <= 2.0 for t in a)
    assert a != tn.sample_points(seed=1)
