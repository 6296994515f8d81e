from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from mocktheta import qexact as qx
from mocktheta.qexact import FracPowerSeries as S


def ser(pairs, order):
    return S.from_terms(pairs, order)


# --- Pochhammer symbols ------------------------------------------------------

def test_poch_empty_product():
    assert qx.poch_series(1, 1, 2, 0, 10) == ser([(0, 1)], 10)


def test_poch_single_factor():
    assert qx.poch_series(1, 1, 2, 1, 10) == ser([(0, 1), (1, -1)], 10)


def test_poch_negative_sign():
    assert qx.poch_series(-1, 1, 1, 2, 10) == ser([(0, 1), (1, 1), (2, 1), (3, 1)], 10)


# --- mock theta expansions ---------------------------------------------------

def test_phi_constant_term():
    assert qx.mock_theta_series("phi", 1) == ser([(0, 1)], 1)


def test_chi_leading_terms():
    # q/(1+q) dominates below q^4
    assert qx.mock_theta_series("chi", 2) == ser([(1, 1)], 2)
    assert qx.mock_theta_series("chi", 3) == ser([(1, 1), (2, -1)], 3)


def _brute_phi(order):
    # sum_n q^{n(n+1)/2} / (q;q^2)_{n+1} with the denominator inverted by hand
    out = [Fr(0)] * order
    for n in range(order):
        num = [Fr(0)] * order
        e0 = n * (n + 1) // 2
        if e0 >= order:
            break
        num[e0] = Fr(1)
        for k in range(n + 1):
            step = 2 * k + 1
            # multiply by 1/(1 - q^step) = sum q^{j step}
            for e in range(step, order):
                num[e] += num[e - step]
        out = [a + b for a, b in zip(out, num)]
    return out


def test_phi_against_direct_expansion():
    s = qx.mock_theta_series("phi", 6)
    brute = _brute_phi(6)
    assert [s.coeff(e) for e in range(6)] == brute


def test_chi_cli_listing():
    assert qx.format_series(qx.mock_theta_series("chi", 5)) == "q - q^2 + q^3 - 2*q^4 + O(q^5)"


# --- Jacobi thetas -----------------------------------------------------------

def test_theta3():
    assert qx.theta_series(3, 1, 5) == ser([(0, 1), (Fr(1, 2), 2), (2, 2), (Fr(9, 2), 2)], 5)


def test_theta2():
    assert qx.theta_series(2, 1, 2) == ser([(Fr(1, 8), 2), (Fr(9, 8), 2)], 2)


def test_theta4_scaled():
    assert qx.theta_series(4, 4, 10) == ser([(0, 1), (2, -2), (8, 2)], 10)


# --- arithmetic --------------------------------------------------------------

def test_geometric_division():
    one = ser([(0, 1)], 8)
    s = qx.series_op("div", one, ser([(0, 1), (1, -1)], 8))
    assert s == ser([(k, 1) for k in range(8)], 8)


def test_zero_absorbs():
    t2 = qx.theta_series(2, 1, 2)
    z = qx.series_op("mul", t2, S.zero(2))
    assert not z.terms


def test_self_division():
    t3 = qx.theta_series(3, 1, 6)
    assert qx.series_op("div", t3, t3).items() == [(0, 1)]


def test_unknown_op():
    with pytest.raises(ValueError):
        qx.series_op("pow", S.zero(1), S.zero(1))


small_series = st.lists(
    st.tuples(st.integers(0, 12), st.integers(-5, 5)), max_size=6
).map(lambda ts: ser([(Fr(e, 2), c) for e, c in ts], 7))


@given(small_series, small_series, small_series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(small_series)
def test_division_inverts_multiplication(a):
    unit = ser([(0, 1), (Fr(1, 2), 3), (2, -1)], 7)
    assert qx.divide(a * unit, unit) == a.truncate((a * unit).order)


@given(small_series)
def test_json_round_trip(a):
    assert S.from_json(a.to_json()) == a


# --- substitution ------------------------------------------------------------

def test_substitute_negate():
    s = ser([(0, 1), (1, 1), (2, 1)], 3)
    assert qx.substitute(s, negate=True) == ser([(0, 1), (1, -1), (2, 1)], 3)


def test_substitute_scale():
    assert qx.substitute(ser([(2, 1)], 3), Fr(1, 2)) == ser([(1, 1)], Fr(3, 2))


def test_substitute_rejects_fractional_negate():
    with pytest.raises(ValueError):
        qx.substitute(ser([(Fr(1, 2), 1)], 3), negate=True)


def test_phi_minus_sqrt_q():
    phi = qx.mock_theta_series("phi", 6)
    got = qx.substitute(phi, Fr(1, 2), negate=True)
    for k in range(6):
        assert got.coeff(Fr(k, 2)) == phi.coeff(k) * (-1) ** k


# --- Hecke-type sums ---------------------------------------------------------

def test_hecke_phi_constant():
    spec = qx.HeckeSpec((1, 3, 1), (1, 1), sign_r=True, sign_s=True)
    assert qx.hecke_sum(spec, 1).items() == [(0, 1)]


def test_hecke_brute_force():
    spec = qx.HeckeSpec((2, 6, 2), (1, 1), shift=Fr(1, 10))
    order = Fr(1, 10) + 3
    got = qx.hecke_sum(spec, order)
    acc = {}
    for r in range(-12, 13):
        for s in range(-12, 13):
            if (r >= 0) == (s >= 0):
                e = spec.exponent(r, s)
                if e < order:
                    acc[e] = acc.get(e, 0) + (1 if r >= 0 else -1)
    assert got == ser(acc.items(), order)


def test_hecke_empty_below_order_zero():
    spec = qx.HeckeSpec((1, 3, 1), (1, 1))
    assert not qx.hecke_sum(spec, 0).terms


def test_hecke_rejects_definite():
    with pytest.raises(ValueError):
        qx.HeckeSpec((1, 1, 1))


def test_hecke_radius_below_bound():
    spec = qx.HeckeSpec((1, 3, 1), (1, 1))
    with pytest.raises(ValueError):
        qx.hecke_sum(spec, 30, box_radius=1)


# --- identities --------------------------------------------------------------

@pytest.mark.parametrize("name", qx.MOCK_NAMES)
def test_choi_identities(name):
    assert qx.verify_choi_identity(name, 20).passed


def test_chi_keeps_constant_two():
    assert qx.chi_constant_absorption(20).passed


def test_choi_perturbed_form_fails():
    chk = qx.verify_choi_identity("phi", 20, quad=(1, 2, 1))
    assert not chk.passed
    assert chk.mismatch is not None


@pytest.mark.parametrize("row", [1, 5])
def test_f1_rows(row):
    assert qx.verify_F1_series(row, 20).passed


def test_f1_vacuous():
    assert qx.verify_F1_series(1, Fr(1, 10)).passed


@pytest.mark.parametrize("row", sorted(qx.F1_AS_PRINTED))
def test_f1_rows_as_printed_fail(row):
    assert not qx.verify_F1_series(row, 20, row=qx.F1_AS_PRINTED[row]).passed


def test_theta_split():
    assert all(c.passed for c in qx.verify_theta_split(50))
    assert all(c.passed for c in qx.verify_theta_split(Fr(1, 2)))
    assert not all(c.passed for c in qx.verify_theta_split(50, perturb=True))
