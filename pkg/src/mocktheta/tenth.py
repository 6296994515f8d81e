"""Tenth order mock theta vectors, their completions, shadows and corrections."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .special import (
    NonConvergenceError,
    integrate_decaying,
    q_pow,
    root_of_unity,
    sqrt_branch,
)
from .zwegers import (
    DEFAULT_TOL,
    TENTH_LATTICE,
    ThetaChar,
    UnaryChar,
    g_vertical,
    g_unary,
    h1_char,
    vartheta_sum,
    vscale,
    E,
)

DEFAULT_SEED = 20231004
DEFAULT_POINTS = 20
_MAX_TERMS = 20000


class Family(str, Enum):
    F1 = "F1"
    F2 = "F2"


class NearSingularError(ArithmeticError):
    """A theta denominator is too close to zero for a reliable quotient."""


def family(tag) -> Family:
    return tag if isinstance(tag, Family) else Family(str(tag).upper())


# ---------------------------------------------------------------------------
# constants, built once from exact angles

SQRT2 = math.sqrt(2.0)
S1 = 2 / math.sqrt(5) * math.sin(math.pi / 5)
S2 = 2 / math.sqrt(5) * math.sin(2 * math.pi / 5)


def zeta(n: int, k=1) -> complex:
    return root_of_unity(n, k)


# ---------------------------------------------------------------------------
# value containers


@dataclass(frozen=True)
class FormVector:
    family: Family
    tau: complex
    entries: np.ndarray
    err: float = 0.0

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=complex)
        if ent.shape != (6,):
            raise ValueError("a form vector has exactly six entries")
        if not np.all(np.isfinite(ent)):
            raise NonConvergenceError("non-finite entry in form vector")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "family", family(self.family))

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "tau": [self.tau.real, self.tau.imag],
            "entries": [[z.real, z.imag] for z in self.entries],
            "err": self.err,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "FormVector":
        return cls(
            Family(d["family"]),
            complex(*d["tau"]),
            np.array([complex(*z) for z in d["entries"]]),
            float(d["err"]),
        )

    @classmethod
    def from_json(cls, s: str) -> "FormVector":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class TransformSet:
    M: np.ndarray
    T: np.ndarray


@dataclass(frozen=True)
class ThetaVector:
    values: np.ndarray
    S: np.ndarray
    T: np.ndarray


# ---------------------------------------------------------------------------
# numeric mock theta functions and Jacobi thetas


def mock_theta_value(name: str, x: complex, tol: float = DEFAULT_TOL) -> complex:
    """Direct summation of ``phi, psi, X, chi`` at a complex argument ``|x| < 1``."""
    x = complex(x)
    if abs(x) >= 1:
        raise ValueError("the series need |x| < 1")
    if name not in ("phi", "psi", "X", "chi"):
        raise ValueError(f"unknown mock theta function {name!r}")
    ax = abs(x)
    if name in ("phi", "psi"):
        t = 1 / (1 - x)  # n = 0 term of phi
        total = t * (x if name == "psi" else 1)
        n = 0
        while True:
            n += 1
            t = t * x**n / (1 - x ** (2 * n + 1))
            term = t * x ** (n + 1) if name == "psi" else t
            total += term
            if ax**n < 0.5 and abs(term) < tol / 20:
                return total
            if n > _MAX_TERMS:
                raise NonConvergenceError(f"{name} series did not converge at |x| = {ax}")
    t = 1 + 0j  # n = 0 term of X
    total = t if name == "X" else t * x / (1 + x)
    n = 0
    while True:
        n += 1
        t = -t * x ** (2 * n - 1) / ((1 + x ** (2 * n - 1)) * (1 + x ** (2 * n)))
        term = t if name == "X" else t * x ** (2 * n + 1) / (1 + x ** (2 * n + 1))
        total += term
        if ax ** (2 * n) < 0.5 and abs(term) < tol / 20:
            return total
        if n > _MAX_TERMS:
            raise NonConvergenceError(f"{name} series did not converge at |x| = {ax}")


def jtheta(kind: int, tau, tol: float = DEFAULT_TOL):
    """``theta_2 = sum q^((n+1/2)^2/2)``, ``theta_3 = sum q^(n^2/2)``, ``theta_4 = sum (-1)^n q^(n^2/2)``."""
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=complex))
    if np.any(tau_arr.imag <= 0):
        raise ValueError("tau must lie in the upper half-plane")
    y = float(tau_arr.imag.min())
    nmax = int(math.sqrt(2 * math.log(100 / tol) / (math.pi * y))) + 3
    n = np.arange(-nmax, nmax + 1)
    if kind == 2:
        k = n + 0.5
        w = np.ones_like(k)
    elif kind in (3, 4):
        k = n.astype(float)
        w = np.where(n % 2 == 0, 1.0, -1.0) if kind == 4 else np.ones_like(k)
    else:
        raise ValueError("theta kind must be 2, 3 or 4")
    out = np.exp(1j * np.pi * np.outer(tau_arr, k * k)) @ w
    return complex(out[0]) if np.ndim(tau) == 0 else out


# ---------------------------------------------------------------------------
# the vectors


def F_vector(f, tau, tol: float = DEFAULT_TOL) -> FormVector:
    f = family(f)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    mt = mock_theta_value
    if f is Family.F1:
        h = q_pow(tau, Fraction(1, 2))
        q = q_pow(tau, 1)
        ent = [
            q_pow(tau, Fraction(1, 10)) * mt("phi", h, tol),
            q_pow(tau, Fraction(-1, 10)) * mt("psi", h, tol),
            q_pow(tau, Fraction(1, 10)) * mt("phi", -h, tol),
            q_pow(tau, Fraction(-1, 10)) * mt("psi", -h, tol),
            q_pow(tau, Fraction(-1, 40)) * mt("X", q, tol),
            q_pow(tau, Fraction(-9, 40)) * mt("chi", q, tol),
        ]
    else:
        q = q_pow(tau, 1)
        h = q_pow(tau, Fraction(1, 2))
        ent = [
            SQRT2 * q_pow(tau, Fraction(1, 5)) * mt("phi", q, tol),
            SQRT2 * q_pow(tau, Fraction(-1, 5)) * mt("psi", q, tol),
            q_pow(tau, Fraction(-1, 80)) * mt("X", h, tol),
            q_pow(tau, Fraction(-9, 80)) * mt("chi", h, tol),
            q_pow(tau, Fraction(-1, 80)) * mt("X", -h, tol),
            q_pow(tau, Fraction(-9, 80)) * mt("chi", -h, tol),
        ]
    return FormVector(f, tau, np.array(ent), tol)


def _checked(den: complex) -> complex:
    if abs(den) < 1e-12:
        raise NearSingularError(f"theta denominator {abs(den):.3g} is near zero")
    return den


# H1: per component, (theta kind, [(coefficient, v, k)]) with a = (v/10)e + (k/2)e_x, b = 0
_H1 = [
    (4, [(0.5, 1, 0), (-0.5, 1, 1), (-0.5, 4, 0), (0.5, 4, 1)]),
    (4, [(0.5, 2, 0), (-0.5, 2, 1), (-0.5, 3, 0), (0.5, 3, 1)]),
    (3, [(0.5, 1, 0), (-0.5, 1, 1), (0.5, 4, 0), (0.5, 4, 1)]),
    (3, [(-0.5, 2, 0), (-0.5, 2, 1), (-0.5, 3, 0), (0.5, 3, 1)]),
    (2, [(1.0, 1, 0)]),
    (2, [(1.0, 3, 0)]),
]

# H2: per component, (denominator slot of theta_422, phase, v, b in units of e/20); evaluated at tau/2
_H2 = [
    (0, zeta(5, -1), 2, 1),
    (0, zeta(5, -2), 4, 1),
    (1, 1.0, 1, 0),
    (1, 1.0, 3, 0),
    (2, zeta(80, -3), 1, 1),
    (2, zeta(80, 21), 3, 1),
]


def H_vector(f, tau, tol: float = DEFAULT_TOL) -> FormVector:
    """The completion, assembled from completed indefinite thetas over Jacobi thetas."""
    f = family(f)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    L = TENTH_LATTICE
    ent = []
    err = 0.0
    if f is Family.F1:
        dens = {k: _checked(jtheta(k, tau, tol)) for k in (2, 3, 4)}
        cache: dict = {}
        for kind, terms in _H1:
            acc = 0j
            for c, v, k in terms:
                if (v, k) not in cache:
                    cache[(v, k)] = vartheta_sum(L, h1_char(v, k), tau, tol)
                r = cache[(v, k)]
                acc += c * r.value
                err += abs(c) * r.error / abs(dens[kind])
            ent.append(acc / dens[kind])
    else:
        th = theta_vectors(422, tau, tol).values
        for slot, phase, v, b20 in _H2:
            den = _checked(th[slot])
            ch = ThetaChar(vscale(Fraction(v, 10), E), vscale(Fraction(b20, 20), E))
            r = vartheta_sum(L, ch, tau / 2, tol)
            ent.append(phase * r.value / den)
            err += r.error / abs(den)
    return FormVector(f, tau, np.array(ent), err)


# shadows: (scale, prefactor, components [(coefficient, s, t)])
_SHADOW = {
    Family.F1: (
        20,
        math.sqrt(20),
        [
            [(-1, Fraction(4, 20), 0), (-1, Fraction(6, 20), 0)],
            [(-1, Fraction(2, 20), 0), (-1, Fraction(8, 20), 0)],
            [(1, Fraction(4, 20), 0), (-1, Fraction(6, 20), 0)],
            [(-1, Fraction(2, 20), 0), (1, Fraction(8, 20), 0)],
            [(1, Fraction(1, 20), 0), (-1, Fraction(9, 20), 0)],
            [(1, Fraction(3, 20), 0), (-1, Fraction(7, 20), 0)],
        ],
    ),
    Family.F2: (
        10,
        math.sqrt(10),
        [
            [(-SQRT2 * zeta(5, -1), Fraction(8, 20), Fraction(1, 2))],
            [(SQRT2 * zeta(5, 2), Fraction(4, 20), Fraction(1, 2))],
            [(1, Fraction(1, 20), 0), (-1, Fraction(9, 20), 0)],
            [(1, Fraction(3, 20), 0), (-1, Fraction(7, 20), 0)],
            [(zeta(40, -1), Fraction(1, 20), Fraction(1, 2)), (-zeta(40, -9), Fraction(9, 20), Fraction(1, 2))],
            [(zeta(40, -3), Fraction(3, 20), Fraction(1, 2)), (zeta(40, -7), Fraction(7, 20), Fraction(1, 2))],
        ],
    ),
}


def _shadow_eval(f: Family, evaluate) -> np.ndarray:
    """Shadow components from a callback ``evaluate(UnaryChar, scale)``."""
    scale, pref, comps = _SHADOW[f]
    cache: dict = {}
    rows = []
    for comp in comps:
        acc = 0
        for c, s, t in comp:
            key = (s, t)
            if key not in cache:
                cache[key] = evaluate(UnaryChar(s, t), scale)
            acc = acc + c * cache[key]
        rows.append(pref * acc)
    return np.array(rows)


def shadow_array(f, z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Shadow vector at an array of points; shape ``(6, len(z))``."""
    f = family(f)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return _shadow_eval(f, lambda u, sc: g_unary(u, sc * z, tol))


def shadow_vertical(f, n: int, v, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Shadow vector at ``z = n + i v`` for integer ``n >= 0``, any ``v > 0``; shape ``(6, len(v))``."""
    f = family(f)
    v = np.atleast_1d(np.asarray(v, dtype=float))
    return _shadow_eval(f, lambda u, sc: g_vertical(u, sc * n, sc * v, tol))


def shadow_vector(f, tau, tol: float = DEFAULT_TOL) -> FormVector:
    f = family(f)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    return FormVector(f, tau, shadow_array(f, [tau], tol)[:, 0], tol)


def _shadow_decay(f: Family) -> float:
    scale = _SHADOW[f][0]
    return math.pi * scale / 400.0  # smallest |sigma| is 1/20


def _shadow_bound(f: Family, y: float) -> float:
    """Sup over ``Im z >= y`` of ``|g(z)| e^(decay (Im z - y))``, summed over components."""
    scale, pref, comps = _SHADOW[f]
    total = 0.0
    for comp in comps:
        for c, s, _ in comp:
            sig = np.arange(-40, 41) + float(s)
            total += abs(c) * pref * float(np.sum(np.abs(sig) * np.exp(-np.pi * sig * sig * scale * y)))
    return total


def G_vector(f, tau, tol: float = DEFAULT_TOL) -> FormVector:
    """``-i int_{-conj tau}^{i inf} g(z)/sqrt(-i(z+tau)) dz`` on ``z = -conj(tau) + i t``."""
    f = family(f)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    y = tau.imag
    base = -tau.conjugate()

    def integrand(t):
        return shadow_array(f, base + 1j * t, tol * 1e-2) / np.sqrt(2 * y + t)

    bound = _shadow_bound(f, y) / math.sqrt(2 * y)
    res = integrate_decaying(integrand, _shadow_decay(f), "exp", bound, tol)
    return FormVector(f, tau, np.asarray(res.value), res.error)


def vertical_integral(f, n: int, w, tol: float = DEFAULT_TOL, lower: float = 0.0) -> np.ndarray:
    """``i int_{n + i lower}^{i inf} g(z)/sqrt(-i(z+w)) dz`` along ``z = n + i t``."""
    f = family(f)
    w = complex(w)
    if (n + w).imag <= 0:
        raise ValueError("need Im(w) > 0")

    def integrand(t):
        return shadow_vertical(f, n, t, tol * 1e-2) / sqrt_branch(t - 1j * (n + w))

    decay = _shadow_decay(f)
    ts = np.geomspace(1e-3, 40, 300)
    sup = float(np.max(np.abs(shadow_vertical(f, n, ts)).sum(axis=0) * np.exp(decay * ts))) + 1.0
    bound = sup / math.sqrt(max(abs(n + w), 1e-3))
    res = integrate_decaying(integrand, decay, "exp", bound, tol, lower=lower)
    # i dz = i * i dt
    return -np.asarray(res.value)


def correction_vector(f, tau, tol: float = DEFAULT_TOL, lower: float = 0.0) -> np.ndarray:
    """``i int_{i lower}^{i inf} g(z)/sqrt(-i(z+tau)) dz``."""
    return vertical_integral(f, 0, tau, tol, lower)


# ---------------------------------------------------------------------------
# Mordell integrals and J


def _check_beta(beta: complex) -> complex:
    beta = complex(beta)
    if beta.real <= 0:
        raise ValueError("Mordell integrals need Re(beta) > 0")
    return beta


def _mordell(j, beta, tol, hyper: str) -> complex:
    beta = _check_beta(beta)
    jf = float(Fraction(j))

    def f(x):
        zz = beta * x
        g = np.exp(-5 * beta * x * x)
        if hyper == "cosh":
            # cosh(j z)/cosh(5 z) for Re z > 0
            ratio = (np.exp((jf - 5) * zz) + np.exp(-(jf + 5) * zz)) / (1 + np.exp(-10 * zz))
        else:
            ratio = np.exp((jf - 5) * zz) * np.expm1(-2 * jf * zz) / np.expm1(-10 * zz)
        return g * ratio

    bound = 2.0 + abs(jf) / 5 + abs(beta) / beta.real
    return complex(integrate_decaying(f, 5 * beta.real, "gauss", bound, tol).value)


def mordell_K(j, beta, tol: float = DEFAULT_TOL) -> complex:
    """``int_0^inf e^(-5 beta x^2) cosh(j beta x)/cosh(5 beta x) dx``."""
    return _mordell(j, beta, tol, "cosh")


def mordell_L(j, beta, tol: float = DEFAULT_TOL) -> complex:
    """``int_0^inf e^(-5 beta x^2) sinh(j beta x)/sinh(5 beta x) dx``."""
    return _mordell(j, beta, tol, "sinh")


def J_vector(f, beta, tol: float = DEFAULT_TOL) -> FormVector:
    f = family(f)
    beta = _check_beta(beta)
    K, L = mordell_K, mordell_L
    if f is Family.F1:
        ent = math.sqrt(20) * np.array(
            [-K(1, beta, tol), -K(3, beta, tol), L(1, beta, tol), -L(3, beta, tol), L(4, beta, tol), L(2, beta, tol)]
        )
    else:
        b2, bh = 2 * beta, beta / 2
        h = Fraction(1, 2)
        ent = math.sqrt(40) * np.array(
            [
                -SQRT2 * K(1, b2, tol),
                -SQRT2 * K(3, b2, tol),
                0.5 * L(4, bh, tol),
                0.5 * L(2, bh, tol),
                K(9 * h, b2, tol) - K(h, b2, tol),
                K(3 * h, b2, tol) + K(7 * h, b2, tol),
            ]
        )
    # J is a function of beta; the point field records it
    return FormVector(f, beta, ent, tol)


# ---------------------------------------------------------------------------
# constant matrices


# T-multiplier entries as exact angles: T[i, j] = e^(2 pi i angle), zero-based indices
T_ANGLES = {
    Family.F1: {
        (0, 2): Fraction(1, 10),
        (1, 3): Fraction(-1, 10),
        (2, 0): Fraction(1, 10),
        (3, 1): Fraction(-1, 10),
        (4, 4): Fraction(-1, 40),
        (5, 5): Fraction(-9, 40),
    },
    Family.F2: {
        (0, 0): Fraction(1, 5),
        (1, 1): Fraction(-1, 5),
        (2, 4): Fraction(-1, 80),
        (3, 5): Fraction(-9, 80),
        (4, 2): Fraction(-1, 80),
        (5, 3): Fraction(-9, 80),
    },
}


@lru_cache(maxsize=None)
def _transform_set(f: Family) -> TransformSet:
    M = np.zeros((6, 6))
    T = np.zeros((6, 6), dtype=complex)
    if f is Family.F1:
        outer = np.array([[S2, -S1], [S1, S2]])
        inner = np.array([[S2, S1], [S1, -S2]])
        M[0:2, 4:6] = outer
        M[4:6, 0:2] = outer.T
        M[2:4, 2:4] = inner
    else:
        M[0:2, 2:4] = np.array([[S2, -S1], [S1, S2]])
        M[2:4, 0:2] = np.array([[S2, S1], [-S1, S2]])
        M[4:6, 4:6] = np.array([[S1, -S2], [-S2, -S1]])
    for (i, j), angle in T_ANGLES[f].items():
        T[i, j] = root_of_unity(1, angle)
    M.setflags(write=False)
    T.setflags(write=False)
    return TransformSet(M, T)


def transform_set(f) -> TransformSet:
    return _transform_set(family(f))


def theta_vectors(kind: int, tau, tol: float = DEFAULT_TOL) -> ThetaVector:
    tau = complex(tau)
    if kind == 432:
        vals = np.array([jtheta(4, tau, tol), jtheta(3, tau, tol), jtheta(2, tau, tol)])
        S = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)
        T = np.array([[0, 1, 0], [1, 0, 0], [0, 0, zeta(8)]], dtype=complex)
    elif kind == 422:
        vals = np.array([SQRT2 * jtheta(4, 2 * tau, tol), jtheta(2, tau / 2, tol), jtheta(2, (tau + 1) / 2, tol)])
        S = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
        T = np.array([[1, 0, 0], [0, 0, 1], [0, zeta(8), 0]], dtype=complex)
    else:
        raise ValueError("kind must be 432 or 422")
    return ThetaVector(vals, S, T)


# ---------------------------------------------------------------------------
# sample points


def sample_points(seed: int = DEFAULT_SEED, n: int = DEFAULT_POINTS) -> list[complex]:
    """``x + i y`` with ``x ~ U[-1/2, 1/2]``, ``y ~ U[1/2, 2]``."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-0.5, 0.5, n)
    y = rng.uniform(0.5, 2.0, n)
    return [complex(a, b) for a, b in zip(x, y)]
