"""Numeric kernels: error functions, branch-safe powers, quadrature.

The error functions are implemented here rather than borrowed so that every
platform sees the same bits: a positive-term series for erf at small
argument and a continued fraction for the scaled complement ``erfcx`` at
large argument.  All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

SQRT_PI = math.sqrt(math.pi)
_EPS = float(np.finfo(float).eps)

Rational = Fraction | int

_SERIES_CUT = 2.0   # erf by series below, via erfcx above
_CF_CUT = 1.0       # erfcx by continued fraction above, via 1 - erf below
_SERIES_TERMS = 60
_CF_DEPTH = 200


class NonConvergenceError(RuntimeError):
    """A truncated sum or quadrature could not reach the requested tolerance."""


def _erf_series(x):
    # erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!, all terms positive
    x2 = x * x
    term = x.copy()
    total = x.copy()
    for n in range(1, _SERIES_TERMS):
        term = term * (2.0 * x2 / (2 * n + 1))
        total = total + term
    return 2.0 / SQRT_PI * np.exp(-x2) * total


def _erfcx_cf(x):
    # Laplace continued fraction, evaluated backwards at fixed depth
    f = x.copy()
    for k in range(_CF_DEPTH, 0, -1):
        f = x + (0.5 * k) / f
    return 1.0 / (SQRT_PI * f)


def _as_array(x):
    a = np.asarray(x, dtype=float)
    return a, a.ndim == 0


def erf(x):
    a, scalar = _as_array(x)
    a = np.atleast_1d(a)
    out = np.empty_like(a)
    ax = np.abs(a)
    small = ax < _SERIES_CUT
    out[small] = _erf_series(ax[small])
    big = ~small
    if big.any():
        out[big] = 1.0 - np.exp(-ax[big] ** 2) * _erfcx_cf(ax[big])
    out = np.sign(a) * out
    return float(out[0]) if scalar else out


def erfcx(x):
    """Scaled complement ``exp(x^2) erfc(x)`` for ``x >= 0``."""
    a, scalar = _as_array(x)
    a = np.atleast_1d(a)
    if np.any(a < 0):
        raise ValueError("erfcx is only provided for nonnegative arguments")
    out = np.empty_like(a)
    cf = a >= _CF_CUT
    out[cf] = _erfcx_cf(a[cf])
    lo = ~cf
    out[lo] = np.exp(a[lo] ** 2) * (1.0 - _erf_series(a[lo]))
    return float(out[0]) if scalar else out


def erfc(x):
    a, scalar = _as_array(x)
    a = np.atleast_1d(a)
    out = np.empty_like(a)
    ax = np.abs(a)
    cf = ax >= _CF_CUT
    out[cf] = np.exp(-ax[cf] ** 2) * _erfcx_cf(ax[cf])
    out[~cf] = 1.0 - _erf_series(ax[~cf])
    neg = a < 0
    out[neg] = 2.0 - out[neg]
    return float(out[0]) if scalar else out


def erf_real(x: float) -> float:
    return float(erf(float(x)))


def erfc_real(x: float) -> float:
    return float(erfc(float(x)))


def E_fn(w):
    """``E(w) = 2 int_0^w exp(-pi u^2) du = erf(sqrt(pi) w)`` for real ``w``."""
    return erf(SQRT_PI * np.asarray(w, dtype=float))


def beta_fn(v):
    """``beta(v) = int_v^inf exp(-pi u) u^(-1/2) du = erfc(sqrt(pi v))``."""
    a = np.asarray(v, dtype=float)
    if np.any(a < 0):
        raise ValueError("beta is defined for v >= 0 only")
    return erfc(np.sqrt(np.pi * a))


def log_beta(v):
    """``log beta(v)``, finite far past the underflow of beta itself."""
    a = np.asarray(v, dtype=float)
    if np.any(a < 0):
        raise ValueError("beta is defined for v >= 0 only")
    return -np.pi * a + np.log(erfcx(np.sqrt(np.pi * a)))


# ---------------------------------------------------------------------------
# powers and branches


def _check_tau(tau):
    if np.any(np.imag(tau) <= 0):
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")


def q_pow(tau, alpha):
    """``q^alpha := exp(2 pi i alpha tau)``; never a power of a computed q."""
    _check_tau(tau)
    alpha = float(Fraction(alpha)) if isinstance(alpha, (Fraction, int)) else float(alpha)
    if np.ndim(tau):
        return np.exp(2j * np.pi * alpha * np.asarray(tau))
    return cmath.exp(2j * math.pi * alpha * tau)


def sqrt_branch(z):
    """Principal square root, cut along the negative real axis.

    Every radical in the package goes through here.
    """
    if np.ndim(z):
        return np.sqrt(np.asarray(z, dtype=complex))
    return cmath.sqrt(complex(z))


def pow_neg_i_tau(tau, exponent):
    """``(-i tau)^exponent`` for half-odd exponents, via the principal root."""
    _check_tau(tau)
    k = Fraction(exponent)
    if k.denominator != 2:
        raise ValueError("exponent must be a half-odd integer")
    r = sqrt_branch(-1j * np.asarray(tau) if np.ndim(tau) else -1j * tau)
    return r ** k.numerator


def root_of_unity(n: int, k: Rational = 1) -> complex:
    """``zeta_n^k = exp(2 pi i k / n)`` from an exact angle."""
    angle = Fraction(k) / n
    angle -= math.floor(angle)
    return cmath.exp(2j * math.pi * float(angle))


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureRule:
    """Panel Gauss-Legendre with bisection refinement."""

    nodes: int = 20
    initial_panels: int = 16
    max_panels: int = 20000

    def __post_init__(self):
        x, w = np.polynomial.legendre.leggauss(self.nodes)
        object.__setattr__(self, "_x", x)
        object.__setattr__(self, "_w", w)

    def panel(self, f, a: float, b: float):
        return self.panel_with_abs(f, a, b)[0]

    def panel_with_abs(self, f, a: float, b: float):
        """Panel value together with the integral of ``|f|`` (sets the rounding floor)."""
        half, mid = 0.5 * (b - a), 0.5 * (a + b)
        t = mid + half * self._x
        vals = np.asarray(f(t))
        return half * vals @ self._w, float(np.max(half * np.abs(vals) @ self._w))


DEFAULT_RULE = QuadratureRule()


@dataclass(frozen=True)
class QuadResult:
    value: complex | np.ndarray
    error: float
    upper: float
    panels: int


def tail_cutoff(decay: float, kind: str, bound: float, tol: float, lower: float = 0.0) -> float:
    """Upper limit T with certified tail ``int_T^inf |f| < tol/10``."""
    if decay <= 0:
        raise ValueError("decay rate must be positive")
    target = tol / 10.0
    bound = max(bound, 1e-300)
    if kind == "exp":
        T = math.log(max(bound / (decay * target), 1.0)) / decay
    elif kind == "gauss":
        T = math.sqrt(max(math.log(max(bound / target, 1.0)) / decay, 0.0))
        while T > 0 and bound * math.exp(-decay * T * T) / (2 * decay * T) > target:
            T *= 1.05
        T = max(T, 1.0 / math.sqrt(decay))
    else:
        raise ValueError(f"unknown decay kind {kind!r}")
    return lower + max(T, 1e-3)


def integrate_decaying(
    f: Callable,
    decay: float,
    kind: str = "exp",
    bound: float = 1.0,
    tol: float = 1e-12,
    rule: QuadratureRule = DEFAULT_RULE,
    lower: float = 0.0,
) -> QuadResult:
    """Integrate a smooth decaying ``f`` over ``[lower, inf)``.

    ``|f(t)| <= bound * exp(-decay t)`` (kind ``exp``) or
    ``bound * exp(-decay t^2)`` (kind ``gauss``).  ``f`` maps an array of
    nodes to values whose last axis runs over the nodes, so vector-valued
    integrands integrate in one pass.
    """
    upper = tail_cutoff(decay, kind, bound, tol, lower)
    span = upper - lower
    edges = np.linspace(lower, upper, rule.initial_panels + 1)
    stack = [(edges[i], edges[i + 1], rule.panel(f, edges[i], edges[i + 1])) for i in range(rule.initial_panels)]
    total = 0.0
    err = 0.0
    panels = 0
    while stack:
        a, b, whole = stack.pop()
        m = 0.5 * (a + b)
        (left, la), (right, ra) = rule.panel_with_abs(f, a, m), rule.panel_with_abs(f, m, b)
        refined = left + right
        delta = float(np.max(np.abs(refined - whole)))
        # below ~100 ulps of the panel's absolute mass the difference is rounding noise
        floor = 100 * _EPS * (la + ra)
        if delta <= max(0.1 * tol * (b - a) / span, floor) or (b - a) < 1e-12 * span:
            total = total + refined
            err += max(delta, floor)
            panels += 1
            continue
        if len(stack) + panels > rule.max_panels:
            raise NonConvergenceError(
                f"quadrature exceeded {rule.max_panels} panels on [{lower}, {upper}]"
            )
        stack.append((a, m, left))
        stack.append((m, b, right))
    return QuadResult(total, err + tol / 10.0, upper, panels)
