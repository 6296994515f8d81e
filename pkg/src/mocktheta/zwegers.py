"""Indefinite theta series of a rank-2 lattice of signature (1,1).

Implements the error-function completed theta series ``vartheta_{a,b}``, its
sharp-cutoff counterpart, the unary thetas ``g_{s,t}`` and ``R_{s,t}``, the
orthogonal-complement thetas and the decomposition tying them together.

Numerics: ``vartheta`` is summed over square boxes ``|nu - a|_inf <= R``
doubled until successive boxes agree.  Off the positive cone the completion
weight ``E1 - E2`` is a difference of two tiny ``beta`` values multiplied by
an exponentially large ``|q^Q|``; both factors are combined in log space so
nothing overflows or cancels.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .special import (
    NonConvergenceError,
    integrate_decaying,
    log_beta,
    pow_neg_i_tau,
    sqrt_branch,
)

Vec = tuple[Fraction, Fraction]

DEFAULT_TOL = 1e-12
_START_RADIUS = 8


def max_box() -> int:
    return int(os.environ.get("MOCKTHETA_MAX_BOX", "300"))


def vec(x) -> Vec:
    return (Fraction(x[0]), Fraction(x[1]))


def _grid(x: Vec) -> Vec:
    v = vec(x)
    for c in v:
        if (c * 80).denominator != 1:
            raise ValueError(f"characteristic {v} is off the 1/80 grid")
    return v


@dataclass(frozen=True)
class IndefLattice:
    A: tuple[tuple[int, int], tuple[int, int]]
    c1: tuple[int, int]
    c2: tuple[int, int]

    def Ax(self, x) -> Vec:
        (a, b), (c, d) = self.A
        x = vec(x)
        return (a * x[0] + b * x[1], c * x[0] + d * x[1])

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.A
        return a * d - b * c


TENTH_LATTICE = IndefLattice(((4, 6), (6, 4)), (-2, 3), (-3, 2))

E = (Fraction(1), Fraction(1))
E_X = (Fraction(1), Fraction(0))


def vadd(*vs) -> Vec:
    return (sum((vec(v)[0] for v in vs), Fraction(0)), sum((vec(v)[1] for v in vs), Fraction(0)))


def vscale(k, v) -> Vec:
    v = vec(v)
    return (Fraction(k) * v[0], Fraction(k) * v[1])


def bilinear(L: IndefLattice, x, y) -> Fraction:
    x, Ay = vec(x), L.Ax(y)
    return x[0] * Ay[0] + x[1] * Ay[1]


def quad(L: IndefLattice, x) -> Fraction:
    return bilinear(L, x, x) / 2


def validate_lattice(L: IndefLattice) -> list[str]:
    """Names of violated lattice conditions; empty when ``L`` is admissible."""
    bad = []
    (a, b), (c, d) = L.A
    if b != c:
        bad.append("A not symmetric")
    if L.det >= 0:
        bad.append("det A < 0 (type (1,1)) violated")
    for name, cv in (("c1", L.c1), ("c2", L.c2)):
        if quad(L, cv) >= 0:
            bad.append(f"Q({name}) < 0 violated")
        if gcd(int(cv[0]), int(cv[1])) != 1:
            bad.append(f"{name} not primitive")
    if bilinear(L, L.c1, L.c2) >= 0:
        bad.append("B(c1,c2) < 0 violated")
    return bad


@dataclass(frozen=True)
class ThetaChar:
    a: Vec
    b: Vec = (Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "a", _grid(self.a))
        object.__setattr__(self, "b", _grid(self.b))


@dataclass(frozen=True)
class UnaryChar:
    s: Fraction
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for v in (self.s, self.t):
            if (Fraction(v) * 80).denominator != 1:
                raise ValueError(f"unary characteristic {v} is off the 1/80 grid")
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))


@dataclass(frozen=True)
class SumResult:
    value: complex
    error: float
    radius: int


# ---------------------------------------------------------------------------
# lattice sums


def _box_terms(L: IndefLattice, ch: ThetaChar, tau: complex, R: int, completed: bool):
    """Per-point weights over the box ``|n|_inf <= R`` with ``nu = n + a``."""
    tau = complex(tau)
    t1, t2 = tau.real, tau.imag
    n1, n2 = np.meshgrid(np.arange(-R, R + 1), np.arange(-R, R + 1), indexing="ij")
    n1 = n1.ravel().astype(np.int64)
    n2 = n2.ravel().astype(np.int64)
    a, b = ch.a, ch.b
    D = 80
    a_num = (int(a[0] * D), int(a[1] * D))
    nu1, nu2 = n1 * D + a_num[0], n2 * D + a_num[1]  # D * nu, exact
    (A11, A12), (_, A22) = L.A
    # D^2 * Q(nu) exact; Q(nu) = (A11 nu1^2 + 2 A12 nu1 nu2 + A22 nu2^2)/2
    Q2 = A11 * nu1 * nu1 + 2 * A12 * nu1 * nu2 + A22 * nu2 * nu2
    Qf = Q2 / (2.0 * D * D)
    # phase B(nu, b) mod 1, exact
    Ab = L.Ax(b)
    Ab_num = (int(Ab[0] * D), int(Ab[1] * D))
    Bnb = (nu1 * Ab_num[0] + nu2 * Ab_num[1]) % (D * D)
    phase_arg = 2 * np.pi * (Qf * t1 + Bnb / float(D * D))
    logmag = -2 * np.pi * Qf * t2

    signs, logs = [], []
    for c in (L.c1, L.c2):
        w = L.Ax(c)
        Bc = int(w[0]) * nu1 + int(w[1]) * nu2  # D * B(c, nu), exact integer
        s = np.sign(Bc)
        signs.append(s)
        if completed:
            x2 = (Bc / D) ** 2 * t2 / float(-quad(L, c))
            logs.append(log_beta(x2))
    sharp = (signs[0] - signs[1]) * np.where(signs[0] != signs[1], np.exp(np.minimum(logmag, 700.0)), 0.0)
    weight = sharp.astype(float)
    if completed:
        corr = np.zeros_like(weight)
        for k, sgn in ((0, -1), (1, 1)):
            s = signs[k]
            live = s != 0
            corr[live] += sgn * s[live] * np.exp(logs[k][live] + logmag[live])
        weight = weight + corr
    return weight * np.exp(1j * phase_arg), np.maximum(np.abs(n1), np.abs(n2))


def _converged_sum(L, ch, tau, tol, completed: bool, radius: int | None) -> SumResult:
    if complex(tau).imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    if radius is not None:
        terms, _ = _box_terms(L, ch, tau, radius, completed)
        return SumResult(complex(terms.sum()), float("nan"), radius)
    cap = max_box()
    R = _START_RADIUS
    terms, ring = _box_terms(L, ch, tau, R, completed)
    prev = complex(terms[ring <= R // 2].sum())
    cur = complex(terms.sum())
    while abs(cur - prev) >= tol / 10:
        if 2 * R > cap:
            raise NonConvergenceError(
                f"lattice sum not converged at box radius {R} (cap {cap}), increment {abs(cur - prev):.3g}"
            )
        R *= 2
        prev = cur
        cur = complex(_box_terms(L, ch, tau, R, completed)[0].sum())
    return SumResult(cur, abs(cur - prev), R)


def vartheta_sum(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL, radius: int | None = None) -> SumResult:
    return _converged_sum(L, ch, tau, tol, True, radius)


def vartheta(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL) -> complex:
    """Completed indefinite theta series ``vartheta_{a,b}(tau)`` for cone vectors ``c1, c2``."""
    return vartheta_sum(L, ch, tau, tol).value


def sgn_sum(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL, radius: int | None = None) -> complex:
    """Sharp-cutoff sum ``sum (sgn B(c1,nu) - sgn B(c2,nu)) q^Q(nu) e(B(nu,b))``."""
    return _converged_sum(L, ch, tau, tol, False, radius).value


# ---------------------------------------------------------------------------
# unary theta series


def _sigma_range(s: Fraction, y: float, tol: float, extra_power: float = 1.0) -> np.ndarray:
    # |sigma|^p exp(-pi sigma^2 y) < tol/10 beyond sigma_max
    target = max(tol / 10.0, 1e-300)
    smax = math.sqrt(max(math.log(1.0 / target), 1.0) / (math.pi * y)) + 2.0
    while smax**extra_power * math.exp(-math.pi * smax * smax * y) > target:
        smax *= 1.1
    lo = math.floor(-smax - float(s))
    hi = math.ceil(smax - float(s))
    return np.arange(lo, hi + 1) + float(s)


def g_unary(u: UnaryChar, tau, tol: float = DEFAULT_TOL):
    """``g_{s,t}(tau) = sum_{sigma in Z+s} sigma q^(sigma^2/2) e^(2 pi i sigma t)``; vectorized in tau."""
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=complex))
    if np.any(tau_arr.imag <= 0):
        raise ValueError("tau must lie in the upper half-plane")
    sig = _sigma_range(u.s, float(tau_arr.imag.min()), tol)
    sig = sig[sig != 0]
    t = float(u.t)
    expo = 1j * np.pi * np.outer(tau_arr, sig * sig) + 2j * np.pi * (sig * t)[None, :]
    out = np.exp(expo) @ sig
    return complex(out[0]) if np.ndim(tau) == 0 else out


def R_unary(u: UnaryChar, tau, tol: float = DEFAULT_TOL) -> complex:
    """``R_{s,t}(tau) = sum sgn(sigma) beta(2 sigma^2 y) q^(-sigma^2/2) e^(-2 pi i sigma t)``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    x, y = tau.real, tau.imag
    sig = _sigma_range(u.s, y, tol, extra_power=0.0)
    sig = sig[sig != 0]  # sgn(0) = 0
    logmag = log_beta(2 * sig * sig * y) + np.pi * sig * sig * y
    phase = -np.pi * sig * sig * x - 2 * np.pi * sig * float(u.t)
    return complex(np.sum(np.sign(sig) * np.exp(logmag + 1j * phase)))


def _g_decay(s: Fraction) -> float:
    frac = abs(s - round(s))
    smin = float(frac) if frac != 0 else 1.0
    return math.pi * smin * smin


def _g_bound(s: Fraction, y: float) -> float:
    sig = np.arange(-60, 61) + float(s)
    sig = sig[sig != 0]
    return float(np.sum(np.abs(sig) * np.exp(-np.pi * sig * sig * y)))


def R_via_integral(u: UnaryChar, tau, tol: float = DEFAULT_TOL) -> complex:
    """``-i int_{-conj(tau)}^{i inf} g_{s,-t}(z) / sqrt(-i(z+tau)) dz`` along ``z = -conj(tau) + i v``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    y = tau.imag
    gu = UnaryChar(u.s, -u.t)
    if u.s.denominator == 1 and u.t.denominator == 1:
        # g_{n,m} vanishes identically for integral characteristics
        return 0j

    def f(v):
        z = -tau.conjugate() + 1j * v
        return g_unary(gu, z, tol * 1e-2) / sqrt_branch(2 * y + v)

    bound = _g_bound(u.s, y) / math.sqrt(2 * y)
    # -i * dz = -i * i dv = dv
    return complex(integrate_decaying(f, _g_decay(u.s), "exp", bound, tol).value)


# ---------------------------------------------------------------------------
# orthogonal complements and the remainder


@dataclass(frozen=True)
class PerpData:
    c: tuple[int, int]
    generator: tuple[int, int]

    def project(self, L: IndefLattice, x) -> Vec:
        """``x - B(c,x)/(2Q(c)) c``."""
        k = bilinear(L, self.c, x) / (2 * quad(L, self.c))
        return vadd(x, vscale(-k, self.c))


def perp_data(L: IndefLattice, c) -> PerpData:
    if quad(L, c) >= 0:
        raise ValueError("Q(c) must be negative")
    w = L.Ax(c)
    w0, w1 = int(w[0]), int(w[1])
    g = gcd(w0, w1)
    gen = (-w1 // g, w0 // g)
    if gen[0] < 0 or (gen[0] == 0 and gen[1] < 0):
        gen = (-gen[0], -gen[1])
    return PerpData((int(c[0]), int(c[1])), gen)


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def enumerate_P(L: IndefLattice, c, a) -> list[tuple[Vec, Fraction]]:
    """Coset representatives ``mu`` of ``{nu in Z^2 + a : B(c,nu)/2Q(c) in [0,1)}`` mod the perp lattice.

    Returns ``(mu, B(c,mu)/2Q(c))`` pairs sorted by the ratio.
    """
    a = vec(a)
    Qc2 = 2 * quad(L, c)
    if Qc2 >= 0:
        raise ValueError("Q(c) must be negative")
    w = L.Ax(c)
    w0, w1 = int(w[0]), int(w[1])
    g, x0, y0 = _ext_gcd(w0, w1)  # w0 x0 + w1 y0 = g
    base = bilinear(L, c, a)
    gen = perp_data(L, c).generator
    out = []
    # B(c, n + a) = base + g k for integer k; ratio in [0,1) <=> value in (2Q(c), 0]
    kmin = math.ceil((Qc2 - base) / g)
    kmax = math.floor((0 - base) / g)
    for k in range(kmin, kmax + 1):
        val = base + g * k
        ratio = val / Qc2
        if not (0 <= ratio < 1):
            continue
        n = (k * x0, k * y0)
        # pick the coset member nearest the origin along the generator
        gg = gen[0] ** 2 + gen[1] ** 2
        shift = round(Fraction(-(n[0] * gen[0] + n[1] * gen[1]), gg))
        n = (n[0] + shift * gen[0], n[1] + shift * gen[1])
        out.append((vadd(n, a), ratio))
    out.sort(key=lambda p: p[1])
    return out


def same_coset(L: IndefLattice, c, x, y) -> bool:
    """Whether ``x - y`` lies in the integral perp lattice of ``c``."""
    d = vadd(x, vscale(-1, y))
    return all(v.denominator == 1 for v in d) and bilinear(L, c, d) == 0


def theta_perp(L: IndefLattice, c, mu, b, tau, tol: float = DEFAULT_TOL) -> complex:
    """Theta series of the rank-1 lattice ``<c>^perp + mu^perp`` with twist ``b^perp``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    pd = perp_data(L, c)
    m = pd.project(L, mu)
    bp = pd.project(L, b)
    gen = pd.generator
    qg = quad(L, gen)
    lin = bilinear(L, m, gen)
    q0 = quad(L, m)
    b0 = bilinear(L, m, bp)
    bl = bilinear(L, gen, bp)
    # Q(m + k gen) = q0 + lin k + qg k^2, centered at k* = -lin/(2 qg)
    kc = -float(lin) / (2 * float(qg))
    span = math.sqrt(max(math.log(10.0 / tol), 1.0) / (2 * math.pi * float(qg) * tau.imag)) + 2
    ks = np.arange(math.floor(kc - span), math.ceil(kc + span) + 1)
    Qk = float(q0) + float(lin) * ks + float(qg) * ks * ks
    Bk = float(b0) + float(bl) * ks
    return complex(np.sum(np.exp(2j * np.pi * (Qk * tau + Bk))))


def remainder_term(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL) -> complex:
    """``sum_{P(c1)} theta^perp R(-2Q(c1) tau) - (c1 -> c2)``, so that ``sgn_sum = vartheta - remainder``."""
    tau = complex(tau)
    total = 0j
    for c, sign in ((L.c1, 1), (L.c2, -1)):
        Qc = quad(L, c)
        t = -bilinear(L, c, ch.b)
        for mu, ratio in enumerate_P(L, c, ch.a):
            th = theta_perp(L, c, mu, ch.b, tau, tol)
            r = R_unary(UnaryChar(ratio, t), -2 * float(Qc) * tau, tol)
            total += sign * th * r
    return total


def dual_quotient(A) -> list[Vec]:
    """Representatives of ``A^{-1} Z^2 / Z^2`` reduced into ``[0,1)^2``."""
    (a, b), (c, d) = A
    det = a * d - b * c
    if det == 0:
        raise ValueError("singular matrix")
    reps = set()
    N = abs(det)
    for m in range(N):
        for n in range(N):
            x = Fraction(d * m - b * n, det)
            y = Fraction(-c * m + a * n, det)
            reps.add((x - math.floor(x), y - math.floor(y)))
    return sorted(reps)


def standard_dual_reps() -> list[Vec]:
    """Representatives ``{(v/10) e + (k/2) e_x}`` of the dual quotient of ``TENTH_LATTICE``."""
    return [vadd(vscale(Fraction(v, 10), E), vscale(Fraction(k, 2), E_X)) for v in range(10) for k in range(2)]


def reduce_mod1(x) -> Vec:
    x = vec(x)
    return (x[0] - math.floor(x[0]), x[1] - math.floor(x[1]))


# ---------------------------------------------------------------------------
# transformation residuals


def vartheta_S_residual(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL) -> float:
    """``|lhs - rhs|`` of the general S-transformation of ``vartheta_{a,b}``."""
    tau = complex(tau)
    lhs = vartheta(L, ch, -1 / tau, tol)
    pref = 1j / math.sqrt(-L.det) * (-1j * tau) * np.exp(2j * np.pi * float(bilinear(L, ch.a, ch.b)))
    acc = 0j
    for p in dual_quotient(L.A):
        acc += vartheta(L, ThetaChar(vadd(ch.b, p), vscale(-1, ch.a)), tau, tol)
    return abs(lhs - pref * acc)


def vartheta_T_residual(L: IndefLattice, ch: ThetaChar, tau, tol: float = DEFAULT_TOL) -> float:
    tau = complex(tau)
    a = ch.a
    diag = (L.A[0][0], L.A[1][1])
    adiag = a[0] * diag[0] + a[1] * diag[1]
    phase = np.exp(-2j * np.pi * float(quad(L, a)) - 1j * np.pi * float(adiag))
    # b + a + (1/2) A^{-1} diag A
    (p, q), (r, s) = L.A
    det = L.det
    inv_diag = (Fraction(s * diag[0] - q * diag[1], det), Fraction(-r * diag[0] + p * diag[1], det))
    bnew = vadd(ch.b, a, vscale(Fraction(1, 2), inv_diag))
    lhs = vartheta(L, ch, tau + 1, tol)
    return abs(lhs - phase * vartheta(L, ThetaChar(a, bnew), tau, tol))


def h1_char(v: int, k: int) -> ThetaChar:
    """``a = (v/10) e + (k/2) e_x``, ``b = 0``."""
    return ThetaChar(vadd(vscale(Fraction(v, 10), E), vscale(Fraction(k, 2), E_X)))


def sine_coefficient(u: int, j: int, v: int, k: int) -> float:
    """Coefficient of ``vartheta_{(v/10)e+(k/2)e_x}(tau)`` in the S-image of ``vartheta_{(u/10)e+(j/2)e_x}``, per ``-i tau``."""
    return (-1) ** (j * v + k * u) * math.sin(2 * math.pi * u * v / 5) / math.sqrt(5)


def sine_form_residual(L: IndefLattice, u: int, j: int, tau, tol: float = DEFAULT_TOL) -> float:
    tau = complex(tau)
    lhs = vartheta(L, h1_char(u, j), -1 / tau, tol)
    rhs = sum(
        sine_coefficient(u, j, v, k) * vartheta(L, h1_char(v, k), tau, tol)
        for v in range(1, 5)
        for k in range(2)
    )
    return abs(lhs - (-1j * tau) * rhs)


def g_S_residual(u: UnaryChar, tau, tol: float = DEFAULT_TOL) -> float:
    """``g_{s,t}(-1/tau) = i e^(2 pi i s t) (-i tau)^(3/2) g_{t,-s}(tau)``."""
    tau = complex(tau)
    lhs = g_unary(u, -1 / tau, tol)
    rhs = 1j * np.exp(2j * np.pi * float(u.s * u.t)) * pow_neg_i_tau(tau, Fraction(3, 2)) * g_unary(UnaryChar(u.t, -u.s), tau, tol)
    return abs(lhs - rhs)


def g_T_residual(u: UnaryChar, tau, tol: float = DEFAULT_TOL) -> float:
    """``g_{s,t}(tau+1) = e^(-pi i s(s+1)) g_{s,t+s+1/2}(tau)``."""
    tau = complex(tau)
    lhs = g_unary(u, tau + 1, tol)
    s = u.s
    phase = np.exp(-1j * np.pi * float(s * (s + 1)))
    return abs(lhs - phase * g_unary(UnaryChar(s, u.t + s + Fraction(1, 2)), tau, tol))


def g_imag_axis(u: UnaryChar, v, tol: float = DEFAULT_TOL):
    """``g_{s,t}(i v)`` for ``v > 0``; below ``v = 1`` through the S-transformation."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    out = np.empty(v.shape, dtype=complex)
    hi = v >= 1
    if hi.any():
        out[hi] = g_unary(u, 1j * v[hi], tol)
    lo = ~hi
    if lo.any():
        # g_{s,t}(i v) = i e(st) v^(-3/2) g_{t,-s}(i/v)
        w = v[lo]
        pref = 1j * np.exp(2j * np.pi * float(u.s * u.t)) * w**-1.5
        out[lo] = pref * g_unary(UnaryChar(u.t, -u.s), 1j / w, tol * 1e-3)
    return out


def _axis_bound(u: UnaryChar) -> float:
    # crude sup of |g(iv)| e^{decay v} over v > 0
    v = np.geomspace(1e-3, 20, 400)
    return float(np.max(np.abs(g_imag_axis(u, v)) * np.exp(_g_decay(u.s) * v))) + 1.0


def correction_integral_unary(u: UnaryChar, tau, tol: float = DEFAULT_TOL, lower: float = 0.0) -> complex:
    """``int_{i lower}^{i inf} g_{s,t}(z) / sqrt(-i(z+tau)) dz`` along ``z = i v``."""
    tau = complex(tau)

    def f(v):
        return g_imag_axis(u, v, tol * 1e-2) / sqrt_branch(v - 1j * tau)

    bound = _axis_bound(u) / math.sqrt(max(tau.imag, 1e-3))
    res = integrate_decaying(f, _g_decay(u.s), "exp", bound, tol, lower=lower)
    return 1j * complex(res.value)


def R_S_residual(u: UnaryChar, tau, tol: float = DEFAULT_TOL) -> float:
    """Residual of the non-modular S-behaviour of ``R_{s,t}``."""
    tau = complex(tau)
    s, t = u.s, u.t
    lhs = R_unary(u, -1 / tau, tol)
    inner = R_unary(UnaryChar(-t, s), tau, tol) + 1j * correction_integral_unary(UnaryChar(-t, -s), tau, tol)
    rhs = -1j * np.exp(-2j * np.pi * float(s * t)) * sqrt_branch(-1j * tau) * inner
    return abs(lhs - rhs)


def rescaling_residual(u: int, tau, tol: float = DEFAULT_TOL) -> float:
    """``g_{0,u/20}(tau/20) = 40 i sum_{v=1}^{9} sin(pi u v/10) g_{v/20,0}(20 tau)``."""
    tau = complex(tau)
    lhs = g_unary(UnaryChar(0, Fraction(u, 20)), tau / 20, tol)
    rhs = 40j * sum(math.sin(math.pi * u * v / 10) * g_unary(UnaryChar(Fraction(v, 20)), 20 * tau, tol) for v in range(1, 10))
    return abs(lhs - rhs)


def g_translate(u: UnaryChar, n: int) -> tuple[complex, UnaryChar]:
    """``g_{s,t}(tau + n) = phase * g_{s,t'}(tau)``, from ``n`` applications of the T-law."""
    if n < 0:
        raise ValueError("only nonnegative translations are supported")
    s, t = u.s, u.t
    angle = Fraction(0)  # phase = e^{2 pi i angle}
    for _ in range(n):
        angle -= s * (s + 1) / 2
        t += s + Fraction(1, 2)
    return np.exp(2j * np.pi * float(angle - math.floor(angle))), UnaryChar(s, t)


def g_vertical(u: UnaryChar, n: int, v, tol: float = DEFAULT_TOL):
    """``g_{s,t}(n + i v)`` for integer ``n >= 0`` and ``v > 0``."""
    phase, u2 = g_translate(u, n)
    return phase * g_imag_axis(u2, v, tol)
