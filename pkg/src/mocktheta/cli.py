"""Command-line front end: ``mocktheta eval | coeffs | verify``.

Complex arguments use the grammar ``a+bi``: an optional signed decimal real
part followed by an optional signed imaginary part ending in ``i`` (``j`` is
accepted too).  Examples: ``0.1+0.8i``, ``1.3i``, ``-0.2-0.5i``, ``3.14159``.

Exit codes: 0 success, 1 failed check, 2 usage error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import qexact as qx
from .special import NonConvergenceError, q_pow
from .tenth import (
    DEFAULT_POINTS,
    DEFAULT_SEED,
    Family,
    FormVector,
    NearSingularError,
    F_vector,
    G_vector,
    H_vector,
    J_vector,
    jtheta,
    mock_theta_value,
    shadow_vector,
)
from .verify import SuiteParams, run_suite, suite_ids

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_FULL = re.compile(rf"(?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>{_NUM})?[ij])?")
_IMAG = re.compile(rf"(?P<im>[+-]?(?:{_NUM})?)[ij]")

SCALAR_FNS = ("phi", "psi", "X", "chi", "theta2", "theta3", "theta4")
VECTOR_FNS = ("F1", "F2", "H1", "H2", "G1", "G2", "J1", "J2", "shadow1", "shadow2")
COEFF_FNS = ("phi", "psi", "X", "chi", "theta2", "theta3", "theta4")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    m = _FULL.fullmatch(s)
    if m:
        re_part = float(m["re"])
        if m["sign"] is None:
            return complex(re_part, 0.0)
        im = float(m["im"]) if m["im"] else 1.0
        return complex(re_part, -im if m["sign"] == "-" else im)
    m = _IMAG.fullmatch(s)
    if m:
        im = m["im"]
        val = 1.0 if im in ("", "+") else -1.0 if im == "-" else float(im)
        return complex(0.0, val)
    raise UsageError(f"cannot parse complex number {text!r}; expected a+bi")


def _fmt(z: complex) -> str:
    return f"{z.real:.16g}{z.imag:+.16g}i"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# eval


def _scalar_value(fn: str, tau: complex, tol: float) -> complex:
    if fn.startswith("theta"):
        return jtheta(int(fn[-1]), tau, tol)
    return mock_theta_value(fn, q_pow(tau, 1), tol)


def _vector_value(fn: str, point: complex, tol: float) -> FormVector:
    fam = Family.F1 if fn.endswith("1") else Family.F2
    kind = fn[:-1]
    build = {"F": F_vector, "H": H_vector, "G": G_vector, "J": J_vector, "shadow": shadow_vector}[kind]
    return build(fam, point, tol)


def cmd_eval(args) -> int:
    fn = args.fn
    if fn not in SCALAR_FNS + VECTOR_FNS:
        raise UsageError(f"unknown function {fn!r}")
    if fn in ("J1", "J2"):
        if args.beta is None:
            raise UsageError("J vectors need --beta")
        point = parse_complex(args.beta)
        if point.real <= 0:
            raise UsageError("need Re(beta) > 0")
    else:
        if args.tau is None:
            raise UsageError(f"{fn} needs --tau")
        point = parse_complex(args.tau)
        if point.imag <= 0:
            raise UsageError("need Im(tau) > 0")
    if fn in SCALAR_FNS:
        val = _scalar_value(fn, point, args.tol)
        if args.format == "json":
            text = json.dumps({"fn": fn, "tau": [point.real, point.imag], "value": [val.real, val.imag], "err": args.tol})
        elif args.format == "csv":
            text = f"fn,tau_re,tau_im,re,im,err\n{fn},{point.real!r},{point.imag!r},{val.real!r},{val.imag!r},{args.tol!r}"
        else:
            text = f"{fn}({_fmt(point)}) = {_fmt(val)}  (err <= {args.tol:.1e})"
        _emit(text, args.out)
        return EXIT_OK
    vec = _vector_value(fn, point, args.tol)
    if args.format == "json":
        text = vec.to_json()
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["component", "re", "im"])
        for k, z in enumerate(vec.entries, start=1):
            w.writerow([k, repr(float(z.real)), repr(float(z.imag))])
        text = buf.getvalue().rstrip("\n")
    else:
        var = "beta" if fn.startswith("J") else "tau"
        lines = [f"{fn} at {var} = {_fmt(point)}  (err <= {vec.err:.1e})"]
        lines += [f"  [{k}] {_fmt(z)}" for k, z in enumerate(vec.entries, start=1)]
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# coeffs


def exact_series(fn: str, order: Fraction) -> qx.FracPowerSeries:
    if fn in qx.MOCK_NAMES:
        return qx.mock_theta_series(fn, order)
    if fn in ("theta2", "theta3", "theta4"):
        return qx.theta_series(int(fn[-1]), 1, order)
    raise UsageError(f"no exact expansion for {fn!r}; choose from {', '.join(COEFF_FNS)}")


def cmd_coeffs(args) -> int:
    if args.order is None:
        raise UsageError("coeffs needs --order")
    order = Fraction(args.order)
    if order < 1:
        raise UsageError("order must be at least 1")
    s = exact_series(args.fn, order)
    pairs = s.items()
    if args.format == "json":
        text = json.dumps({"fn": args.fn, "order": str(order), "terms": [[str(e), str(c)] for e, c in pairs]})
    elif args.format == "csv":
        text = "\n".join(["exponent,coefficient"] + [f"{e},{c}" for e, c in pairs])
    else:
        text = qx.format_series(s)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.suite not in suite_ids():
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suite_ids())}")
    if args.points < 1:
        raise UsageError("--points must be positive")
    params = SuiteParams(seed=args.seed, points=args.points, tol=args.tol, order=args.order)
    report = run_suite(args.suite, params)
    if args.out:
        _emit(report.to_json(), args.out)
    if args.format == "json" and not args.out:
        print(report.to_json())
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "name", "point", "residual", "tol", "pass"])
        for s in report.suites:
            for c in s.checks:
                w.writerow([s.id, c.name, c.point, repr(c.residual), repr(c.tol), c.passed])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(report.summary())
        for c in report.failures()[:40]:
            print(f"  FAIL {c.suite}: {c.name} @ {c.point}: residual {c.residual:.3e} > tol {c.tol:.1e}")
        for s in report.suites:
            for n in s.notes:
                print(f"  note [{s.id}] {n}")
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mocktheta", description="Tenth order mock theta functions: evaluation and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write the result to this path")

    e = sub.add_parser("eval", help="evaluate a function or vector at a point")
    e.add_argument("--fn", "--vector", dest="fn", required=True, help=", ".join(SCALAR_FNS + VECTOR_FNS))
    e.add_argument("--tau", help="point in the upper half-plane, a+bi")
    e.add_argument("--beta", help="Mordell argument with positive real part, a+bi")
    e.add_argument("--tol", type=float, default=1e-12)
    common(e)
    e.set_defaults(handler=cmd_eval)

    c = sub.add_parser("coeffs", help="print an exact q-expansion")
    c.add_argument("--fn", "--vector", dest="fn", required=True, help=", ".join(COEFF_FNS))
    c.add_argument("--order", type=int)
    common(c)
    c.set_defaults(handler=cmd_coeffs)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", help=", ".join(suite_ids()))
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--points", type=int, default=DEFAULT_POINTS)
    v.add_argument("--tol", type=float, default=None, help="override every tolerance")
    v.add_argument("--order", type=int, default=None, help="override exact-series orders")
    common(v)
    v.set_defaults(handler=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"mocktheta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, NearSingularError) as exc:
        print(f"mocktheta: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except ValueError as exc:
        print(f"mocktheta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
