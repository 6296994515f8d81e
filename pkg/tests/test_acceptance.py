"""Acceptance criteria 1-11, one pass/fail line each (printed in the terminal summary)."""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from mocktheta import qexact as qx
from mocktheta import verify as vf
from mocktheta.tenth import Family

PARAMS = vf.SuiteParams(seed=20231004, points=20)


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def suites_pass(ids, params=PARAMS):
    worst, failed, total = 0.0, 0, 0
    for sid in ids:
        rep = vf.run_suite(sid, params)
        for c in rep.failures():
            failed += 1
        for s in rep.suites:
            total += len(s.checks)
            worst = max([worst] + [c.residual for c in s.checks])
    return failed == 0 and total > 0, f"{total} checks, {failed} failed, worst residual {worst:.2e}"


def test_c01_choi_identities():
    t0 = time.perf_counter()
    checks = [qx.verify_choi_identity(n, 50) for n in qx.MOCK_NAMES]
    checks.append(qx.chi_constant_absorption(50))
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and dt < 30
    record(1, ok, f"phi, psi, X, chi exact to q^50 (constant 2 kept for chi), {dt:.2f} s")
    assert ok


def test_c02_f1_component_series():
    checks = [qx.verify_F1_series(k, 50) for k in range(1, 7)]
    ok = all(c.passed for c in checks)
    record(2, ok, "all six component series exact to q^50")
    assert ok


def test_c03_theta_split():
    checks = qx.verify_theta_split(200)
    ok = all(c.passed for c in checks)
    record(3, ok, f"{len(checks)} splitting identities exact to q^200")
    assert ok


def test_c04_zwegers_internals():
    ok, detail = suites_pass(["zwegers_internal"])
    record(4, ok, f"20 points, tol 1e-8: {detail}")
    assert ok


def test_c05_perp_theta_table():
    ok, detail = suites_pass(["table1"])
    record(5, ok, f"P-sets and ratios exact, theta matches < 1e-9: {detail}")
    assert ok


def test_c06_F_equals_H_plus_G():
    ok, detail = suites_pass(["prop2"])
    record(6, ok, f"F = H + G, both families, tol 1e-8: {detail}")
    assert ok


def test_c07_S_and_T_laws():
    ok, detail = suites_pass(["theorem1_S", "theorem1_T"])
    record(7, ok, f"S-law < 1e-8, T-law < 1e-9, fixed point at tau = i: {detail}")
    assert ok


def test_c08_mordell_representation_and_J_law():
    ok, detail = suites_pass(["prop3", "j_transform"])
    record(8, ok, f"Mordell representation (10 points) and J-law < 1e-8: {detail}")
    assert ok


def test_c09_matrix_facts():
    worst = 0.0
    for f in Family:
        ts = vf.transform_set(f)
        worst = max(worst, np.abs(ts.M - ts.M.T).max(), np.abs(ts.M @ ts.M - np.eye(6)).max())
    xyz = float(np.abs(vf.v1_product() - vf.xyz_blocks()).max())
    blocks = [c for f in Family for g in ("G02", "G04") for c in vf.corollary_block_structure(f, g)]
    ok = worst < 1e-12 and xyz < 1e-12 and all(c.passed for c in blocks)
    record(9, ok, f"M sym/involution {worst:.1e}, X/Y/Z block {xyz:.1e}, {len(blocks)} splitting checks")
    assert ok


def test_c10_V1_functional_equation():
    checks = vf.corollary_functional_check(PARAMS.sample(5), 1e-7)
    worst = max(c.residual for c in checks)
    tv = vf.T_MAT @ vf.V1
    proj = vf.projective_distance(vf.V4, tv @ tv) == 0
    ok = all(c.passed for c in checks) and proj
    ACCEPTANCE_LINES[10] = (
        f"criterion 10: {'PASS' if ok else 'FAIL'}  V1 action on F1(2 tau) at 5 points, worst {worst:.1e}; "
        f"V4 = (T V1)^2 as Moebius maps"
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="(T V1)^2 = -V4 in SL(2,Z); see README, 'Known deviations'")
def test_c10_V4_exact_integer_identity():
    tv = vf.T_MAT @ vf.V1
    sq = tv @ tv
    same = bool(np.array_equal(vf.V4, sq))
    ACCEPTANCE_LINES[10.5] = (
        f"criterion 10: {'PASS' if same else 'FAIL'}  V4 = (T V1)^2 exact as integer matrices: "
        f"V4 = {vf.V4.tolist()}, (T V1)^2 = {sq.tolist()}"
    )
    assert same


def test_c11_full_run_and_negative_controls(tmp_path):
    out = tmp_path / "report.json"
    t0 = time.perf_counter()
    r = subprocess.run(
        [sys.executable, "-m", "mocktheta", "verify", "--suite", "all", "--seed", "20231004", "--points", "20", "--out", str(out)],
        capture_output=True,
        text=True,
        timeout=600,
    )
    dt = time.perf_counter() - t0
    report = json.loads(out.read_text())
    neg = vf.run_suite("negative_controls", PARAMS).suites[0].checks
    neg_ok = all((not c.passed) and c.residual > 1e-3 for c in neg)
    ok = r.returncode == 0 and report["pass"] and dt < 600 and neg_ok
    record(
        11,
        ok,
        f"verify --suite all exit {r.returncode} in {dt:.0f} s; {len(neg)} negative controls fail, "
        f"min residual {min(c.residual for c in neg):.2e}",
    )
    assert ok
