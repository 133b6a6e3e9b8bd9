"""Acceptance criteria 1 to 9.

Each test prints one line ``CRITERION n: PASS|FAIL - detail`` before
asserting, so ``pytest -v -s`` (or ``python tests/test_acceptance.py``)
gives a readable scorecard. Tolerances are the fixed targets; they are
never loosened to make a criterion pass.
"""
from __future__ import annotations

import math
import shutil
import sys
import time
from collections import Counter

import numpy as np
import pytest

from hypergruss import (
    GrussInstance,
    ParamSet,
    check_corollaries_p0,
    gauss_2f1,
    gauss_2f1_integral,
    gchf_integral,
    gchf_series,
    gghf_integral,
    gghf_series,
    gruss_check,
    kummer_1f1,
    kummer_1f1_integral,
)
from hypergruss import oracle
from hypergruss.cli import main
from hypergruss.inequalities import COROLLARY_PARENT, _thm_a_reports, _thm_i0_reports, _V
from hypergruss.inequalities import check_thm_A, check_thm_B, check_thm_C, check_thm_I0
from hypergruss.sweep import CHECKERS, THREADS_ENV, GridSpec, gruss_instances, run_sweep

pytestmark = pytest.mark.slow


def _announce(capsys, number, ok, detail):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    with capsys.disabled():
        print("\n" + line)


# ---------------------------------------------------------------- 1


def _random_points(rng, family, n):
    pts = []
    for _ in range(n):
        b = rng.uniform(0.3, 5.0)
        c = b + rng.uniform(0.3, 4.0)
        if family == "2f1":
            pts.append((rng.uniform(0.1, 4.0), b, c, rng.uniform(-0.95, 0.95)))
        elif family == "1f1":
            pts.append((b, c, rng.uniform(-20.0, 20.0)))
        else:
            ps = ParamSet(
                b=b,
                c=c,
                alpha=rng.uniform(0.3, 4.0),
                beta=rng.uniform(0.3, 5.0),
                p=rng.uniform(0.0, 3.0),
                a=rng.uniform(0.1, 4.0) if family == "gghf" else None,
            )
            z = rng.uniform(-0.95, 0.95) if family == "gghf" else rng.uniform(-20.0, 20.0)
            pts.append((ps, z))
    return pts


_PAIRS = {
    "2f1": (lambda a, b, c, z: gauss_2f1(a, b, c, z), lambda a, b, c, z: gauss_2f1_integral(a, b, c, z)),
    "1f1": (lambda b, c, z: kummer_1f1(b, c, z), lambda b, c, z: kummer_1f1_integral(b, c, z)),
    "gghf": (lambda ps, z: gghf_series(ps, z), lambda ps, z: gghf_integral(ps, z)),
    "gchf": (lambda ps, z: gchf_series(ps, z), lambda ps, z: gchf_integral(ps, z)),
}


def test_criterion_1_representation_equivalence(capsys):
    start = time.perf_counter()
    rng = np.random.default_rng(20240611)
    bad = Counter()
    flagged = Counter()
    worst = {}
    for family, (series, integral) in _PAIRS.items():
        worst[family] = 0.0
        for args in _random_points(rng, family, 500):
            s = series(*args)
            q = integral(*args)
            combined = s.err_estimate + q.err_estimate
            ratio = abs(s.value - q.value) / combined if combined > 0 else (0.0 if s.value == q.value else math.inf)
            worst[family] = max(worst[family], ratio)
            if not ratio <= 10.0:
                bad[family] += 1
            # alternating series with heavy cancellation report converged=False
            # honestly; their error estimates still have to cover the gap
            flagged[family] += not (s.converged and q.converged)
    elapsed = time.perf_counter() - start
    ok = not bad
    detail = ", ".join(f"{f} worst |diff|/err {worst[f]:.3g}" for f in _PAIRS)
    detail += f"; disagreements {dict(bad) or 0}; flagged non-converged {dict(flagged)}; {elapsed:.1f} s"
    _announce(capsys, 1, ok, detail)
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_2_p0_reductions(capsys):
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for a in (0.5, 2.0):
        for b in (0.5, 1.5):
            for off in (0.5, 1.0, 2.0, 3.0, 4.0):
                for z in np.linspace(-0.9, 0.9, 10):
                    ps = ParamSet(b=b, c=b + off, alpha=1.0, beta=2.0, p=0.0, a=a)
                    ref = gauss_2f1(a, b, b + off, z).value
                    for r in (gghf_series(ps, z), gghf_integral(ps, z)):
                        worst = max(worst, abs(r.value - ref) / abs(ref))
                    count += 1
    for b in (0.5, 1.0, 2.0, 3.5):
        for off in (0.5, 1.0, 2.0, 3.0, 4.0):
            for z in np.linspace(-10.0, 10.0, 10):
                ps = ParamSet(b=b, c=b + off, alpha=1.0, beta=2.0, p=0.0)
                ref = kummer_1f1(b, b + off, z).value
                for r in (gchf_series(ps, z), gchf_integral(ps, z)):
                    worst = max(worst, abs(r.value - ref) / abs(ref))
                count += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10
    _announce(capsys, 2, ok, f"{count} points (200 GGHF, 200 GCHF), worst relative {worst:.3g} <= 1e-10; {elapsed:.1f} s")
    assert ok


# ---------------------------------------------------------------- 3


def test_criterion_3_closed_forms(capsys):
    checks = []
    two_ln2 = 2.0 * math.log(2.0)
    e_minus_1 = math.expm1(1.0)
    for label, got, want in (
        ("2F1(1,1;2;0.5) series", gauss_2f1(1, 1, 2, 0.5).value, two_ln2),
        ("2F1(1,1;2;0.5) integral", gauss_2f1_integral(1, 1, 2, 0.5).value, two_ln2),
        ("1F1(1;2;1) series", kummer_1f1(1, 2, 1).value, e_minus_1),
        ("1F1(1;2;1) integral", kummer_1f1_integral(1, 2, 1).value, e_minus_1),
    ):
        checks.append((label, abs(got - want) / want))
    # the identities themselves, confirmed by the independent oracle
    o1 = oracle.oracle_series("2F1", {"a": 1, "b": 1, "c": 2}, 0.5)
    o2 = oracle.oracle_series("1F1", {"b": 1, "c": 2}, 1.0)
    checks.append(("oracle 2F1", abs(o1.value - two_ln2) / two_ln2))
    checks.append(("oracle 1F1", abs(o2.value - e_minus_1) / e_minus_1))
    worst = max(r for _, r in checks)
    ok = worst <= 1e-11
    _announce(capsys, 3, ok, "; ".join(f"{lbl} rel {r:.2g}" for lbl, r in checks))
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_gruss_lemma(capsys):
    start = time.perf_counter()
    instances = gruss_instances(200, 10_000, seed=7)
    failures = 0
    oracle_mismatch = 0
    n_const = n_zero_w = 0
    for inst in instances:
        rep = gruss_check(inst)
        failures += rep.certain_failure
        lhs_o, rhs_o = oracle.oracle_gruss(
            inst.x, inst.y, inst.m, (inst.gamma_lo, inst.gamma_hi, inst.phi_lo, inst.phi_hi)
        )
        scale = max(rhs_o, 1e-300)
        if lhs_o > rhs_o * (1 + 1e-12) or abs(lhs_o - rep.lhs) > rep.err + 1e-12 * scale:
            oracle_mismatch += 1
        n_const += len(set(inst.x)) == 1 or len(set(inst.y)) == 1
        n_zero_w += 0.0 in inst.m
    witness = gruss_check(GrussInstance.tight((0.0, 1.0), (0.0, 1.0), (1.0, 1.0)))
    elapsed = time.perf_counter() - start
    ok = failures == 0 and oracle_mismatch == 0 and abs(witness.slack) <= 1e-12 and witness.holds
    _announce(
        capsys,
        4,
        ok,
        f"{len(instances)} instances ({n_const} with a constant sequence, {n_zero_w} with zero weights), "
        f"{failures} failures, {oracle_mismatch} oracle mismatches; n=2 witness slack {witness.slack:.3g}; "
        f"{elapsed:.1f} s",
    )
    assert ok


# ---------------------------------------------------------------- sweeps


def _sweep(checker, **ranges):
    jobs = list(GridSpec.from_strings(**ranges).points(checker))
    report, results = run_sweep(checker, jobs)
    return jobs, report, results


def _failure_text(report):
    if not report.failed_by_name:
        return "no certain failures"
    return "certain failures " + ", ".join(f"{k}={v}" for k, v in sorted(report.failed_by_name.items()))


def test_criterion_5_proposition_sweep(capsys):
    start = time.perf_counter()
    _, report, _ = _sweep(
        "prop",
        a="0.5:2.5:3",
        b="1:3:3",
        c_offset="1:2.5:2",
        alpha="1:2:2",
        beta_offset="1:3:2",
        p="0.1:4:4",
        z="-0.9:0.9:8",
    )
    evaluated = report.grid_points - report.skipped - report.errors
    elapsed = time.perf_counter() - start
    ok = evaluated >= 2000 and report.failed == 0 and report.errors == 0
    _announce(
        capsys,
        5,
        ok,
        f"{evaluated} points x 19 t-values, {report.total} instances, {report.uncertain} uncertain, "
        f"{_failure_text(report)}; {elapsed:.1f} s",
    )
    assert ok


# Grids shared by the theorem sweeps. p includes 0 so the corollaries can
# be compared against the parent theorems at the same points.
_PARAM_GRID = dict(b="0.5:4:4", c_offset="0.5:3:3", alpha="0.5:2:2", beta_offset="0.5:2:2", p="0:2:3")
_THEOREM_GRIDS = {
    "thm-a": dict(_PARAM_GRID, z="0.1:2.5:6", z0="0.1:2.5:6"),
    "thm-i0": dict(_PARAM_GRID, a="0.5:2:2", z="0.05:0.95:5", z0="0.05:0.95:5"),
    "thm-b": dict(_PARAM_GRID, z1="0:1:3", z2="0:1:3", z3="0:2.5:3"),
    "thm-c": dict(_PARAM_GRID, b="0.5:4:3", a="0.5:2:2", z1="0:1:3", z2="0:1:3", z3="0:0.9:3"),
}


def _corollary_args(checker, pt):
    if checker in ("thm-a", "thm-i0"):
        kw = dict(z=pt["z"], z0=pt["z0"])
    else:
        kw = dict(z1=pt["z1"], z2=pt["z2"], z3=pt["z3"])
    if checker in ("thm-i0", "thm-c"):
        kw["a"] = pt["a"]
    return kw


def _match(x, y, tol=1e-9):
    # the sides are differences of O(1) function values, so the tolerance is
    # relative to max(1, |value|)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def test_criterion_6_theorem_sweeps(capsys):
    start = time.perf_counter()
    parts = []
    ok = True
    for checker, grid in _THEOREM_GRIDS.items():
        jobs, report, results = _sweep(checker, **grid)
        evaluated = report.grid_points - report.skipped - report.errors
        good = evaluated >= 3000 and report.failed == 0 and report.errors == 0
        ok &= good
        parts.append(f"{checker}: {evaluated} points, {report.uncertain} uncertain, {_failure_text(report)}")

        # corollaries at the p = 0 points of the same grid
        cor_fail = Counter()
        mismatch = Counter()
        n_cor = 0
        for pt, res in zip(jobs, results):
            if pt["p"] != 0.0 or res.skipped or res.error:
                continue
            parent = {r.name: r for r in res.reports}
            kw = _corollary_args(checker, pt)
            ps = ParamSet(b=pt["b"], c=pt["c"], a=kw.pop("a", None))
            n_cor += 1
            for rep in check_corollaries_p0(ps, **kw):
                if rep.name not in COROLLARY_PARENT or COROLLARY_PARENT[rep.name] not in parent:
                    continue
                if rep.certain_failure:
                    cor_fail[rep.name] += 1
                par = parent[COROLLARY_PARENT[rep.name]]
                if not (_match(rep.lhs, par.lhs) and _match(rep.rhs, par.rhs)):
                    mismatch[rep.name] += 1
        good = n_cor > 0 and not cor_fail and not mismatch
        ok &= good
        parts.append(
            f"corollaries at p=0 ({n_cor} points): failures {dict(cor_fail) or 0}, "
            f"parent mismatches {dict(mismatch) or 0}"
        )
    elapsed = time.perf_counter() - start
    _announce(capsys, 6, ok, "; ".join(parts) + f"; {elapsed:.1f} s")
    assert ok


# ---------------------------------------------------------------- 7


def test_criterion_7_degenerate_cases(capsys):
    ps1 = ParamSet(b=1.0, c=2.5, alpha=1.0, beta=2.0, p=0.5)
    ps2 = ps1.with_(a=0.75)
    lhs = {}
    for z in (0.2, 0.7):
        for r in check_thm_A(ps1, z, z) + check_thm_I0(ps2, z, z):
            lhs[f"{r.name} z=z0={z}"] = r.lhs
    for z1, z3 in ((0.3, 0.8), (1.0, 0.5)):
        lhs[f"thmB z2=1 z1={z1}"] = check_thm_B(ps1, z1, 1.0, z3).lhs
        lhs[f"thmC z2=1 z1={z1}"] = check_thm_C(ps2, z1, 1.0, z3).lhs
    for z1, z2 in ((0.3, 0.8), (1.0, 0.0)):
        lhs[f"thmB z3=0 z1={z1}"] = check_thm_B(ps1, z1, z2, 0.0).lhs
        lhs[f"thmC z3=0 z1={z1}"] = check_thm_C(ps2, z1, z2, 0.0).lhs
    # z = 0: the ratio equals 1 exactly there and the weight factor vanishes,
    # which zeroes the weighted forms
    one = _V(1.0, 0.0)
    for z0 in (0.3, 0.8):
        rz0 = _V(1.37, 1e-16)
        for r in _thm_a_reports("thmA", one, rz0, 0.0, z0, {}):
            if r.name.endswith("_weighted"):
                lhs[f"{r.name} z=0 z0={z0}"] = r.lhs
        for r in _thm_i0_reports("thmI0", 0.75, one, rz0, 0.0, z0, {}):
            if r.name.endswith("_weighted"):
                lhs[f"{r.name} z=0 z0={z0}"] = r.lhs
    worst_key = max(lhs, key=lhs.get)
    ok = lhs[worst_key] <= 1e-12
    _announce(capsys, 7, ok, f"{len(lhs)} degenerate instances, largest lhs {lhs[worst_key]:.3g} ({worst_key})")
    assert ok


# ---------------------------------------------------------------- 8


def test_criterion_8_golden_round_trip(capsys, tmp_path):
    start = time.perf_counter()
    path = tmp_path / "goldens.txt"
    shutil.copyfile(oracle.DEFAULT_GOLDEN_PATH, path)
    rc_mint = main(["golden", "mint", str(path)])
    rc_verify = main(["golden", "verify", str(path)])
    rc_double = main(["golden", "verify", str(path), "--resolution-scale", "2"])
    capsys.readouterr()
    shipped = oracle.read_goldens()
    minted = oracle.read_goldens(path)
    same = [a.value == b.value for a, b in zip(shipped, minted)]
    elapsed = time.perf_counter() - start
    ok = rc_mint == 0 and rc_verify == 0 and rc_double == 0
    _announce(
        capsys,
        8,
        ok,
        f"mint exit {rc_mint}, verify exit {rc_verify}, verify at doubled resolution exit {rc_double}; "
        f"{sum(same)}/{len(same)} minted values identical to the shipped file; {elapsed:.1f} s",
    )
    assert ok


# ---------------------------------------------------------------- 9


_SUITE_GRIDS = {
    "prop": ["--a", "0.5:2.5:2", "--b", "1:2:2", "--c-offset", "1:2:2", "--beta-offset", "1:2:2", "--p", "0.5:2:2", "--z=-0.5:0.5:2"],
    "corollary-prop": ["--a", "0.5:2.5:2", "--b", "1:2:2", "--c-offset", "1:2:2", "--beta-offset", "1:2:2", "--p", "0.5:2:2", "--z=-0.5:0.5:2"],
    "thm-a": ["--b", "0.5:2:2", "--c-offset", "0.5:2:2", "--p", "0:1:2", "--z", "0.2:2:3", "--z0", "0.2:2:3"],
    "thm-i0": ["--a", "0.5:2:2", "--b", "0.5:2:2", "--p", "0:1:2", "--z", "0.1:0.9:3", "--z0", "0.1:0.9:3"],
    "thm-b": ["--b", "0.5:2:2", "--p", "0:1:2", "--z1", "0:1:3", "--z2", "0:1:3", "--z3", "0:2:2"],
    "thm-c": ["--a", "0.5:2:2", "--p", "0:1:2", "--z1", "0:1:3", "--z2", "0:1:3", "--z3", "0:0.9:2"],
    "corollaries-p0": ["--a", "0.5:2:2", "--b", "0.5:2:2", "--z", "0.1:0.9:3", "--z0", "0.1:0.9:3", "--z3", "0:0.9:2"],
    "gruss-random": ["--n", "50", "--trials", "500", "--seed", "3"],
}


def _run_suite(directory, threads, monkeypatch):
    monkeypatch.setenv(THREADS_ENV, str(threads))
    directory.mkdir()
    for checker in CHECKERS:
        for fmt in ("json", "csv"):
            out = directory / f"{checker}.{fmt}"
            main(["check", checker, *_SUITE_GRIDS[checker], "-o", str(out), "--format", fmt])
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


def test_criterion_9_determinism(capsys, tmp_path, monkeypatch):
    start = time.perf_counter()
    one = _run_suite(tmp_path / "t1", 1, monkeypatch)
    eight = _run_suite(tmp_path / "t8", 8, monkeypatch)
    capsys.readouterr()
    differing = sorted(name for name in one if one[name] != eight.get(name))
    elapsed = time.perf_counter() - start
    ok = set(one) == set(eight) and len(one) == 2 * len(CHECKERS) and not differing
    _announce(
        capsys,
        9,
        ok,
        f"{len(one)} report files ({len(CHECKERS)} checkers x json/csv), "
        f"{len(differing)} differ between 1 and 8 threads; {elapsed:.1f} s",
    )
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
