"""Grid sweeps of the inequality checkers and their report files.

A sweep expands a :class:`GridSpec` into the cartesian product of its
axes (in a fixed axis order), runs the checker on every point in a thread
pool, and keeps results in input order. Points whose values violate the
checker's hypotheses are counted as skipped. Every other point yields one
or more inequality instances (one per :class:`IneqReport`), and the
pass/uncertain/fail counts are over those instances.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError, HypothesisError
from .inequalities import (
    GrussInstance,
    IneqReport,
    check_corollaries_p0,
    check_corollary_prop,
    check_prop_bounds,
    check_thm_A,
    check_thm_B,
    check_thm_C,
    check_thm_I0,
    gruss_check,
)
from .params import ParamSet

SCHEMA_VERSION = "hypergruss-report/1"
THREADS_ENV = "HYPERGRUSS_THREADS"

# Axis order of the cartesian product. c and beta are derived from the
# offset axes when those are used.
AXES = ("a", "b", "c", "c_offset", "alpha", "beta", "beta_offset", "p", "z", "z0", "z1", "z2", "z3", "t")

DEFAULTS = {
    "a": 0.5,
    "b": 1.0,
    "c_offset": 1.0,
    "alpha": 1.0,
    "beta_offset": 1.0,
    "p": 0.5,
    "z": 0.5,
    "z0": 0.5,
    "z1": 0.5,
    "z2": 0.5,
    "z3": 0.5,
}

_PARAM_AXES = ("b", "c", "alpha", "beta", "p")
CHECKER_AXES = {
    "prop": _PARAM_AXES + ("a", "z", "t"),
    "corollary-prop": _PARAM_AXES + ("a", "z"),
    "thm-a": _PARAM_AXES + ("z", "z0"),
    "thm-i0": _PARAM_AXES + ("a", "z", "z0"),
    "thm-b": _PARAM_AXES + ("z1", "z2", "z3"),
    "thm-c": _PARAM_AXES + ("a", "z1", "z2", "z3"),
    "corollaries-p0": ("a", "b", "c", "z", "z0", "z1", "z2", "z3"),
}
CHECKERS = tuple(CHECKER_AXES) + ("gruss-random",)

INPUT_COLUMNS = (
    "a", "b", "c", "alpha", "beta", "p", "z", "z0", "z1", "z2", "z3", "t",
    "trial", "n", "gamma_lo", "gamma_hi", "phi_lo", "phi_hi",
)
RECORD_COLUMNS = ("schema", "checker", "point", "name", "lhs", "rhs", "slack", "holds", "uncertain", "err")


# ---------------------------------------------------------------- grid


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("range bounds must be finite")
        if self.lo > self.hi:
            raise DomainError(f"range needs lo <= hi, got {self.lo} > {self.hi}")
        if self.steps < 1:
            raise DomainError(f"range needs steps >= 1, got {self.steps}")

    @classmethod
    def parse(cls, text: str) -> "Range":
        """``lo:hi:steps`` or a single number."""
        parts = str(text).split(":")
        try:
            if len(parts) == 1:
                v = float(parts[0])
                return cls(v, v, 1)
            if len(parts) == 3:
                return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise DomainError(f"cannot parse range {text!r}: {exc}") from None
        raise DomainError(f"range must be 'lo:hi:steps' or a number, got {text!r}")

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.lo]
        return [float(v) for v in np.linspace(self.lo, self.hi, self.steps)]


@dataclass(frozen=True)
class GridSpec:
    """Per-axis ranges; unset axes fall back to one-point defaults."""

    ranges: dict = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.ranges) - set(AXES)
        if unknown:
            raise DomainError(f"unknown grid axes: {sorted(unknown)}")
        if "c" in self.ranges and "c_offset" in self.ranges:
            raise DomainError("give c or c_offset, not both")
        if "beta" in self.ranges and "beta_offset" in self.ranges:
            raise DomainError("give beta or beta_offset, not both")

    @classmethod
    def from_strings(cls, **texts) -> "GridSpec":
        return cls({k: Range.parse(v) for k, v in texts.items() if v is not None})

    def _axis_values(self, axis):
        if axis in self.ranges:
            return self.ranges[axis].values()
        return [DEFAULTS[axis]]

    def points(self, checker: str):
        """Cartesian product over the axes ``checker`` uses, as dicts."""
        wanted = CHECKER_AXES[checker]
        axes = []
        for name in AXES:
            if name == "c":
                if "c" in wanted:
                    axes.append("c" if "c" in self.ranges else "c_offset")
            elif name == "beta":
                if "beta" in wanted:
                    axes.append("beta" if "beta" in self.ranges else "beta_offset")
            elif name in ("c_offset", "beta_offset"):
                continue
            elif name in wanted:
                if name == "t" and name not in self.ranges:
                    continue  # the checker's default t-grid
                if name == "a" and checker == "corollaries-p0" and "a" not in self.ranges:
                    continue  # a is optional there
                axes.append(name)
        values = [self._axis_values(ax) for ax in axes]
        for combo in itertools.product(*values):
            pt = dict(zip(axes, combo))
            if "c_offset" in pt:
                pt["c"] = pt["b"] + pt.pop("c_offset")
            if "beta_offset" in pt:
                pt["beta"] = pt["alpha"] + pt.pop("beta_offset")
            yield pt

    def size(self, checker: str) -> int:
        return sum(1 for _ in self.points(checker))


# ---------------------------------------------------------------- evaluation


def _ps(pt) -> ParamSet:
    return ParamSet(
        b=pt["b"],
        c=pt["c"],
        alpha=pt.get("alpha", 1.0),
        beta=pt.get("beta", 2.0),
        p=pt.get("p", 0.0),
        a=pt.get("a"),
    )


def evaluate_point(checker: str, pt: dict) -> list[IneqReport]:
    """Run one checker at one grid point (raises HypothesisError when excluded)."""
    try:
        ps = _ps(pt)
    except DomainError as exc:
        raise HypothesisError(checker, str(exc)) from None
    if checker == "prop":
        return check_prop_bounds(ps, pt["z"], pt.get("t"))
    if checker == "corollary-prop":
        return check_corollary_prop(ps, pt["z"])
    if checker == "thm-a":
        return check_thm_A(ps, pt["z"], pt["z0"])
    if checker == "thm-i0":
        return check_thm_I0(ps, pt["z"], pt["z0"])
    if checker == "thm-b":
        return [check_thm_B(ps, pt["z1"], pt["z2"], pt["z3"])]
    if checker == "thm-c":
        return [check_thm_C(ps, pt["z1"], pt["z2"], pt["z3"])]
    if checker == "corollaries-p0":
        return check_corollaries_p0(ps, z=pt["z"], z0=pt["z0"], z1=pt["z1"], z2=pt["z2"], z3=pt["z3"])
    raise DomainError(f"unknown checker {checker!r}")


def gruss_instances(n_max: int, trials: int, seed: int) -> list[GrussInstance]:
    """Random Gruss instances, generated serially so the seed fixes them all.

    Sizes are uniform on 1..n_max. About one instance in ten has a constant
    x sequence, one in ten a constant y, and weights are zeroed at random
    with probability 0.2. Bounds are either the sequence extrema or a
    looser random enclosure.
    """
    if n_max < 1 or trials < 0:
        raise DomainError("gruss-random needs n >= 1 and trials >= 0")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        n = int(rng.integers(1, n_max + 1))
        x = rng.uniform(-1.0, 1.0, n)
        y = rng.uniform(-1.0, 1.0, n)
        m = rng.uniform(0.0, 1.0, n)
        if rng.random() < 0.1:
            x[:] = x[0]
        if rng.random() < 0.1:
            y[:] = y[0]
        m[rng.random(n) < 0.2] = 0.0
        if rng.random() < 0.5:
            inst = GrussInstance.tight(x, y, m)
        else:
            pad = rng.uniform(0.0, 0.5, 4)
            inst = GrussInstance(
                x, y, m, x.min() - pad[0], x.max() + pad[1], y.min() - pad[2], y.max() + pad[3]
            )
        out.append(inst)
    return out


@dataclass
class SweepReport:
    checker: str
    grid_points: int
    skipped: int
    total: int
    passed: int
    uncertain: int
    failed: int
    errors: int
    worst_slack: float
    worst_name: str | None
    worst_inputs: dict
    failed_by_name: dict
    wall_time: float

    def summary_lines(self) -> list[str]:
        lines = [
            f"checker      {self.checker}",
            f"grid points  {self.grid_points} (evaluated {self.grid_points - self.skipped - self.errors}, "
            f"skipped {self.skipped}, errors {self.errors})",
            f"instances    {self.total}",
            f"passed       {self.passed}",
            f"uncertain    {self.uncertain}",
            f"failed       {self.failed}",
        ]
        for name, k in sorted(self.failed_by_name.items()):
            lines.append(f"  failed {name}: {k}")
        if self.worst_name is not None:
            ins = ", ".join(f"{k}={fmt_float(v)}" for k, v in self.worst_inputs.items() if v is not None)
            lines.append(f"worst slack  {fmt_float(self.worst_slack)} ({self.worst_name}; {ins})")
        lines.append(f"wall time    {self.wall_time:.3f} s")
        return lines


@dataclass(frozen=True)
class PointResult:
    index: int
    reports: tuple
    skipped: bool = False
    error: str | None = None


def thread_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def _run_one(checker, index, job):
    try:
        if checker == "gruss-random":
            rep = gruss_check(job)
            rep.inputs["trial"] = index
            return PointResult(index, (rep,))
        return PointResult(index, tuple(evaluate_point(checker, job)))
    except HypothesisError:
        return PointResult(index, (), skipped=True)
    except ConvergenceError as exc:
        return PointResult(index, (), error=str(exc))


def run_sweep(checker: str, jobs, threads: int | None = None):
    """Evaluate ``jobs`` (grid points, or Gruss instances) in input order.

    Returns (SweepReport, list of PointResult).
    """
    if checker not in CHECKERS:
        raise DomainError(f"unknown checker {checker!r}; choose from {', '.join(CHECKERS)}")
    jobs = list(jobs)
    start = time.perf_counter()
    n_threads = thread_count(threads)
    if n_threads == 1:
        results = [_run_one(checker, i, j) for i, j in enumerate(jobs)]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(lambda ij: _run_one(checker, *ij), enumerate(jobs)))
    wall = time.perf_counter() - start
    return summarize(checker, results, wall), results


def summarize(checker, results, wall_time=0.0) -> SweepReport:
    passed = uncertain = failed = total = 0
    failed_by_name: dict = {}
    worst = None
    for res in results:
        for rep in res.reports:
            total += 1
            if rep.uncertain:
                uncertain += 1
            elif rep.holds:
                passed += 1
            else:
                failed += 1
                failed_by_name[rep.name] = failed_by_name.get(rep.name, 0) + 1
            if worst is None or rep.slack < worst.slack:
                worst = rep
    return SweepReport(
        checker=checker,
        grid_points=len(results),
        skipped=sum(r.skipped for r in results),
        total=total,
        passed=passed,
        uncertain=uncertain,
        failed=failed,
        errors=sum(r.error is not None for r in results),
        worst_slack=worst.slack if worst else math.nan,
        worst_name=worst.name if worst else None,
        worst_inputs=dict(worst.inputs) if worst else {},
        failed_by_name=failed_by_name,
        wall_time=wall_time,
    )


# ---------------------------------------------------------------- report files


def fmt_float(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v) if math.isfinite(v) else "null"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(v)


def _record(checker, point, rep: IneqReport) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "checker": checker,
        "point": point,
        "name": rep.name,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "slack": rep.slack,
        "holds": rep.holds,
        "uncertain": rep.uncertain,
        "err": rep.err,
        "inputs": rep.inputs,
    }


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def render_report(checker, results, fmt: str = "json") -> str:
    """Report text: NDJSON (one object per instance) or CSV with a fixed header."""
    if fmt == "json":
        lines = [
            _json_value(_record(checker, res.index, rep)) for res in results for rep in res.reports
        ]
        return "".join(line + "\n" for line in lines)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_COLUMNS + INPUT_COLUMNS)
        for res in results:
            for rep in res.reports:
                rec = _record(checker, res.index, rep)
                row = [_csv_cell(rec[k]) for k in RECORD_COLUMNS]
                row += [_csv_cell(rep.inputs.get(k)) for k in INPUT_COLUMNS]
                w.writerow(row)
        return buf.getvalue()
    raise DomainError(f"unknown report format {fmt!r}")


def write_report(path, checker, results, fmt: str = "json") -> None:
    text = render_report(checker, results, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
