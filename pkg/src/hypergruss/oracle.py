"""Brute-force reference values, kept structurally apart from production code.

* series are summed term by term, each term rebuilt from log-Pochhammer
  values (``math.lgamma``), with no ratio recurrence and no transformation;
* integrals use the composite midpoint rule on (0, 1), which never touches
  the endpoints;
* the kernel 1F1(alpha; beta; -w) is a Horner-evaluated truncated Kummer
  series for w <= 30 and ``mpmath.hyp1f1`` beyond.

Nothing here imports the production evaluators.

Golden file format, one record per line::

    kind | params | z | resolution | value | bound

``params`` is ``key=value`` pairs joined by commas; ``bound`` is the
discretization bound estimated by halving the resolution. Numbers are
written with 17 significant digits; lines starting with ``#`` are comments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import mpmath
import numpy as np

SERIES_KINDS = ("2F1", "1F1", "GGHF", "GCHF")
QUAD_KINDS = ("2F1_int", "1F1_int", "genbeta", "GGHF_int", "GCHF_int")

DEFAULT_TERMS = 100_000
DEFAULT_NODES = 10_000_000
_CHUNK = 1_000_000
_KERNEL_SERIES_W = 30.0
_KERNEL_SERIES_TERMS = 130
_MP_DPS = 20

DEFAULT_GOLDEN_PATH = Path(__file__).with_name("data") / "goldens.txt"


@dataclass(frozen=True)
class OracleResult:
    value: float
    method_note: str
    resolution: int


def _lp(x, n):
    """log of the rising factorial (x)_n, x > 0."""
    return math.lgamma(x + n) - math.lgamma(x)


def _rising(x, n):
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


# ---------------------------------------------------------------- midpoint machinery


def _midpoints(n_nodes, lo, hi):
    k = np.arange(lo, hi, dtype=float)
    t = (k + 0.5) / n_nodes
    s = (n_nodes - k - 0.5) / n_nodes
    return t, s


def _kernel_values(alpha, beta_, w):
    out = np.empty_like(w)
    small = w <= _KERNEL_SERIES_W
    if small.any():
        ws = w[small]
        d = beta_ - alpha
        coefs = [_rising(d, n) / (_rising(beta_, n) * math.factorial(n)) for n in range(_KERNEL_SERIES_TERMS)]
        acc = np.zeros_like(ws)
        for cf in reversed(coefs):
            acc = acc * ws + cf
        out[small] = np.exp(-ws) * acc
    big = np.flatnonzero(~small)
    if big.size:
        with mpmath.workdps(_MP_DPS):
            for i in big:
                out[i] = float(mpmath.hyp1f1(alpha, beta_, -float(w[i])))
    return out


@lru_cache(maxsize=2)
def _kernel_half(alpha, beta_, p, n_nodes):
    """Kernel at the first ceil(n/2) midpoints; the rest follow by t <-> 1-t symmetry."""
    half = (n_nodes + 1) // 2
    parts = []
    for lo in range(0, half, _CHUNK):
        hi = min(half, lo + _CHUNK)
        t, s = _midpoints(n_nodes, lo, hi)
        parts.append(_kernel_values(alpha, beta_, p / (t * s)))
    k = np.concatenate(parts)
    k.flags.writeable = False
    return k


def _kernel_chunk(kernel, n_nodes, lo, hi):
    if kernel is None:
        return 1.0
    alpha, beta_, p = kernel
    if p == 0.0:
        return 1.0
    half_vals = _kernel_half(alpha, beta_, p, n_nodes)
    idx = np.arange(lo, hi)
    mirror = np.minimum(idx, n_nodes - 1 - idx)
    return half_vals[mirror]


def _midpoint_integral(x, y, kernel, g, n_nodes):
    """Midpoint rule for t^(x-1) (1-t)^(y-1) K(t) g(t, s) on (0, 1)."""
    total = []
    for lo in range(0, n_nodes, _CHUNK):
        hi = min(n_nodes, lo + _CHUNK)
        t, s = _midpoints(n_nodes, lo, hi)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            f = t ** (x - 1.0) * s ** (y - 1.0)
            f = f * _kernel_chunk(kernel, n_nodes, lo, hi)
            if g is not None:
                f = f * g(t, s)
        if not np.all(np.isfinite(f)):
            raise ArithmeticError("non-finite integrand value at a midpoint node")
        total.append(math.fsum(f))
    return math.fsum(total) / n_nodes


def _midpoint_moments(x, y, kernel, coefs, n_nodes):
    """sum_n coefs[n] * integral of t^(x+n-1) (1-t)^(y-1) K(t) over (0,1), termwise."""
    sums = np.zeros(len(coefs))
    for lo in range(0, n_nodes, _CHUNK):
        hi = min(n_nodes, lo + _CHUNK)
        t, s = _midpoints(n_nodes, lo, hi)
        f = t ** (x - 1.0) * s ** (y - 1.0) * _kernel_chunk(kernel, n_nodes, lo, hi)
        for n in range(len(coefs)):
            # pairwise summation: with this many moments, fsum per chunk is too slow
            sums[n] += float(np.sum(f))
            f = f * t
    moments = sums / n_nodes
    return math.fsum(c * m for c, m in zip(coefs, moments)), moments


def _log_beta(x, y):
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def _get(params, key, default=None):
    if isinstance(params, dict):
        v = params.get(key, default)
    else:
        v = getattr(params, key, default)
    if v is None:
        raise ValueError(f"oracle needs parameter {key!r}")
    return float(v)


# ---------------------------------------------------------------- public oracles


def oracle_series(kind: str, params, z: float, n_terms: int = DEFAULT_TERMS, n_nodes: int = DEFAULT_NODES) -> OracleResult:
    """Term-by-term partial sum of the 2F1 / 1F1 / GGHF / GCHF series.

    For GGHF and GCHF each coefficient B_p(b+n, c-b) is a midpoint
    integral at ``n_nodes`` nodes (shared kernel), and the resolution
    reported is ``n_nodes``; for the classical series it is ``n_terms``.
    """
    if kind not in SERIES_KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    z = float(z)
    b = _get(params, "b")
    c = _get(params, "c")
    if kind in ("2F1", "1F1"):
        a = _get(params, "a") if kind == "2F1" else None
        terms = []
        for n in range(n_terms):
            if z == 0.0:
                terms.append(1.0 if n == 0 else 0.0)
                continue
            lg = _lp(b, n) - _lp(c, n) + n * math.log(abs(z)) - math.lgamma(n + 1)
            if a is not None:
                lg += _lp(a, n)
            if lg > 709.0:
                raise OverflowError(f"term {n} exceeds the double range")
            sign = -1.0 if (z < 0 and n % 2) else 1.0
            terms.append(sign * math.exp(lg))
        return OracleResult(math.fsum(terms), f"{kind} partial sum of {n_terms} direct terms", n_terms)

    alpha = _get(params, "alpha")
    beta_ = _get(params, "beta")
    p = _get(params, "p")
    a = _get(params, "a") if kind == "GGHF" else None
    coefs = []
    for n in range(n_terms):
        lg = -math.lgamma(n + 1) + (n * math.log(abs(z)) if z != 0 else 0.0)
        if a is not None:
            lg += _lp(a, n)
        cf = 0.0 if (z == 0.0 and n > 0) else math.exp(lg)
        coefs.append(-cf if (z < 0 and n % 2) else cf)
    total, _ = _midpoint_moments(b, c - b, (alpha, beta_, p), coefs, n_nodes)
    value = total / math.exp(_log_beta(b, c - b))
    note = f"{kind}: {n_terms} terms, each extended beta by midpoint at {n_nodes} nodes"
    return OracleResult(value, note, n_nodes)


def oracle_quad(kind: str, params, z: float = 0.0, n_nodes: int = DEFAULT_NODES) -> OracleResult:
    """Composite-midpoint evaluation of an integral representation."""
    if kind not in QUAD_KINDS:
        raise ValueError(f"unknown quadrature kind {kind!r}")
    z = float(z)
    note = f"{kind}: composite midpoint, {n_nodes} nodes"
    if kind == "genbeta":
        x, y = _get(params, "x"), _get(params, "y")
        kernel = (_get(params, "alpha"), _get(params, "beta"), _get(params, "p"))
        return OracleResult(_midpoint_integral(x, y, kernel, None, n_nodes), note, n_nodes)
    b, c = _get(params, "b"), _get(params, "c")
    kernel = None
    if kind in ("GGHF_int", "GCHF_int"):
        kernel = (_get(params, "alpha"), _get(params, "beta"), _get(params, "p"))
    if kind in ("2F1_int", "GGHF_int"):
        a = _get(params, "a")

        def g(t, s):
            return (1.0 - z * t) ** (-a)

    else:

        def g(t, s):
            return np.exp(z * t)

    integral = _midpoint_integral(b, c - b, kernel, g, n_nodes)
    return OracleResult(integral / math.exp(_log_beta(b, c - b)), note, n_nodes)


def oracle_gruss(x, y, m, bounds=None) -> tuple[float, float]:
    """Both sides of the discrete Gruss inequality by a naive double sum.

    lhs uses sum m * sum mxy - sum mx * sum my
    = (1/2) sum_j sum_k m_j m_k (x_j - x_k)(y_j - y_k); rhs uses the
    tight bounds (sequence extrema) unless ``bounds`` = (gamma, Gamma, phi, Phi).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = np.asarray(m, dtype=float)
    if not (x.shape == y.shape == m.shape) or x.ndim != 1:
        raise ValueError("x, y and m must be one-dimensional and of equal length")
    if np.any(m < 0):
        raise ValueError("weights must be non-negative")
    pair = np.outer(m, m) * np.subtract.outer(x, x) * np.subtract.outer(y, y)
    lhs = abs(0.5 * math.fsum(pair.ravel()))
    if bounds is None:
        bounds = (x.min(), x.max(), y.min(), y.max())
    g_lo, g_hi, p_lo, p_hi = map(float, bounds)
    rhs = 0.25 * math.fsum(m) ** 2 * (g_hi - g_lo) * (p_hi - p_lo)
    return lhs, rhs


# ---------------------------------------------------------------- golden file


@dataclass(frozen=True)
class GoldenRecord:
    kind: str
    params: dict
    z: float
    resolution: int
    value: float
    bound: float

    def line(self) -> str:
        ps = ",".join(f"{k}={_num(v)}" for k, v in self.params.items())
        return " | ".join(
            [self.kind, ps, _num(self.z), str(self.resolution), _num(self.value), _num(self.bound)]
        )


def _num(v) -> str:
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def _parse_value(text):
    text = text.strip()
    if text.lstrip("-").isdigit():
        return int(text)
    return float(text)


def parse_golden_line(line: str) -> GoldenRecord:
    fields = [f.strip() for f in line.split("|")]
    if len(fields) != 6:
        raise ValueError(f"golden record needs 6 fields, got {len(fields)}: {line!r}")
    kind, ps, z, res, value, bound = fields
    params = {}
    if ps:
        for item in ps.split(","):
            k, v = item.split("=")
            params[k.strip()] = _parse_value(v)
    return GoldenRecord(kind, params, float(z), int(res), float(value), float(bound))


# kind, params, z, resolution (n_terms for 2F1/1F1 series, else n_nodes)
GOLDEN_CASES = (
    ("2F1", {"a": 1, "b": 1, "c": 2}, 0.5, DEFAULT_TERMS),
    ("2F1", {"a": 0.5, "b": 1, "c": 3}, 0.3, DEFAULT_TERMS),
    ("1F1", {"b": 1, "c": 2}, 1.0, DEFAULT_TERMS),
    ("1F1", {"b": 2, "c": 5}, -3.0, DEFAULT_TERMS),
    ("2F1_int", {"a": 1, "b": 1, "c": 2}, 0.5, DEFAULT_NODES),
    ("1F1_int", {"b": 1, "c": 2}, 1.0, DEFAULT_NODES),
    ("genbeta", {"x": 1, "y": 1, "alpha": 1, "beta": 2, "p": 0.1}, 0.0, DEFAULT_NODES),
    ("GGHF_int", {"a": 1, "b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1}, 0.5, DEFAULT_NODES),
    ("GGHF_int", {"a": 1, "b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1}, 0.3, DEFAULT_NODES),
    ("GCHF_int", {"b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1}, 1.0, DEFAULT_NODES),
    ("GCHF_int", {"b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1}, 0.5, DEFAULT_NODES),
    ("GGHF", {"a": 1, "b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1, "n_terms": 60}, 0.5, DEFAULT_NODES),
    ("GCHF", {"b": 1, "c": 2, "alpha": 1, "beta": 2, "p": 0.1, "n_terms": 30}, 1.0, DEFAULT_NODES),
)

_SERIES_FLOOR = 1e-14
_QUAD_FLOOR = 1e-13


def evaluate_case(kind: str, params: dict, z: float, resolution: int) -> float:
    if kind in ("2F1", "1F1"):
        return oracle_series(kind, params, z, n_terms=resolution).value
    if kind in ("GGHF", "GCHF"):
        return oracle_series(kind, params, z, n_terms=int(params["n_terms"]), n_nodes=resolution).value
    return oracle_quad(kind, params, z, n_nodes=resolution).value


def mint_record(kind, params, z, resolution) -> GoldenRecord:
    """Evaluate at ``resolution`` and half of it; bound = max(2 |difference|, floor)."""
    value = evaluate_case(kind, params, z, resolution)
    coarse = evaluate_case(kind, params, z, resolution // 2)
    floor = _SERIES_FLOOR if kind in ("2F1", "1F1") else _QUAD_FLOOR
    bound = max(2.0 * abs(value - coarse), floor * abs(value))
    return GoldenRecord(kind, dict(params), float(z), int(resolution), value, bound)


def mint(path, cases=GOLDEN_CASES, resolution_scale: float = 1.0) -> list[GoldenRecord]:
    records = [
        mint_record(kind, params, z, int(res * resolution_scale)) for kind, params, z, res in cases
    ]
    write_goldens(path, records)
    return records


def write_goldens(path, records) -> None:
    path = Path(path)
    lines = ["# kind | params | z | resolution | value | bound"]
    lines += [r.line() for r in records]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_goldens(path=DEFAULT_GOLDEN_PATH) -> list[GoldenRecord]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            out.append(parse_golden_line(line))
    return out


@dataclass(frozen=True)
class VerifyOutcome:
    record: GoldenRecord
    recomputed: float
    ok: bool


def verify(path, resolution_scale: int = 1) -> list[VerifyOutcome]:
    """Recompute every record (optionally at a multiple of its resolution)."""
    out = []
    for rec in read_goldens(path):
        v = evaluate_case(rec.kind, rec.params, rec.z, rec.resolution * resolution_scale)
        out.append(VerifyOutcome(rec, v, abs(v - rec.value) <= rec.bound))
    return out


def golden_lookup(kind: str, z: float, path=DEFAULT_GOLDEN_PATH, **params) -> GoldenRecord:
    """Find the stored record matching kind, z and the given parameters."""
    for rec in read_goldens(path):
        if rec.kind != kind or rec.z != float(z):
            continue
        if all(float(rec.params.get(k, math.nan)) == float(v) for k, v in params.items()):
            return rec
    raise KeyError(f"no golden record for {kind} {params} z={z}")
