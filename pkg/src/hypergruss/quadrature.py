"""Double-exponential quadrature on (0, 1) and the integral representations.

The map t = 1 / (1 + exp(-pi sinh u)) sends u in R onto (0, 1) and turns
algebraic endpoint singularities t^(b-1) (1-t)^(c-b-1) into
double-exponentially decaying integrands, so a trapezoid sum in u
converges fast. Both t and 1 - t are formed directly from u, never by
subtraction, so nodes a few ulps from either endpoint stay accurate.

Level L uses 2^L + 1 equispaced u-nodes on [-U, U]; the nodes of level
L are a subset of those of level L + 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError
from .hyperseries import EPS, Z_EDGE, EvalResult, Method, kummer_neg_kernel
from .scalar_core import log_beta

# pi sinh(U) = 700, so the outermost nodes sit near t = e^-700
U_MAX = math.asinh(700.0 / math.pi)


@dataclass(frozen=True)
class QuadConfig:
    base_level: int = 6
    max_level: int = 12
    rel_tol: float = 1e-11

    def __post_init__(self):
        if not 2 <= self.base_level <= self.max_level:
            raise DomainError("QuadConfig requires 2 <= base_level <= max_level")
        if self.max_level > 20:
            raise DomainError("max_level above 20 is not supported")
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError("rel_tol must lie in (0, 1)")


@dataclass(frozen=True)
class GenBetaValue:
    raw: float
    normalized: float
    err_estimate: float


@dataclass
class QuadResult:
    value: float
    err_estimate: float
    level: int
    nodes: int
    history: list = field(default_factory=list)


@dataclass(frozen=True)
class _Nodes:
    t: np.ndarray
    s: np.ndarray  # 1 - t
    log_t: np.ndarray
    log_s: np.ndarray
    log_w: np.ndarray  # log of h * dt/du


@lru_cache(maxsize=None)
def nodes(level: int) -> _Nodes:
    n = 2**level
    h = 2.0 * U_MAX / n
    u = np.linspace(-U_MAX, U_MAX, n + 1)
    v = np.pi * np.sinh(u)
    log_t = -np.logaddexp(0.0, -v)
    log_s = -np.logaddexp(0.0, v)
    log_w = math.log(h * math.pi) + np.log(np.cosh(u)) + log_t + log_s
    arrays = [np.exp(log_t), np.exp(log_s), log_t, log_s, log_w]
    for a in arrays:
        a.flags.writeable = False
    return _Nodes(*arrays)


def _run_levels(level_values, sing_exponents, cfg: QuadConfig, what: str) -> QuadResult:
    """Refine until the inter-level difference meets cfg.rel_tol.

    ``level_values(level)`` returns (weighted values, integrand at the two
    end nodes). The error estimate adds the inter-level difference, a
    rounding floor and the truncated-tail estimate for the declared
    endpoint exponents.
    """
    xe, ye = sing_exponents

    def one(level):
        vals, f_left, f_right = level_values(level)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"{what}: integrand is not finite at a quadrature node")
        nd = nodes(level)
        tail = abs(f_left) * nd.t[0] / (xe + 1.0) + abs(f_right) * nd.s[-1] / (ye + 1.0)
        return float(vals.sum()), float(np.abs(vals).sum()), tail

    prev, _, _ = one(cfg.base_level - 1)
    history = []
    for level in range(cfg.base_level, cfg.max_level + 1):
        cur, abs_sum, tail = one(level)
        rounding = 8.0 * EPS * abs_sum
        err = abs(cur - prev) + rounding + tail
        history.append(err)
        # a sign-changing integrand can cancel below the rounding floor, so
        # stop once the discretization part is no larger than rounding
        if err <= cfg.rel_tol * abs(cur) or err <= 3.0 * rounding:
            return QuadResult(cur, err, level, 2**level + 1, history)
        prev = cur
    raise ConvergenceError(
        f"{what}: no convergence by level {cfg.max_level} (estimate {err:.3g}, value {cur:.17g})"
    )


def de_integrate(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    sing_exponents: tuple[float, float] = (0.0, 0.0),
    cfg: QuadConfig = QuadConfig(),
) -> QuadResult:
    """Like :func:`integrate01` but returns the full :class:`QuadResult`."""
    xe, ye = map(float, sing_exponents)
    if not (xe > -1.0 and ye > -1.0):
        raise DomainError("endpoint exponents must exceed -1")

    def level_values(level):
        nd = nodes(level)
        fv = np.asarray(f(nd.t, nd.s), dtype=float)
        fv = np.broadcast_to(fv, nd.t.shape)
        return np.exp(nd.log_w) * fv, fv[0], fv[-1]

    return _run_levels(level_values, (xe, ye), cfg, "integrate01")


def integrate01(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    sing_exponents: tuple[float, float] = (0.0, 0.0),
    cfg: QuadConfig = QuadConfig(),
) -> tuple[float, float]:
    """Integrate f over (0, 1); returns (value, err_estimate).

    ``f(t, s)`` is called with node arrays t and s = 1 - t (s is exact,
    not 1 - t rounded). ``sing_exponents = (x, y)`` declares
    |f| <= C t^x (1-t)^y near the endpoints, x, y > -1.
    """
    r = de_integrate(f, sing_exponents, cfg)
    return r.value, r.err_estimate


# ---------------------------------------------------------------- kernel cache


@lru_cache(maxsize=2048)
def kernel_at_level(alpha: float, beta_: float, p: float, level: int) -> np.ndarray:
    """1F1(alpha; beta; -p/(t(1-t))) at the level's nodes, cached per (alpha, beta, p)."""
    nd = nodes(level)
    if p == 0.0:
        k = np.ones_like(nd.t)
    else:
        with np.errstate(over="ignore"):
            w = p * np.exp(-(nd.log_t + nd.log_s))
        k = kummer_neg_kernel(alpha, beta_, w)
    k.flags.writeable = False
    return k


def _beta_weighted(x, y, kernel, g, cfg, what):
    """Integral of t^(x-1) (1-t)^(y-1) K(t) g(t) over (0,1).

    ``kernel`` is None or an (alpha, beta, p) triple; ``g`` is None or a
    smooth vectorized factor g(t, s).
    """

    def level_values(level):
        nd = nodes(level)
        log_env = (x - 1.0) * nd.log_t + (y - 1.0) * nd.log_s
        vals = np.exp(nd.log_w + log_env)
        if kernel is not None:
            vals = vals * kernel_at_level(*kernel, level)
        if g is not None:
            vals = vals * g(nd.t, nd.s)
        ends = vals[[0, -1]] / np.exp(nd.log_w[[0, -1]])
        return vals, ends[0], ends[1]

    return _run_levels(level_values, (x - 1.0, y - 1.0), cfg, what)


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def _finite(**kw):
    for name, v in kw.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


@lru_cache(maxsize=65536)
def _gen_beta_cached(x, y, alpha, beta_, p, cfg):
    r = _beta_weighted(x, y, (alpha, beta_, p), None, cfg, "gen_beta")
    lb = log_beta(x, y)
    b = math.exp(lb)
    raw = r.value
    return GenBetaValue(raw, raw / b, r.err_estimate + abs(raw) * 4 * EPS * (abs(lb) + 1.0))


def gen_beta(
    x: float, y: float, alpha: float, beta_: float, p: float, cfg: QuadConfig = QuadConfig()
) -> GenBetaValue:
    """Extended beta B_p^(alpha,beta)(x, y) with kernel 1F1(alpha; beta; -p/(t(1-t))).

    ``err_estimate`` is the absolute error of ``raw``; use
    :func:`normalized_err` for the error of ``normalized``.
    """
    x, y, alpha, beta_, p = map(float, (x, y, alpha, beta_, p))
    _finite(x=x, y=y, alpha=alpha, beta=beta_, p=p)
    _require(x > 0 and y > 0, "gen_beta requires x > 0 and y > 0")
    _require(alpha > 0 and beta_ > 0, "gen_beta requires alpha > 0 and beta > 0")
    _require(p >= 0, "gen_beta requires p >= 0")
    return _gen_beta_cached(x, y, alpha, beta_, p, cfg)


def normalized_err(gb: GenBetaValue) -> float:
    """Absolute error of ``gb.normalized``."""
    if gb.raw == 0.0:
        return gb.err_estimate
    return gb.err_estimate * abs(gb.normalized / gb.raw)


def _as_result(r: QuadResult, lb: float) -> EvalResult:
    b = math.exp(lb)
    v = r.value / b
    err = r.err_estimate / b + abs(v) * 4 * EPS * (abs(lb) + 1.0)
    return EvalResult(v, err, r.nodes, Method.QUADRATURE, True)


def _check_z_edge(z):
    if abs(z) > Z_EDGE:
        raise ConvergenceError(f"|z| = {abs(z)!r} exceeds {Z_EDGE!r}")


@lru_cache(maxsize=65536)
def _gauss_2f1_integral(a, b, c, z, cfg):
    def g(t, s):
        return np.exp(-a * np.log1p(-z * t))

    r = _beta_weighted(b, c - b, None, g, cfg, "gauss_2f1_integral")
    return _as_result(r, log_beta(b, c - b))


def gauss_2f1_integral(a: float, b: float, c: float, z: float, cfg: QuadConfig = QuadConfig()) -> EvalResult:
    """2F1(a, b; c; z) from its Euler integral, |z| <= 1 - 1e-6."""
    a, b, c, z = map(float, (a, b, c, z))
    _finite(a=a, b=b, c=c, z=z)
    _require(a > 0 and 0 < b < c, "gauss_2f1_integral requires a > 0 and 0 < b < c")
    _require(abs(z) < 1.0, "gauss_2f1_integral requires |z| < 1")
    _check_z_edge(z)
    return _gauss_2f1_integral(a, b, c, z, cfg)


@lru_cache(maxsize=65536)
def _kummer_1f1_integral(b, c, z, cfg):
    def g(t, s):
        return np.exp(z * t)

    r = _beta_weighted(b, c - b, None, g, cfg, "kummer_1f1_integral")
    return _as_result(r, log_beta(b, c - b))


def kummer_1f1_integral(b: float, c: float, z: float, cfg: QuadConfig = QuadConfig()) -> EvalResult:
    """1F1(b; c; z) = (1/B(b, c-b)) * integral of u^(b-1) (1-u)^(c-b-1) e^(zu)."""
    b, c, z = map(float, (b, c, z))
    _finite(b=b, c=c, z=z)
    _require(0 < b < c, "kummer_1f1_integral requires 0 < b < c")
    return _kummer_1f1_integral(b, c, z, cfg)


def _check_generalized(ps, need_a):
    _finite(b=ps.b, c=ps.c, alpha=ps.alpha, beta=ps.beta, p=ps.p)
    _require(0 < ps.b < ps.c, "requires 0 < b < c")
    _require(ps.alpha > 0 and ps.beta > 0, "requires alpha > 0 and beta > 0")
    _require(ps.p >= 0, "requires p >= 0")
    if need_a:
        _require(ps.a is not None, "requires the parameter a")
        _finite(a=ps.a)
        _require(ps.a > 0, "requires a > 0")


@lru_cache(maxsize=65536)
def _gghf_integral(a, b, c, alpha, beta_, p, z, cfg):
    def g(t, s):
        return np.exp(-a * np.log1p(-z * t))

    r = _beta_weighted(b, c - b, (alpha, beta_, p), g, cfg, "gghf_integral")
    return _as_result(r, log_beta(b, c - b))


def gghf_integral(ps, z: float, cfg: QuadConfig = QuadConfig()) -> EvalResult:
    """Generalized Gauss function from its single-integral representation."""
    z = float(z)
    _finite(z=z)
    _check_generalized(ps, need_a=True)
    _require(abs(z) < 1.0, "gghf_integral requires |z| < 1")
    _check_z_edge(z)
    return _gghf_integral(
        float(ps.a), float(ps.b), float(ps.c), float(ps.alpha), float(ps.beta), float(ps.p), z, cfg
    )


@lru_cache(maxsize=65536)
def _gchf_integral(b, c, alpha, beta_, p, z, cfg):
    def g(t, s):
        return np.exp(z * t)

    r = _beta_weighted(b, c - b, (alpha, beta_, p), g, cfg, "gchf_integral")
    return _as_result(r, log_beta(b, c - b))


def gchf_integral(ps, z: float, cfg: QuadConfig = QuadConfig()) -> EvalResult:
    """Generalized confluent function from its single-integral representation."""
    z = float(z)
    _finite(z=z)
    _check_generalized(ps, need_a=False)
    return _gchf_integral(float(ps.b), float(ps.c), float(ps.alpha), float(ps.beta), float(ps.p), z, cfg)


def clear_caches() -> None:
    """Drop every memoized kernel and integral (mainly for benchmarks)."""
    for fn in (
        kernel_at_level,
        _gen_beta_cached,
        _gauss_2f1_integral,
        _kummer_1f1_integral,
        _gghf_integral,
        _gchf_integral,
    ):
        fn.cache_clear()
