"""Series evaluation of 2F1, 1F1, their beta expansions and the
generalized (GGHF / GCHF) series built on the extended beta function.

Every summation goes through :func:`_accumulate`, which applies one
truncation rule: stop once ``consecutive_small`` successive terms are
below ``rel_tol`` times the running sum and the geometric tail bound
from the observed term ratio is below half of that target.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import ConvergenceError, DomainError
from .scalar_core import beta as beta_fn
from .scalar_core import log_beta, log_gamma

EPS = np.finfo(float).eps

# |z| beyond this is treated as "on the unit circle" for 2F1
Z_EDGE = 1.0 - 1e-6

# largest w for which exp(-w) is a normal double
_KUMMER_SERIES_WMAX = 700.0
_ASYMPTOTIC_WMIN = 30.0
_KERNEL_TOL = 1e-17


class Method(str, enum.Enum):
    SERIES = "series"
    BETA_SERIES = "beta_series"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class EvalConfig:
    rel_tol: float = 1e-12
    max_terms: int = 1_000_000
    consecutive_small: int = 3

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.consecutive_small < 1:
            raise DomainError("consecutive_small must be >= 1")


@dataclass(frozen=True)
class EvalResult:
    value: float
    err_estimate: float
    terms_used: int
    method: Method
    converged: bool
    cancellation: bool = False

    def scaled(self, factor: float) -> "EvalResult":
        return EvalResult(
            self.value * factor,
            self.err_estimate * abs(factor),
            self.terms_used,
            self.method,
            self.converged,
            self.cancellation,
        )


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def _finite(**kw):
    for name, v in kw.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


def _accumulate(
    terms: Iterator[tuple[float, float]],
    cfg: EvalConfig,
    method: Method,
    *,
    ratio_floor: float = 0.0,
    monotone: bool = False,
) -> EvalResult:
    """Sum ``(term, term_err)`` pairs under the shared truncation rule.

    ``ratio_floor`` is a known lower bound on the asymptotic term ratio
    (|z| for 2F1-type series); it keeps the geometric tail bound honest
    when the observed ratio is still climbing toward its limit.
    """
    total = 0.0
    comp = 0.0  # Neumaier compensation
    abs_weighted = 0.0
    abs_sum = 0.0
    term_errs = 0.0
    small = 0
    n = 0
    prev = None
    last = 0.0
    ratio = 1.0
    done = False
    for term, terr in terms:
        if not math.isfinite(term):
            raise ConvergenceError(f"series term {n} overflowed")
        if monotone:
            assert term >= 0.0, f"negative term {term!r} in a positive series"
        n += 1
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        abs_sum += abs(term)
        # recurrence-generated terms carry O(k eps) relative error
        abs_weighted += n * abs(term)
        term_errs += terr
        if prev not in (None, 0.0):
            ratio = abs(term / prev)
        prev = term
        last = term
        s = abs(total + comp)
        if abs(term) <= cfg.rel_tol * s or (s == 0.0 and term == 0.0):
            small += 1
        else:
            small = 0
        if small >= cfg.consecutive_small:
            # keep going until the geometric tail bound, not just the last
            # term, is comfortably inside the target
            r_now = max(ratio, ratio_floor)
            if term == 0.0 or (r_now < 1.0 and abs(term) / (1.0 - r_now) <= 0.5 * cfg.rel_tol * s):
                done = True
                break
        if n >= cfg.max_terms:
            break
    value = total + comp
    r = max(ratio, ratio_floor)
    if last == 0.0:
        tail = 0.0
    elif r < 1.0:
        tail = abs(last) / (1.0 - r)
    else:
        tail = math.inf
    rounding = 6.0 * EPS * abs_weighted + EPS * abs(value)
    err = tail + rounding + term_errs
    tol = cfg.rel_tol * abs(value) if value != 0.0 else cfg.rel_tol
    cancellation = abs_sum > 1e4 * abs(value)
    return EvalResult(value, err, n, method, bool(done and err <= tol), cancellation)


# ---------------------------------------------------------------- 2F1


def _terms_2f1(a, b, c, z):
    term = 1.0
    n = 0
    while True:
        yield term, 0.0
        term *= (a + n) * (b + n) * z / ((c + n) * (n + 1))
        n += 1


def series_terms_2f1(a: float, b: float, c: float, z: float, n_max: int) -> np.ndarray:
    """The first ``n_max + 1`` recurrence-generated terms of the 2F1 series."""
    gen = _terms_2f1(a, b, c, z)
    return np.array([next(gen)[0] for _ in range(n_max + 1)])


def _check_z_2f1(z):
    if abs(z) > Z_EDGE:
        raise ConvergenceError(
            f"|z| = {abs(z)!r} exceeds {Z_EDGE!r}; 2F1 series not evaluated this close to |z| = 1"
        )


def gauss_2f1(a: float, b: float, c: float, z: float, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    """Gauss hypergeometric 2F1(a, b; c; z) by direct summation, |z| < 1."""
    a, b, c, z = float(a), float(b), float(c), float(z)
    _finite(a=a, b=b, c=c, z=z)
    _require(a > 0 and b > 0 and c > 0, "gauss_2f1 requires a, b, c > 0")
    _require(abs(z) < 1.0, f"gauss_2f1 requires |z| < 1, got {z!r}")
    _check_z_2f1(z)
    return _accumulate(
        _terms_2f1(a, b, c, z), cfg, Method.SERIES, ratio_floor=abs(z), monotone=z >= 0.0
    )


def _beta_term_err(x, y):
    # absolute error of exp(lgG(x)+lgG(y)-lgG(x+y)) relative to its value
    return 4.0 * EPS * (abs(log_gamma(x)) + abs(log_gamma(y)) + abs(log_gamma(x + y)) + 3.0)


def gauss_2f1_beta_expansion(
    a: float, b: float, c: float, z: float, cfg: EvalConfig = EvalConfig()
) -> EvalResult:
    """2F1 as (1/B(b,c-b)) sum (a)_n B(b+n, c-b) z^n / n!, each beta from log-gamma."""
    a, b, c, z = float(a), float(b), float(c), float(z)
    _finite(a=a, b=b, c=c, z=z)
    _require(a > 0 and 0 < b < c, "gauss_2f1_beta_expansion requires a > 0 and 0 < b < c")
    _require(abs(z) < 1.0, f"gauss_2f1_beta_expansion requires |z| < 1, got {z!r}")
    _check_z_2f1(z)
    lb0 = log_beta(b, c - b)

    def terms():
        coef = 1.0  # (a)_n z^n / n!
        n = 0
        while True:
            rb = math.exp(log_beta(b + n, c - b) - lb0)
            term = coef * rb
            yield term, abs(term) * (_beta_term_err(b + n, c - b) + _beta_term_err(b, c - b))
            coef *= (a + n) * z / (n + 1)
            n += 1

    return _accumulate(terms(), cfg, Method.BETA_SERIES, ratio_floor=abs(z), monotone=z >= 0.0)


# ---------------------------------------------------------------- 1F1


def _terms_1f1(b, c, z, first=1.0):
    term = first
    n = 0
    while True:
        yield term, 0.0
        term *= (b + n) * z / ((c + n) * (n + 1))
        n += 1


def _kummer_asymptotic(alpha, beta_, w, tol=_KERNEL_TOL):
    """Large-w expansion of 1F1(alpha; beta; -w) for scalar w > 0.

    Returns (value, err, terms) or None when the expansion does not
    reach ``tol`` before its terms start to grow, or when the
    exponentially small companion term is not negligible.
    """
    d = beta_ - alpha
    if d <= 0 and d == round(d):
        return None  # 1/Gamma(beta - alpha) = 0; kernel is exponentially small
    # size of the dropped e^{-w} w^{alpha - beta} contribution relative to the kept one
    log_rel = -w + (2.0 * alpha - beta_) * math.log(w) + math.lgamma(d) - math.lgamma(alpha)
    if log_rel > math.log(tol):
        return None
    s = 1.0
    term = 1.0
    k = 0
    prev_abs = math.inf
    while True:
        term *= (alpha + k) * (alpha - beta_ + 1.0 + k) / ((k + 1) * w)
        k += 1
        at = abs(term)
        if at > prev_abs:
            return None
        s += term
        if at <= tol * abs(s):
            break
        prev_abs = at
        if k > 500:
            return None
    if d > 0:
        pref = math.exp(log_gamma(beta_) - log_gamma(d) - alpha * math.log(w))
    else:
        pref = math.gamma(beta_) / math.gamma(d) * w ** (-alpha)
    value = pref * s
    return value, abs(pref * term) + 8 * EPS * abs(value), k + 1


def kummer_1f1(b: float, c: float, z: float, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    """Kummer's function 1F1(b; c; z) for real z.

    For z < 0 with c > b the Kummer transformation
    1F1(b; c; z) = e^z 1F1(c - b; c; -z) turns the alternating series
    into a positive one; very negative z uses the large-argument
    expansion instead. When c <= b the alternating series is summed
    directly and ``cancellation`` is set.
    """
    b, c, z = float(b), float(c), float(z)
    _finite(b=b, c=c, z=z)
    _require(b > 0 and c > 0, "kummer_1f1 requires b > 0 and c > 0")
    if z >= 0.0:
        return _accumulate(_terms_1f1(b, c, z), cfg, Method.SERIES, monotone=True)
    if c - b > 0.0:
        w = -z
        if w > _ASYMPTOTIC_WMIN:
            asym = _kummer_asymptotic(b, c, w, tol=min(cfg.rel_tol, 1e-16))
            if asym is not None:
                v, e, k = asym
                return EvalResult(v, e, k, Method.SERIES, e <= cfg.rel_tol * abs(v))
        if w > _KUMMER_SERIES_WMAX:
            raise ConvergenceError(f"1F1({b}; {c}; {z}) out of range for the transformed series")
        return _accumulate(
            _terms_1f1(c - b, c, w, first=math.exp(z)), cfg, Method.SERIES, monotone=True
        )
    res = _accumulate(_terms_1f1(b, c, z), cfg, Method.SERIES)
    return EvalResult(res.value, res.err_estimate, res.terms_used, res.method, res.converged, True)


def kummer_1f1_beta_expansion(b: float, c: float, z: float, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    """1F1 as (1/B(b,c-b)) sum B(b+n, c-b) z^n / n!."""
    b, c, z = float(b), float(c), float(z)
    _finite(b=b, c=c, z=z)
    _require(0 < b < c, "kummer_1f1_beta_expansion requires 0 < b < c")
    lb0 = log_beta(b, c - b)

    def terms():
        coef = 1.0
        n = 0
        while True:
            term = coef * math.exp(log_beta(b + n, c - b) - lb0)
            yield term, abs(term) * (_beta_term_err(b + n, c - b) + _beta_term_err(b, c - b))
            coef *= z / (n + 1)
            n += 1

    return _accumulate(terms(), cfg, Method.BETA_SERIES, monotone=z >= 0.0)


# ---------------------------------------------------------------- kernel 1F1(alpha; beta; -w)


def _kernel_series(alpha, beta_, w):
    # e^{-w} 1F1(beta - alpha; beta; w), vectorized, w <= 700
    d = beta_ - alpha
    term = np.exp(-w)
    total = term.copy()
    wmax = float(w.max()) if w.size else 0.0
    n = 0
    quiet = 0
    while True:
        term = term * ((d + n) * w / ((beta_ + n) * (n + 1)))
        n += 1
        total += term
        if n > wmax and np.all(np.abs(term) <= _KERNEL_TOL * np.abs(total)):
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
        if n > 5000:
            raise ConvergenceError("kernel series did not converge")
    return total


def _kernel_polynomial(alpha, beta_, w):
    # beta - alpha = -m, m a non-negative integer: e^{-w} times a degree-m polynomial
    m = int(round(alpha - beta_))
    d = beta_ - alpha
    with np.errstate(under="ignore"):
        e = np.exp(-w)
    term = np.ones_like(w)
    poly = term.copy()
    with np.errstate(invalid="ignore", over="ignore"):
        for n in range(m):
            term = term * ((d + n) * w / ((beta_ + n) * (n + 1)))
            poly += term
        out = e * poly
    out[e == 0.0] = 0.0
    return out


def _kernel_asymptotic(alpha, beta_, w):
    # vectorized form of _kummer_asymptotic; returns (values, ok mask)
    d = beta_ - alpha
    with np.errstate(divide="ignore", over="ignore"):
        log_rel = -w + (2.0 * alpha - beta_) * np.log(w) + (math.lgamma(d) - math.lgamma(alpha))
    ok = log_rel <= math.log(_KERNEL_TOL)
    s = np.ones_like(w)
    term = np.ones_like(w)
    done = np.zeros(w.shape, dtype=bool)
    prev_abs = np.full(w.shape, np.inf)
    for k in range(500):
        term = term * ((alpha + k) * (alpha - beta_ + 1.0 + k) / ((k + 1) * w))
        at = np.abs(term)
        ok &= done | (at <= prev_abs)
        active = ok & ~done
        s[active] += term[active]
        done |= active & (at <= _KERNEL_TOL * np.abs(s))
        prev_abs = at
        if np.all(done | ~ok):
            break
    ok &= done
    if d > 0:
        log_pref = log_gamma(beta_) - log_gamma(d)
        with np.errstate(under="ignore"):
            out = np.exp(log_pref - alpha * np.log(w)) * s
    else:
        with np.errstate(under="ignore"):
            out = (math.gamma(beta_) / math.gamma(d)) * w ** (-alpha) * s
    return out, ok


def kummer_neg_kernel(alpha: float, beta_: float, w) -> np.ndarray:
    """1F1(alpha; beta; -w) for an array of w >= 0 (inf allowed, giving 0).

    This is the weight inside the extended beta integral, evaluated at
    w = p / (t (1 - t)). Small w use the Kummer-transformed positive
    series; large w use the algebraic large-argument expansion, whose
    applicability is checked node by node.
    """
    alpha, beta_ = float(alpha), float(beta_)
    _require(alpha > 0 and beta_ > 0, "kernel requires alpha > 0 and beta > 0")
    w = np.asarray(w, dtype=float)
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise DomainError("kernel requires w >= 0")
    d = beta_ - alpha
    if d <= 0 and d == round(d):
        return _kernel_polynomial(alpha, beta_, w)
    flat_w = w.ravel()
    out = np.empty_like(flat_w)
    todo = np.ones(flat_w.shape, dtype=bool)
    inf = np.isinf(flat_w)
    out[inf] = 0.0
    todo[inf] = False
    big = todo & (flat_w > _ASYMPTOTIC_WMIN)
    if big.any():
        vals, ok = _kernel_asymptotic(alpha, beta_, flat_w[big])
        idx = np.flatnonzero(big)[ok]
        out[idx] = vals[ok]
        todo[idx] = False
    if todo.any():
        rest = flat_w[todo]
        if rest.max() > _KUMMER_SERIES_WMAX:
            raise ConvergenceError(
                f"kernel 1F1({alpha}; {beta_}; -w) unavailable for w = {rest.max():.3g}"
            )
        out[todo] = _kernel_series(alpha, beta_, rest)
    return out.reshape(w.shape)


# ---------------------------------------------------------------- generalized series

BetaGen = Callable[[float, float], object]


def _betagen_value(res):
    """Accept a bare float, a (value, err) pair, or an object with .raw/.err_estimate."""
    if isinstance(res, tuple):
        return float(res[0]), float(res[1])
    raw = getattr(res, "raw", None)
    if raw is not None:
        return float(raw), float(getattr(res, "err_estimate", 0.0))
    return float(res), 0.0


def _check_generalized(ps, need_a):
    b, c, alpha, beta_, p = ps.b, ps.c, ps.alpha, ps.beta, ps.p
    _finite(b=b, c=c, alpha=alpha, beta=beta_, p=p)
    _require(0 < b < c, "requires 0 < b < c")
    _require(alpha > 0 and beta_ > 0, "requires alpha > 0 and beta > 0")
    _require(p >= 0, "requires p >= 0")
    if need_a:
        _require(ps.a is not None, "requires the parameter a")
        _finite(a=ps.a)
        _require(ps.a > 0, "requires a > 0")


def per_term_tol(rel_tol: float, n: int) -> float:
    """Quadrature tolerance for the n-th generalized series term (floored at 1e-13)."""
    return max(rel_tol / (n + 2) ** 2, 1e-13)


def _default_betagen(ps, cfg):
    from .quadrature import QuadConfig, gen_beta

    def betagen(x, y, n=0):
        q = QuadConfig(rel_tol=per_term_tol(cfg.rel_tol, n))
        return gen_beta(x, y, ps.alpha, ps.beta, ps.p, q)

    return betagen


def _call_betagen(betagen, x, y, n):
    try:
        return betagen(x, y, n)
    except TypeError:
        return betagen(x, y)


def _generalized(ps, z, betagen, cfg, with_a):
    b, c = ps.b, ps.c
    if betagen is None:
        betagen = _default_betagen(ps, cfg)
    b0 = beta_fn(b, c - b)

    def terms():
        coef = 1.0
        n = 0
        while True:
            raw, err = _betagen_value(_call_betagen(betagen, b + n, c - b, n))
            term = coef * raw / b0
            yield term, abs(coef) * err / b0 + abs(term) * 4 * EPS
            if with_a:
                coef *= (ps.a + n) * z / (n + 1)
            else:
                coef *= z / (n + 1)
            n += 1

    return _accumulate(terms(), cfg, Method.SERIES, ratio_floor=abs(z) if with_a else 0.0)


def gghf_series(ps, z: float, betagen: BetaGen | None = None, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    """Generalized Gauss function: (1/B(b,c-b)) sum (a)_n B_p(b+n, c-b) z^n / n!.

    ``betagen(x, y)`` returns the extended beta B_p^(alpha,beta)(x, y); it
    defaults to :func:`hypergruss.quadrature.gen_beta` with a per-term
    tolerance of rel_tol / (n+2)^2.
    """
    z = float(z)
    _finite(z=z)
    _check_generalized(ps, need_a=True)
    _require(abs(z) < 1.0, f"gghf_series requires |z| < 1, got {z!r}")
    _check_z_2f1(z)
    return _generalized(ps, z, betagen, cfg, with_a=True)


def gchf_series(ps, z: float, betagen: BetaGen | None = None, cfg: EvalConfig = EvalConfig()) -> EvalResult:
    """Generalized confluent function: (1/B(b,c-b)) sum B_p(b+n, c-b) z^n / n!."""
    z = float(z)
    _finite(z=z)
    _check_generalized(ps, need_a=False)
    return _generalized(ps, z, betagen, cfg, with_a=False)
