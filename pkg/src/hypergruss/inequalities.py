"""Numerical certification of the bounds and Gruss-type inequalities.

Each checker validates its own hypotheses (raising
:class:`~hypergruss.errors.HypothesisError` naming the failed one),
evaluates both sides with error estimates, and returns
:class:`IneqReport` records. A report is ``uncertain`` when the slack is
within ten times the combined numerical error of the two sides.

Generalized functions are evaluated through their integral
representations; the classical 1F1 / 2F1 through their series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, HypothesisError
from .hyperseries import EPS, gauss_2f1, kummer_1f1
from .params import ParamSet
from .quadrature import gchf_integral, gen_beta, gghf_integral, normalized_err
from .scalar_core import beta as beta_fn
from .scalar_core import lambda_envelope, log_beta, theta_envelope

UNCERTAINTY_FACTOR = 10.0
NORMALIZED_BETA_FLOOR = 1e-300
DEFAULT_T_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))


@dataclass(frozen=True)
class IneqReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    uncertain: bool
    err: float
    inputs: dict = field(default_factory=dict)

    @property
    def certain_failure(self) -> bool:
        return not self.holds and not self.uncertain


class _V:
    """A float with a first-order absolute error bound.

    Arithmetic propagates the bound linearly and adds one rounding of
    the result per operation.
    """

    __slots__ = ("v", "e")

    def __init__(self, v, e=0.0):
        self.v = float(v)
        self.e = float(e)

    @staticmethod
    def of(x):
        return x if isinstance(x, _V) else _V(x, 0.0)

    def _r(self, v, e):
        return _V(v, e + EPS * abs(v))

    def __add__(self, o):
        o = _V.of(o)
        return self._r(self.v + o.v, self.e + o.e)

    __radd__ = __add__

    def __sub__(self, o):
        o = _V.of(o)
        return self._r(self.v - o.v, self.e + o.e)

    def __rsub__(self, o):
        return _V.of(o) - self

    def __mul__(self, o):
        o = _V.of(o)
        return self._r(self.v * o.v, abs(self.v) * o.e + abs(o.v) * self.e + self.e * o.e)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _V.of(o)
        q = self.v / o.v
        return self._r(q, (self.e + abs(q) * o.e) / abs(o.v))

    def __rtruediv__(self, o):
        return _V.of(o) / self

    def __abs__(self):
        return _V(abs(self.v), self.e)

    def __repr__(self):
        return f"_V({self.v!r}, {self.e!r})"


def _rel(v, k=4.0):
    """An exactly-formulated scalar with k ulps of relative error."""
    return _V(v, k * EPS * abs(v))


def _report(name, lhs: _V, rhs: _V, inputs) -> IneqReport:
    slack = rhs.v - lhs.v
    err = lhs.e + rhs.e
    return IneqReport(
        name=name,
        lhs=lhs.v,
        rhs=rhs.v,
        slack=slack,
        holds=slack >= 0.0,
        uncertain=abs(slack) <= UNCERTAINTY_FACTOR * err,
        err=err,
        inputs=dict(inputs),
    )


def _hyp(checker, cond, text):
    if not cond:
        raise HypothesisError(checker, text)


def _inputs(ps: ParamSet, **zs):
    d = ps.as_dict()
    d.update(zs)
    return d


# ---------------------------------------------------------------- building blocks


def _gchf(ps, z) -> _V:
    r = gchf_integral(ps, z)
    return _V(r.value, r.err_estimate)


def _gghf(ps, z) -> _V:
    r = gghf_integral(ps, z)
    return _V(r.value, r.err_estimate)


def _norm_beta(ps) -> _V:
    gb = gen_beta(ps.b, ps.c - ps.b, ps.alpha, ps.beta, ps.p)
    if abs(gb.normalized) < NORMALIZED_BETA_FLOOR:
        raise DomainError(
            f"normalized extended beta {gb.normalized!r} too small to divide by at {ps}"
        )
    return _V(gb.normalized, normalized_err(gb))


def _f11(b, c, z) -> _V:
    r = kummer_1f1(b, c, z)
    return _V(r.value, r.err_estimate)


def _f21(a, b, c, z) -> _V:
    r = gauss_2f1(a, b, c, z)
    return _V(r.value, r.err_estimate)


def _exp(x) -> _V:
    return _rel(math.exp(x), 2.0)


def _expm1(x) -> _V:
    return _rel(math.expm1(x), 2.0)


def _pow1m(z, a) -> _V:
    """(1 - z)^a."""
    return _rel(math.exp(a * math.log1p(-z)), 4.0 + 2.0 * abs(a * math.log1p(-z)))


def _pow1m_minus_one(z, a) -> _V:
    """(1 - z)^a - 1 without cancellation."""
    x = a * math.log1p(-z)
    return _rel(math.expm1(x), 4.0 + 2.0 * abs(x))


def _ratio_1r1(ps, z) -> _V:
    return _gchf(ps, z) / _norm_beta(ps)


def _ratio_2r1(ps, z) -> _V:
    return _gghf(ps, z) / _norm_beta(ps)


def _check_ratio_params(name, ps, need_a):
    _hyp(name, 0 < ps.b < ps.c, "0 < b < c")
    _hyp(name, ps.alpha > 0, "alpha > 0")
    _hyp(name, ps.beta > 0, "beta > 0")
    _hyp(name, ps.p >= 0, "p >= 0")
    if need_a:
        _hyp(name, ps.a is not None and ps.a > 0, "a > 0")


def ratio_1r1(ps: ParamSet, z: float) -> float:
    """Generalized confluent function divided by the normalized extended beta."""
    _check_ratio_params("ratio_1r1", ps, need_a=False)
    return _ratio_1r1(ps, float(z)).v


def ratio_2r1(ps: ParamSet, z: float) -> float:
    """Generalized Gauss function divided by the normalized extended beta."""
    _check_ratio_params("ratio_2r1", ps, need_a=True)
    _hyp("ratio_2r1", abs(z) < 1, "|z| < 1")
    return _ratio_2r1(ps, float(z)).v


# ---------------------------------------------------------------- Gruss lemma


@dataclass(frozen=True)
class GrussInstance:
    x: tuple
    y: tuple
    m: tuple
    gamma_lo: float
    gamma_hi: float
    phi_lo: float
    phi_hi: float

    def __post_init__(self):
        for name in ("x", "y", "m"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        n = len(self.x)
        if n < 1 or len(self.y) != n or len(self.m) != n:
            raise DomainError("x, y and m must share one length n >= 1")
        if any(mk < 0 for mk in self.m):
            raise DomainError("weights m_k must be non-negative")
        if any(not self.gamma_lo <= xk <= self.gamma_hi for xk in self.x):
            raise DomainError("gamma_lo <= x_k <= gamma_hi fails for some k")
        if any(not self.phi_lo <= yk <= self.phi_hi for yk in self.y):
            raise DomainError("phi_lo <= y_k <= phi_hi fails for some k")

    @classmethod
    def tight(cls, x, y, m):
        """Instance whose bounds are the sequence extrema."""
        return cls(x, y, m, min(x), max(x), min(y), max(y))


def gruss_check(inst: GrussInstance) -> IneqReport:
    """|sum m * sum mxy - sum mx * sum my| <= (1/4) (sum m)^2 (Gamma - gamma)(Phi - phi)."""
    m = inst.m
    # the left side is invariant under shifting x and y; shifting by the
    # first element makes constant sequences vanish exactly
    x = tuple(xk - inst.x[0] for xk in inst.x)
    y = tuple(yk - inst.y[0] for yk in inst.y)
    sm = math.fsum(m)
    smx = math.fsum(mk * xk for mk, xk in zip(m, x))
    smy = math.fsum(mk * yk for mk, yk in zip(m, y))
    smxy = math.fsum(mk * xk * yk for mk, xk, yk in zip(m, x, y))
    p1 = sm * smxy
    p2 = smx * smy
    lhs_v = abs(p1 - p2)
    # fsum results are correctly rounded from products with <= 2 roundings each
    mags = math.fsum(mk * abs(xk) for mk, xk in zip(m, x)) * math.fsum(
        mk * abs(yk) for mk, yk in zip(m, y)
    )
    mags = max(mags, sm * math.fsum(mk * abs(xk * yk) for mk, xk, yk in zip(m, x, y)))
    lhs = _V(lhs_v, 8 * EPS * mags)
    width = (inst.gamma_hi - inst.gamma_lo) * (inst.phi_hi - inst.phi_lo)
    rhs = _rel(0.25 * sm * sm * width, 6.0)
    inputs = {
        "n": len(x),
        "gamma_lo": inst.gamma_lo,
        "gamma_hi": inst.gamma_hi,
        "phi_lo": inst.phi_lo,
        "phi_hi": inst.phi_hi,
    }
    return _report("gruss", lhs, rhs, inputs)


# ---------------------------------------------------------------- proposition


def _prop_hypotheses(name, ps, z):
    _hyp(name, ps.a is not None and ps.a > 0, "a > 0")
    _hyp(name, ps.a != 1.0, "a != 1")
    _hyp(name, ps.b >= 1, "b >= 1")
    _hyp(name, ps.c >= ps.b + 1, "c >= b + 1")
    _hyp(name, ps.alpha >= 1, "alpha >= 1")
    _hyp(name, ps.beta >= ps.alpha + 1, "beta >= alpha + 1")
    _hyp(name, ps.p > 0, "p > 0")
    _hyp(name, z != 0, "z != 0")
    _hyp(name, abs(z) < 1, "|z| < 1")


def _kernel_bound_const(ps) -> _V:
    """lambda_{alpha-1, beta-alpha-1} / B(alpha, beta-alpha)."""
    lam = lambda_envelope(ps.alpha - 1, ps.beta - ps.alpha - 1)
    lb = log_beta(ps.alpha, ps.beta - ps.alpha)
    return _rel(lam / math.exp(lb), 8.0 + 4.0 * abs(lb))


def _weight_bound_const(ps) -> _V:
    """lambda_{b-1, c-b-1} / B(b, c-b)."""
    lam = lambda_envelope(ps.b - 1, ps.c - ps.b - 1)
    lb = log_beta(ps.b, ps.c - ps.b)
    return _rel(lam / math.exp(lb), 8.0 + 4.0 * abs(lb))


def check_prop_bounds(ps: ParamSet, z: float, t: float | Sequence[float] | None = None) -> list[IneqReport]:
    """Upper bounds on 1F1, the kernel, the extended beta and 2F1.

    Emits prop_1f1, prop_genbeta and prop_2f1 once, and prop_kernel and the
    intermediate kernel bound prop_kernel_t for each t (default: 0.05, ..., 0.95).
    """
    name = "prop"
    z = float(z)
    _prop_hypotheses(name, ps, z)
    if t is None:
        ts = DEFAULT_T_GRID
    elif isinstance(t, (int, float)):
        ts = (float(t),)
    else:
        ts = tuple(float(v) for v in t)
    for tv in ts:
        _hyp(name, 0 < tv < 1, "t in (0, 1)")
    a, b, c, al, be, p = ps.a, ps.b, ps.c, ps.alpha, ps.beta, ps.p
    out = []
    wb = _weight_bound_const(ps)

    rhs_1f1 = wb * _expm1(z) / z
    out.append(_report("prop_1f1", _f11(b, c, z), rhs_1f1, _inputs(ps, z=z)))

    gb = gen_beta(b, c - b, al, be, p)
    rhs_genbeta = _rel(theta_envelope(b, c, al, be, p), 16.0)
    out.append(_report("prop_genbeta", _V(gb.raw, gb.err_estimate), rhs_genbeta, _inputs(ps, z=z)))

    # integral of (1 - z t)^(-a) over (0, 1)
    rhs_2f1 = wb * ((-1.0) * _pow1m_minus_one(z, 1.0 - a)) / ((1.0 - a) * z)
    out.append(_report("prop_2f1", _f21(a, b, c, z), rhs_2f1, _inputs(ps, z=z)))

    kb = _kernel_bound_const(ps)
    rhs_kernel = kb / (4.0 * p)
    for tv in ts:
        w = p / (tv * (1.0 - tv))
        kern = _f11(al, be, -w)
        out.append(_report("prop_kernel", kern, rhs_kernel, _inputs(ps, z=z, t=tv)))
        rhs_kernel_t = kb * ((-1.0) * _expm1(-w)) / p * _rel(tv * (1.0 - tv), 2.0)
        out.append(_report("prop_kernel_t", kern, rhs_kernel_t, _inputs(ps, z=z, t=tv)))
    return out


def check_corollary_prop(ps: ParamSet, z: float) -> list[IneqReport]:
    """Generalized functions bounded by the kernel bound times the classical ones."""
    name = "corollary-prop"
    z = float(z)
    _prop_hypotheses(name, ps, z)
    k = _kernel_bound_const(ps) / (4.0 * ps.p)
    inputs = _inputs(ps, z=z)
    r1 = _report("corprop_1f1", _gchf(ps, z), k * _f11(ps.b, ps.c, z), inputs)
    r2 = _report("corprop_2f1", _gghf(ps, z), k * _f21(ps.a, ps.b, ps.c, z), inputs)
    return [r1, r2]


# ---------------------------------------------------------------- theorems


def _thm_a_reports(prefix, r_z: _V, r_z0: _V, z, z0, inputs):
    m0 = _expm1(z0)
    m = _expm1(z)
    lhs1 = abs(m0 * (r_z - 1.0) - m * (r_z0 - 1.0))
    rhs1 = m0 * m0 / 4.0 * _rel(z / z0, 1.0)
    lhs2 = abs(r_z - _exp(z - z0) * r_z0)
    rhs2 = _exp(z0) / 4.0
    return [
        _report(f"{prefix}_weighted", lhs1, rhs1, inputs),
        _report(f"{prefix}_shifted", lhs2, rhs2, inputs),
    ]


def check_thm_A(ps: ParamSet, z: float, z0: float) -> list[IneqReport]:
    """Two-point inequalities for the 1R1 ratio, 0 < z <= z0."""
    name = "thm-a"
    z, z0 = float(z), float(z0)
    _check_ratio_params(name, ps, need_a=False)
    _hyp(name, 0 < z <= z0, "0 < z <= z0")
    return _thm_a_reports(
        "thmA", _ratio_1r1(ps, z), _ratio_1r1(ps, z0), z, z0, _inputs(ps, z=z, z0=z0)
    )


def _thm_i0_reports(prefix, a, r_z: _V, r_z0: _V, z, z0, inputs):
    m0 = _pow1m_minus_one(z0, -a)
    m = _pow1m_minus_one(z, -a)
    lhs1 = abs(m0 * (r_z - 1.0) - m * (r_z0 - 1.0))
    rhs1 = _rel(z / 4.0, 0.0) * m0 * m0
    q = _pow1m(z, a)
    q0 = _pow1m(z0, a)
    lhs2 = abs(q * r_z - q0 * r_z0)
    rhs2 = _rel(z / 4.0, 0.0) * q / q0
    return [
        _report(f"{prefix}_weighted", lhs1, rhs1, inputs),
        _report(f"{prefix}_shifted", lhs2, rhs2, inputs),
    ]


def check_thm_I0(ps: ParamSet, z: float, z0: float) -> list[IneqReport]:
    """Two-point inequalities for the 2R1 ratio, 0 < z <= z0 < 1."""
    name = "thm-i0"
    z, z0 = float(z), float(z0)
    _check_ratio_params(name, ps, need_a=True)
    _hyp(name, 0 < z <= z0 < 1, "0 < z <= z0 < 1")
    return _thm_i0_reports(
        "thmI0", ps.a, _ratio_2r1(ps, z), _ratio_2r1(ps, z0), z, z0, _inputs(ps, z=z, z0=z0)
    )


def _z123_hypotheses(name, z1, z2, z3, z3_below_one):
    _hyp(name, 0 <= z1 <= 1, "0 <= z1 <= 1")
    _hyp(name, 0 <= z2 <= 1, "0 <= z2 <= 1")
    if z3_below_one:
        _hyp(name, 0 <= z3 < 1, "0 <= z3 < 1")
    else:
        _hyp(name, z3 >= 0, "z3 >= 0")


def check_thm_B(ps: ParamSet, z1: float, z2: float, z3: float) -> IneqReport:
    """|F(z1 z2 z3) - e^((z2-1) z3) F(z1 z3)| <= e^z3 / 4 * normalized beta, F = GCHF."""
    name = "thm-b"
    z1, z2, z3 = float(z1), float(z2), float(z3)
    _check_ratio_params(name, ps, need_a=False)
    _z123_hypotheses(name, z1, z2, z3, z3_below_one=False)
    lhs = abs(_gchf(ps, z1 * z2 * z3) - _exp((z2 - 1.0) * z3) * _gchf(ps, z1 * z3))
    rhs = _exp(z3) / 4.0 * _norm_beta(ps)
    return _report("thmB", lhs, rhs, _inputs(ps, z1=z1, z2=z2, z3=z3))


def check_thm_C(ps: ParamSet, z1: float, z2: float, z3: float) -> IneqReport:
    """(1 - z2 z3)^a / (1 - z3)^a weighted two-point bound for the GGHF."""
    name = "thm-c"
    z1, z2, z3 = float(z1), float(z2), float(z3)
    _check_ratio_params(name, ps, need_a=True)
    _z123_hypotheses(name, z1, z2, z3, z3_below_one=True)
    a = ps.a
    q2 = _pow1m(z2 * z3, a)
    q3 = _pow1m(z3, a)
    lhs = abs(q2 * _gghf(ps, z1 * z2 * z3) - q3 * _gghf(ps, z1 * z3))
    rhs = q2 / q3 / 4.0 * _norm_beta(ps)
    return _report("thmC", lhs, rhs, _inputs(ps, z1=z1, z2=z2, z3=z3))


# ---------------------------------------------------------------- p = 0 corollaries


def check_corollaries_p0(
    ps: ParamSet,
    z: float | None = None,
    z0: float | None = None,
    z1: float | None = None,
    z2: float | None = None,
    z3: float | None = None,
) -> list[IneqReport]:
    """The p = 0 corollaries, evaluated with the classical 1F1 / 2F1 series.

    With (z, z0): the 1F1 pair, plus the 2F1 pair when ``ps.a`` is set.
    With (z1, z2, z3): the 1F1 single bound in both the theorem-consistent
    form (exponent (z2-1) z3, ``corB``) and the form with exponent
    (z1-1) z3 (``corB_z1_exponent``), plus the 2F1 bound when ``ps.a`` is set.
    alpha, beta and p are ignored (p is taken as 0).
    """
    name = "corollaries-p0"
    b, c = ps.b, ps.c
    _hyp(name, 0 < b < c, "0 < b < c")
    base = ps.with_(p=0.0)
    have_pair = z is not None or z0 is not None
    have_triple = z1 is not None or z2 is not None or z3 is not None
    _hyp(name, have_pair or have_triple, "(z, z0) or (z1, z2, z3) given")
    out = []
    if have_pair:
        _hyp(name, z is not None and z0 is not None, "both z and z0 given")
        z, z0 = float(z), float(z0)
        _hyp(name, 0 < z <= z0, "0 < z <= z0")
        inputs = _inputs(base, z=z, z0=z0)
        out += _thm_a_reports("corA", _f11(b, c, z), _f11(b, c, z0), z, z0, inputs)
        if ps.a is not None:
            _hyp(name, ps.a > 0, "a > 0")
            _hyp(name, z0 < 1, "z0 < 1")
            out += _thm_i0_reports(
                "corI0", ps.a, _f21(ps.a, b, c, z), _f21(ps.a, b, c, z0), z, z0, inputs
            )
    if have_triple:
        _hyp(name, None not in (z1, z2, z3), "z1, z2 and z3 given")
        z1, z2, z3 = float(z1), float(z2), float(z3)
        _z123_hypotheses(name, z1, z2, z3, z3_below_one=False)
        inputs = _inputs(base, z1=z1, z2=z2, z3=z3)
        f_a = _f11(b, c, z1 * z2 * z3)
        f_b = _f11(b, c, z1 * z3)
        rhs = _exp(z3) / 4.0
        out.append(_report("corB", abs(f_a - _exp((z2 - 1.0) * z3) * f_b), rhs, inputs))
        out.append(
            _report("corB_z1_exponent", abs(f_a - _exp((z1 - 1.0) * z3) * f_b), rhs, inputs)
        )
        if ps.a is not None:
            _hyp(name, ps.a > 0, "a > 0")
            _hyp(name, z3 < 1, "0 <= z3 < 1")
            a = ps.a
            q2 = _pow1m(z2 * z3, a)
            q3 = _pow1m(z3, a)
            lhs = abs(q2 * _f21(a, b, c, z1 * z2 * z3) - q3 * _f21(a, b, c, z1 * z3))
            out.append(_report("corC", lhs, q2 / q3 / 4.0, inputs))
    return out


# reports that restate a parent theorem at p = 0, keyed by corollary name
COROLLARY_PARENT = {
    "corA_weighted": "thmA_weighted",
    "corA_shifted": "thmA_shifted",
    "corI0_weighted": "thmI0_weighted",
    "corI0_shifted": "thmI0_shifted",
    "corB": "thmB",
    "corC": "thmC",
}
