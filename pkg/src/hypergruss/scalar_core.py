"""Gamma, beta, Pochhammer and the envelope constants lambda/theta.

All ratio-of-gamma quantities are formed in the log domain so that
arguments up to ~1e4 do not overflow.
"""
from __future__ import annotations

import math

from .errors import DomainError

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_EULER_GAMMA = 0.57721566490153286061

# B_{2k} / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN_X = 15.0

# zeta(k) for k = 2..60, used in the Taylor series of ln Gamma(1 + e)
_ZETA = (
    1.6449340668482264365,
    1.2020569031595942854,
    1.0823232337111381915,
    1.0369277551433699263,
    1.0173430619844491397,
    1.0083492773819228268,
    1.0040773561979443394,
    1.0020083928260822144,
    1.0009945751278180853,
    1.0004941886041194646,
    1.0002460865533080483,
    1.0001227133475784891,
    1.0000612481350587048,
    1.0000305882363070205,
    1.0000152822594086519,
    1.0000076371976378998,
    1.0000038172932649998,
    1.0000019082127165539,
    1.0000009539620338728,
    1.0000004769329867878,
    1.0000002384505027277,
    1.0000001192199259653,
    1.0000000596081890513,
    1.0000000298035035147,
    1.0000000149015548284,
    1.0000000074507117898,
    1.0000000037253340248,
    1.0000000018626597235,
    1.0000000009313274324,
    1.0000000004656629065,
    1.0000000002328311834,
    1.0000000001164155017,
    1.0000000000582077209,
    1.0000000000291038504,
    1.0000000000145519219,
    1.0000000000072759598,
    1.0000000000036379795,
    1.0000000000018189897,
    1.0000000000009094948,
    1.0000000000004547474,
    1.0000000000002273737,
    1.0000000000001136868,
    1.0000000000000568434,
    1.0000000000000284217,
    1.0000000000000142109,
    1.0000000000000071054,
    1.0000000000000035527,
    1.0000000000000017764,
    1.0000000000000008882,
    1.0000000000000004441,
    1.000000000000000222,
    1.000000000000000111,
    1.0000000000000000555,
    1.0000000000000000278,
    1.0000000000000000139,
    1.0000000000000000069,
    1.0000000000000000035,
    1.0000000000000000017,
    1.0000000000000000009,
)

# products (lam)_n are formed directly up to this many factors; for lam > 0
# the product overflows well before that, at which point the log route takes over
_POCH_DIRECT_MAX = 512


def _check_real(name, x):
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")


def _lgamma_near_one(e):
    # ln Gamma(1 + e) = -gamma*e + sum_{k>=2} zeta(k) (-e)^k / k, |e| <= 1/2
    acc = 0.0
    power = e * e
    for k, zeta in enumerate(_ZETA, start=2):
        term = zeta * power / k
        acc += term if k % 2 == 0 else -term
        power *= e
    return acc - _EULER_GAMMA * e


def _lgamma_stirling(x):
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for coef in reversed(_STIRLING):
        series = series * inv2 + coef
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series * inv


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0.

    Taylor series in zeta values around the zeros x = 1 and x = 2 on
    [0.5, 2.5], recurrence onto that interval up to x = 15, and
    Stirling's series with eight correction terms beyond.
    """
    x = float(x)
    _check_real("x", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        return _lgamma_near_one(x) - math.log(x)
    if x <= 1.5:
        return _lgamma_near_one(x - 1.0)
    if x <= 2.5:
        e = x - 2.0
        return math.log1p(e) + _lgamma_near_one(e)
    if x >= _STIRLING_MIN_X:
        return _lgamma_stirling(x)
    # Gamma(x) = (x-1)(x-2)...(x-k) Gamma(x-k) with x-k in (1.5, 2.5]
    prod = 1.0
    while x > 2.5:
        x -= 1.0
        prod *= x
    return math.log(prod) + math.log1p(x - 2.0) + _lgamma_near_one(x - 2.0)


def log_beta(x: float, y: float) -> float:
    x, y = float(x), float(y)
    _check_real("x", x)
    _check_real("y", y)
    if x <= 0.0 or y <= 0.0:
        raise DomainError(f"beta requires x > 0 and y > 0, got ({x!r}, {y!r})")
    return log_gamma(x) + log_gamma(y) - log_gamma(x + y)


def beta(x: float, y: float) -> float:
    """Euler beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)."""
    return math.exp(log_beta(x, y))


def log_pochhammer(lam: float, n: int) -> float:
    lam = float(lam)
    _check_real("lam", lam)
    if lam <= 0.0:
        raise DomainError(f"pochhammer requires lam > 0, got {lam!r}")
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer requires a non-negative integer n, got {n!r}")
    if n == 0:
        return 0.0
    return log_gamma(lam + n) - log_gamma(lam)


def pochhammer(lam: float, n: int) -> float:
    """Rising factorial (lam)_n = lam (lam+1) ... (lam+n-1), with (lam)_0 = 1."""
    lam = float(lam)
    _check_real("lam", lam)
    if lam <= 0.0:
        raise DomainError(f"pochhammer requires lam > 0, got {lam!r}")
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer requires a non-negative integer n, got {n!r}")
    n = int(n)
    if n <= _POCH_DIRECT_MAX:
        prod = 1.0
        for k in range(n):
            prod *= lam + k
            if prod == math.inf:
                break
        if math.isfinite(prod):
            return prod
    return math.exp(log_gamma(lam + n) - log_gamma(lam))


def _xlogx(x):
    return 0.0 if x == 0.0 else x * math.log(x)


def lambda_envelope(x: float, y: float) -> float:
    """sup over t in (0,1) of t^x (1-t)^y, i.e. x^x y^y / (x+y)^(x+y), with 0^0 = 1."""
    x, y = float(x), float(y)
    _check_real("x", x)
    _check_real("y", y)
    if x < 0.0 or y < 0.0:
        raise DomainError(f"lambda_envelope requires x, y >= 0, got ({x!r}, {y!r})")
    return math.exp(_xlogx(x) + _xlogx(y) - _xlogx(x + y))


def theta_envelope(b: float, c: float, alpha: float, beta_: float, p: float) -> float:
    """lambda_{b,c-b} * lambda_{alpha-1,beta-alpha-1} / (4 p B(alpha, beta-alpha))."""
    for name, v in (("b", b), ("c", c), ("alpha", alpha), ("beta", beta_), ("p", p)):
        _check_real(name, float(v))
    if not 0.0 < b < c:
        raise DomainError(f"theta_envelope requires 0 < b < c, got b={b!r}, c={c!r}")
    if alpha < 1.0 or beta_ < alpha + 1.0:
        raise DomainError("theta_envelope requires alpha >= 1 and beta >= alpha + 1")
    if p <= 0.0:
        raise DomainError(f"theta_envelope requires p > 0, got {p!r}")
    num = lambda_envelope(b, c - b) * lambda_envelope(alpha - 1.0, beta_ - alpha - 1.0)
    return num / (4.0 * p * beta(alpha, beta_ - alpha))
