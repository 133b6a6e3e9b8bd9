import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypergruss.errors import DomainError
from hypergruss.scalar_core import (
    beta,
    lambda_envelope,
    log_beta,
    log_gamma,
    log_pochhammer,
    pochhammer,
    theta_envelope,
)

pos = st.floats(min_value=1e-3, max_value=50.0)


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)


def test_log_gamma_relative_accuracy_over_range():
    xs = np.concatenate([np.geomspace(1e-6, 1e6, 400), np.linspace(0.4, 16.0, 400)])
    worst = 0.0
    with mpmath.workdps(30):
        for x in xs:
            ref = mpmath.loggamma(mpmath.mpf(float(x)))
            got = log_gamma(float(x))
            if ref == 0:
                assert abs(got) < 1e-15
                continue
            worst = max(worst, float(abs((got - ref) / ref)))
    assert worst <= 1e-13


def test_log_gamma_near_roots_absolute():
    # relative error is meaningless at the zeros x = 1, 2; check absolute error there
    for x in (0.999999, 1.000001, 1.999999, 2.000001):
        assert abs(log_gamma(x) - math.lgamma(x)) < 1e-15


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_log_gamma_domain(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)


def test_beta_examples():
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert beta(2, 3) == pytest.approx(1.0 / 12.0, rel=1e-14)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("x,y", [(0, 1), (1, -2), (math.nan, 1)])
def test_beta_domain(x, y):
    with pytest.raises(DomainError):
        beta(x, y)


def test_beta_large_arguments_do_not_overflow():
    # Gamma(1000) overflows a double; the log route keeps the ratio finite
    v = log_beta(500.0, 600.0)
    assert math.isfinite(v)
    assert v == pytest.approx(math.lgamma(500) + math.lgamma(600) - math.lgamma(1100), rel=1e-13)


@given(pos, pos)
def test_beta_symmetry(x, y):
    assert beta(x, y) == pytest.approx(beta(y, x), rel=1e-14)


@given(st.floats(min_value=0.05, max_value=20.0), st.floats(min_value=0.05, max_value=20.0))
def test_gamma_beta_consistency(x, y):
    lhs = math.log(beta(x, y)) + log_gamma(x + y)
    rhs = log_gamma(x) + log_gamma(y)
    assert math.exp(lhs - rhs) == pytest.approx(1.0, rel=1e-12)


def test_pochhammer_examples():
    assert pochhammer(3, 4) == 360.0
    assert pochhammer(2.7, 0) == 1.0
    for n in range(15):
        assert pochhammer(1, n) == math.factorial(n)


def test_pochhammer_large_n_log_domain():
    # (1)_170 = 170! is near the top of the double range
    assert pochhammer(1.0, 170) == pytest.approx(math.factorial(170), rel=1e-12)
    assert log_pochhammer(1.5, 10_000) == pytest.approx(
        math.lgamma(10_001.5) - math.lgamma(1.5), rel=1e-13
    )
    with pytest.raises(OverflowError):
        pochhammer(1.0, 500)


@pytest.mark.parametrize("lam,n", [(0.0, 2), (-1.0, 1), (1.0, -1), (1.0, 2.5)])
def test_pochhammer_domain(lam, n):
    with pytest.raises(DomainError):
        pochhammer(lam, n)


@given(st.floats(min_value=1e-3, max_value=30.0), st.integers(min_value=0, max_value=120))
def test_pochhammer_recurrence(lam, n):
    assert pochhammer(lam, n + 1) == pytest.approx(pochhammer(lam, n) * (lam + n), rel=1e-13)


def test_lambda_examples():
    assert lambda_envelope(1, 1) == pytest.approx(0.25, rel=1e-15)
    assert lambda_envelope(0, 0) == 1.0
    assert lambda_envelope(0, 3.5) == 1.0
    assert lambda_envelope(2, 1) == pytest.approx(4.0 / 27.0, rel=1e-14)


def test_lambda_against_dense_grid():
    t = np.linspace(1e-6, 1 - 1e-6, 2_000_001)
    for x, y in [(2, 1), (0.3, 4.0), (5, 5)]:
        grid_max = float(np.max(t**x * (1 - t) ** y))
        assert lambda_envelope(x, y) == pytest.approx(grid_max, rel=1e-9)


def test_lambda_domain():
    with pytest.raises(DomainError):
        lambda_envelope(-0.1, 1)


def test_envelope_property_random():
    rng = np.random.default_rng(7)
    xs = rng.uniform(0, 5, 1000)
    ys = rng.uniform(0, 5, 1000)
    ts = rng.uniform(0, 1, 1000)
    xs[xs == 0] = 1e-3
    ys[ys == 0] = 1e-3
    for x, y in zip(xs, ys):
        lam = lambda_envelope(x, y)
        assert 0 < lam <= 1
        assert np.all(ts**x * (1 - ts) ** y <= lam + 1e-12)


def test_theta_examples():
    assert theta_envelope(1, 2, 1, 2, 1) == pytest.approx(1 / 16, rel=1e-14)
    assert theta_envelope(1, 2, 1, 2, 2) == pytest.approx(1 / 32, rel=1e-14)
    expected = lambda_envelope(2, 1) * lambda_envelope(1, 1) / (4 * beta(2, 2))
    assert theta_envelope(2, 3, 2, 4, 1) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "args",
    [(1, 2, 1, 2, 0), (2, 1, 1, 2, 1), (1, 2, 0.5, 2, 1), (1, 2, 1, 1.5, 1)],
)
def test_theta_domain(args):
    with pytest.raises(DomainError):
        theta_envelope(*args)
