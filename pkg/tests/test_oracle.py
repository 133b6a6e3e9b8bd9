import math

import numpy as np
import pytest

from hypergruss import oracle
from hypergruss.oracle import (
    GOLDEN_CASES,
    mint,
    oracle_gruss,
    oracle_quad,
    oracle_series,
    parse_golden_line,
    read_goldens,
    verify,
)

SMALL_CASES = (
    ("2F1", {"a": 1, "b": 1, "c": 2}, 0.5, 20_000),
    ("1F1_int", {"b": 1, "c": 2}, 1.0, 200_000),
    ("genbeta", {"x": 1, "y": 1, "alpha": 1, "beta": 2, "p": 0.5}, 0.0, 200_000),
)


def test_series_examples():
    assert oracle_series("2F1", {"a": 1.5, "b": 2, "c": 3}, 0.0).value == 1.0
    r = oracle_series("1F1", {"b": 1, "c": 2}, 1.0)
    assert r.value == pytest.approx(math.expm1(1.0), rel=1e-15)
    assert r.resolution == oracle.DEFAULT_TERMS
    assert oracle_series("2F1", {"a": 1, "b": 1, "c": 2}, 0.5).value == pytest.approx(2 * math.log(2), rel=1e-15)


def test_series_generalized_p0_matches_classical():
    # c - b = 2 keeps the integrand smooth enough for the midpoint rule
    ps = {"a": 0.7, "b": 1.0, "c": 3.0, "alpha": 1.0, "beta": 2.0, "p": 0.0}
    g = oracle_series("GGHF", ps, 0.4, n_terms=60, n_nodes=1_000_000)
    c = oracle_series("2F1", ps, 0.4)
    assert g.value == pytest.approx(c.value, rel=1e-10)
    g = oracle_series("GCHF", ps, 1.2, n_terms=40, n_nodes=1_000_000)
    c = oracle_series("1F1", ps, 1.2)
    assert g.value == pytest.approx(c.value, rel=1e-10)


def test_series_overflow():
    with pytest.raises(OverflowError):
        oracle_series("1F1", {"b": 1, "c": 1}, 800.0, n_terms=2000)


def test_unknown_kinds():
    with pytest.raises(ValueError):
        oracle_series("3F2", {}, 0.1)
    with pytest.raises(ValueError):
        oracle_quad("genbeta2", {}, 0.1)


def test_quad_examples():
    gb = oracle_quad("genbeta", {"x": 2, "y": 3, "alpha": 1, "beta": 2, "p": 0}, n_nodes=100_000)
    assert gb.value == pytest.approx(1 / 12, rel=1e-9)
    assert oracle_quad("1F1_int", {"b": 1, "c": 2}, 1.0, n_nodes=100_000).value == pytest.approx(math.e - 1, rel=1e-9)
    assert oracle_quad("2F1_int", {"a": 1, "b": 1, "c": 2}, 0.5, n_nodes=100_000).value == pytest.approx(2 * math.log(2), rel=1e-9)


def test_quad_non_finite_node():
    with pytest.raises(ArithmeticError):
        oracle_quad("genbeta", {"x": -400, "y": 1, "alpha": 1, "beta": 2, "p": 0}, n_nodes=1000)


def test_quad_kernel_branches_agree():
    # nodes on both sides of the w = 30 switch between Horner and mpmath
    import mpmath

    w = np.array([29.9, 30.1])
    vals = oracle._kernel_values(1.3, 2.7, w.copy())
    for wi, v in zip(w, vals):
        assert v == pytest.approx(float(mpmath.hyp1f1(1.3, 2.7, -wi)), rel=1e-13)


def test_gruss_oracle():
    lhs, rhs = oracle_gruss([2, 2, 2], [1, 5, 3], [1, 2, 3])
    assert lhs == 0.0
    lhs, rhs = oracle_gruss([0, 1], [0, 1], [1, 1])
    assert lhs == rhs == 1.0
    rng = np.random.default_rng(4)
    x, y, m = rng.uniform(size=(3, 100))
    lhs, rhs = oracle_gruss(x, y, m)
    assert lhs <= rhs
    with pytest.raises(ValueError):
        oracle_gruss([1, 2], [1], [1, 1])
    with pytest.raises(ValueError):
        oracle_gruss([1, 2], [1, 2], [1, -1])


def test_golden_line_round_trip():
    rec = oracle.GoldenRecord("GGHF", {"a": 1, "b": 0.5, "n_terms": 60}, 0.3, 10_000_000, 0.1 + 0.2, 1e-14)
    back = parse_golden_line(rec.line())
    assert back == rec
    assert "0.30000000000000004" in rec.line()
    with pytest.raises(ValueError):
        parse_golden_line("2F1 | a=1 | 0.5")


def test_shipped_golden_file_covers_cases():
    recs = read_goldens()
    assert [(r.kind, r.z, r.resolution) for r in recs] == [(k, float(z), n) for k, _, z, n in GOLDEN_CASES]
    for r in recs:
        assert r.bound > 0 and math.isfinite(r.value)


def test_mint_and_verify_small(tmp_path):
    path = tmp_path / "g.txt"
    mint(path, SMALL_CASES)
    assert all(o.ok for o in verify(path))
    lines = path.read_text().splitlines()
    rec = parse_golden_line(lines[2])
    lines[2] = rec.line().replace(oracle._num(rec.value), oracle._num(rec.value + 1e-6))
    path.write_text("\n".join(lines) + "\n")
    outcomes = verify(path)
    assert [o.ok for o in outcomes] == [True, False, True]


def test_resolution_stability_small(tmp_path):
    path = tmp_path / "g.txt"
    mint(path, SMALL_CASES)
    assert all(o.ok for o in verify(path, resolution_scale=2))


def test_golden_lookup_missing():
    with pytest.raises(KeyError):
        oracle.golden_lookup("2F1", 0.123, a=1)
