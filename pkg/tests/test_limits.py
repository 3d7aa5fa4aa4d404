import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from mopz.limits import (
    LEFT,
    RIGHT,
    JLParams,
    build_jl,
    build_lh,
    check_raising_jl,
    check_raising_lh,
    jl_moments,
    jl_orthogonality,
    lh_moments,
    lh_orthogonality,
    limit_convergence,
    structure_identity_jl,
    structure_identity_lh,
)
from mopz.numeric import DomainError, tolerance
from mopz.polynomial import eval_poly
from mopz.zeros import find_zeros

BASE = JLParams(0, 0, -1)


def close(u, v, tol=None):
    tol = tolerance().rel_identity if tol is None else tol
    return abs(u - v) <= tol * max(1, abs(v))


def test_jl_n1_golden():
    P = build_jl(1, BASE)
    assert all(close(c, t, mpf("1e-40")) for c, t in zip(P.coeffs, (-1, -1, 1)))
    zs = find_zeros(P)
    s5 = mpmath.sqrt(5)
    assert abs(zs.negative[0] - (1 - s5) / 2) < mpf("1e-25")
    assert abs(zs.positive[0] - (1 + s5) / 2) < mpf("1e-25")
    assert -1 < zs.negative[0] < 0


def test_degree_zero():
    assert build_jl(0, BASE).coeffs == (1,)
    assert build_lh(0, 2).coeffs == (1,)


def test_lh_golden():
    assert all(close(c, t) for c, t in zip(build_lh(1, 0).coeffs, (mpf(-1) / 2, 0, 1)))
    assert all(close(c, t) for c, t in zip(build_lh(1, 1).coeffs, (-1, 0, 1)))


@given(st.integers(1, 6), st.floats(-0.9, 6))
def test_lh_odd_coefficients_vanish(n, g):
    c = build_lh(n, g).coeffs
    assert all(c[i] == 0 for i in range(1, len(c), 2))


def _jl_right(k, q):
    b = abs(q.a)
    s = q.gamma + k + 1
    return b ** (s + q.beta) * mpmath.gamma(s) * mpmath.hyperu(s, s + q.beta + 1, b)


def _jl_left(k, q):
    b = abs(q.a)
    s = q.gamma + k + 1
    return (-1) ** k * b ** (s + q.beta) * mpmath.beta(s, q.beta + 1) * mpmath.hyp1f1(s, s + q.beta + 1, b)


@pytest.mark.parametrize("q", [JLParams(0, 0, -1), JLParams("-0.6", "0.3", "-2.5"), JLParams("2.4", "-0.85", "-0.4")])
def test_jl_moments_closed_form(q):
    for interval, oracle in ((LEFT, _jl_left), (RIGHT, _jl_right)):
        table = jl_moments(interval, q, 12)
        for k, m in enumerate(table.m):
            assert close(m, oracle(k, q), mpf(2) ** -170), (interval, k)


def test_jl_moments_exponent_just_above_integer():
    q = JLParams("2.0264635161810274", "2.000083672357262", "-2.3579316878541214")
    for interval, oracle in ((LEFT, _jl_left), (RIGHT, _jl_right)):
        for k, m in enumerate(jl_moments(interval, q, 6).m):
            assert close(m, oracle(k, q), mpf(2) ** -170), (interval, k)


def test_jl_moments_vs_quad():
    q = JLParams("0.5", "-0.5", "-1.5")
    left = jl_moments(LEFT, q, 10).m
    right = jl_moments(RIGHT, q, 10).m
    for k in range(11):
        ql = mpmath.quad(lambda x, k=k: x**k * (x - q.a) ** q.beta * abs(x) ** q.gamma * mpmath.exp(-x), [q.a, 0])
        qr = mpmath.quad(lambda x, k=k: x**k * (x - q.a) ** q.beta * x**q.gamma * mpmath.exp(-x), [0, 1, mpmath.inf])
        assert close(left[k], ql, mpf("1e-25"))
        assert close(right[k], qr, mpf("1e-25"))


def test_lh_moments_closed_form():
    m = lh_moments(RIGHT, 0, 2).m
    sp = mpmath.sqrt(mpmath.pi)
    assert close(m[0], sp / 2) and close(m[1], mpf(1) / 2) and close(m[2], sp / 4)
    m = lh_moments(RIGHT, 1, 2).m
    assert close(m[0], mpf(1) / 2) and close(m[1], sp / 4) and close(m[2], mpf(1) / 2)


def test_orthogonality():
    assert jl_orthogonality(3, JLParams("0.7", "-0.4", "-1.2")) < tolerance().rel_identity
    assert lh_orthogonality(4, "0.5") < tolerance().rel_identity


def test_lh_raising_by_hand():
    assert check_raising_lh(1, 0, 1) < tolerance().rel_identity
    # the hand value of the left side
    assert close(mpmath.exp(-1) * eval_poly(build_lh(1, 0), 1), mpmath.exp(-1) / 2)


def test_jl_raising_random():
    assert check_raising_jl(2, JLParams("1.3", "0.6", "-0.8"), x="0.7") < tolerance().rel_identity


def test_raising_at_origin_is_domain_error():
    with pytest.raises(DomainError):
        check_raising_jl(2, JLParams(0, "-0.5", -1), x=0)
    with pytest.raises(DomainError):
        check_raising_lh(2, "-0.5", 0)


@pytest.mark.parametrize("kind", ["beta", "gamma"])
def test_jl_structure(kind):
    assert structure_identity_jl(kind, 1, BASE, x="0.42") < tolerance().rel_identity
    q = JLParams("1.1", "0.3", "-2.2")
    assert structure_identity_jl(kind, 3, q, x="-0.2") < tolerance().rel_identity


def test_lh_structure():
    assert structure_identity_lh(1, 0, "0.8") < tolerance().rel_identity
    assert structure_identity_lh(4, "0.5", "1.3") < tolerance().rel_identity


def test_structure_needs_n_at_least_one():
    with pytest.raises(DomainError):
        structure_identity_jl("beta", 0, BASE, x="0.5")
    with pytest.raises(DomainError):
        structure_identity_lh(0, 0, "0.5")


def test_unit_and_half_factors_fail_beyond_n1():
    # a factor of 1 (resp. 1/2) instead of n (resp. n/2) breaks the identities at n = 2
    x = mpf("0.9")
    q = JLParams("0.4", "0.2", "-1.1")
    lhs = eval_poly(build_jl(2, q.shifted(1, 0)), x)
    small = eval_poly(build_jl(1, q.shifted(1, 1)), x)
    assert not close(lhs, eval_poly(build_jl(2, q), x) - x * small, mpf("1e-6"))
    assert close(lhs, eval_poly(build_jl(2, q), x) - 2 * x * small)
    lhs = eval_poly(build_lh(2, 1), x)
    small = eval_poly(build_lh(1, 1), x)
    assert not close(lhs, eval_poly(build_lh(2, 0), x) - small / 2, mpf("1e-6"))


def test_limit_jl_decreasing_with_order():
    t = limit_convergence("jl", 1, BASE, [100, 1000, 10000])
    assert t.decreasing
    assert t.empirical_order >= mpf("0.9")


def test_limit_lh_single_point():
    t = limit_convergence("lh", 1, 0, [10000])
    assert t.rows[0].error < mpf("1e-3")
    with pytest.raises(ValueError):
        _ = t.empirical_order


def test_limit_grid_validation():
    with pytest.raises(ValueError):
        limit_convergence("lh", 1, 0, [1000, 100])
    with pytest.raises(ValueError):
        limit_convergence("lh", 1, 0, [5])
    with pytest.raises(ValueError):
        limit_convergence("xx", 1, 0, [100])
