import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from mopz.angelesco import ParamSet, build_aj
from mopz.numeric import DomainError, tolerance
from mopz.polynomial import Poly, eval_poly
from mopz.zeros import (
    check_interlacing,
    f_function,
    find_zeros,
    real_zeros,
    with_extra_roots,
)

LEGENDRE = ParamSet(0, 0, 0, -1)
FIG = ParamSet(-0.5, 1, 0, -2)


def test_legendre_zeros():
    zs = find_zeros(build_aj(1, LEGENDRE))
    r = 1 / mpmath.sqrt(3)
    assert abs(zs.negative[0] + r) < mpf("1e-30")
    assert abs(zs.positive[0] - r) < mpf("1e-30")


def test_figure_counts():
    zs = find_zeros(build_aj(5, FIG))
    assert len(zs.negative) == 5 and all(-2 < z < 0 for z in zs.negative)
    assert len(zs.positive) == 5 and all(0 < z < 1 for z in zs.positive)


def test_constant_has_no_zeros():
    zs = find_zeros(build_aj(0, LEGENDRE))
    assert zs.all == () and len(zs) == 0


def test_real_zeros_generic():
    poly = Poly(tuple(map(mpf, (6, -5, 1))))
    zs, _ = real_zeros(poly, 0, 10, 2)
    assert max(abs(z - t) for z, t in zip(zs, (2, 3))) < mpf(2) ** -170


@given(
    st.integers(1, 6),
    st.floats(-0.9, 5),
    st.floats(-0.9, 5),
    st.floats(-0.9, 5),
    st.floats(-5, -0.2),
)
def test_zeros_are_simple_roots_in_place(n, al, be, ga, a):
    p = ParamSet(al, be, ga, a)
    P = build_aj(n, p)
    zs = find_zeros(P)
    assert len(zs.negative) == n and len(zs.positive) == n
    assert all(p.a < z < 0 for z in zs.negative) and all(0 < z < 1 for z in zs.positive)
    assert all(z0 < z1 for z0, z1 in zip(zs.all, zs.all[1:]))
    scale = max(abs(c) for c in P.coeffs)
    for z in zs.all:
        assert abs(eval_poly(P, z)) < mpf(2) ** -120 * scale


def test_interlacing_examples():
    v = check_interlacing([2, 4], [1, 3])
    assert v.holds and v.pattern == "same_count"
    v = check_interlacing([2], [1, 3])
    assert v.holds and v.pattern == "count_minus_one"
    v = check_interlacing([1.5, 1.6], [1, 2])
    assert not v.holds and v.first_violation[0] == 2


def test_interlacing_count_mismatch_and_interval():
    assert not check_interlacing([1, 2, 3], [0.5])
    assert check_interlacing([-5, 2], [1, 3], (0, 10)).pattern == "count_minus_one"


def test_extra_roots_sorted():
    assert with_extra_roots([mpf("0.5"), mpf(-1)], [0]) == [-1, 0, mpf("0.5")]


def test_f_function_examples():
    r = 1 / mpmath.sqrt(3)
    assert abs(f_function(r, LEGENDRE, [])) < tolerance().rel_identity
    assert abs(f_function(mpf(1) / 2, LEGENDRE, []) - mpf(2) / 3) < tolerance().rel_identity
    with pytest.raises(DomainError):
        f_function(0, LEGENDRE, [])
