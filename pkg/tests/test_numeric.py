import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from mopz.numeric import (
    DomainError,
    Tolerance,
    default_precision,
    digamma,
    gen_binomial,
    guarded,
    log_gamma,
    precision,
    session_precision,
    to_real,
    tolerance,
)


def test_log_gamma_at_one_and_two():
    assert log_gamma(1) == 0
    assert log_gamma(2) == 0


def test_log_gamma_half_is_log_sqrt_pi():
    assert abs(log_gamma(mpf(1) / 2) - mpmath.log(mpmath.sqrt(mp.pi))) < mpf(2) ** -180
    assert mpmath.nstr(log_gamma(0.5), 10) == "0.5723649429"


@given(st.floats(min_value=0.01, max_value=300))
def test_log_gamma_matches_mpmath(x):
    ref = mpmath.loggamma(x)
    assert abs(log_gamma(x) - ref) <= tolerance().rel_identity * max(1, abs(ref))


@given(st.floats(min_value=0.05, max_value=200))
def test_digamma_matches_mpmath(x):
    ref = mpmath.digamma(x)
    assert abs(digamma(x) - ref) <= tolerance().rel_identity * max(1, abs(ref))


def test_log_gamma_rejects_poles():
    with pytest.raises(DomainError):
        log_gamma(0)
    with pytest.raises(DomainError):
        log_gamma(-3)


@pytest.mark.parametrize("a,k,expected", [(3, 1, 3), (mpf("-0.7"), 0, 1), (7, 0, 1), (5.5, 2, 12.375)])
def test_gen_binomial_examples(a, k, expected):
    assert gen_binomial(a, k) == expected


@pytest.mark.parametrize("n", range(31))
def test_gen_binomial_exact_on_integers(n):
    from math import comb

    for k in range(n + 1):
        assert gen_binomial(n, k) == comb(n, k)


@given(st.floats(min_value=0.01, max_value=40), st.integers(min_value=1, max_value=25))
def test_pascal_rule(offset, k):
    a = mpf(offset) + k - 1
    lhs = gen_binomial(mpf(a) + 1, k)
    rhs = gen_binomial(a, k) + gen_binomial(a, k - 1)
    assert abs(lhs - rhs) <= tolerance().rel_identity * max(1, abs(lhs))


def test_gen_binomial_negative_k():
    with pytest.raises(DomainError):
        gen_binomial(3, -1)


def test_guarded_does_not_compound():
    assert mp.prec == 192
    with guarded(32):
        assert mp.prec == 224
        assert session_precision() == 192
        with guarded(32):
            assert mp.prec == 224
    assert mp.prec == 192


def test_tolerance_follows_precision():
    t = tolerance()
    assert t.rel_identity == mpf(2) ** -182
    assert t.zero_cluster == mpf(2) ** -172
    with precision(256):
        assert tolerance().rel_identity == mpf(2) ** -246
    with pytest.raises(DomainError):
        Tolerance(mpf(0), mpf("0.5"))


def test_precision_env(monkeypatch):
    monkeypatch.delenv("MOPZ_PREC", raising=False)
    assert default_precision() == 192
    monkeypatch.setenv("MOPZ_PREC", "320")
    assert default_precision() == 320
    monkeypatch.setenv("MOPZ_PREC", "20")
    with pytest.raises(DomainError):
        default_precision()


def test_to_real_rejects_non_finite():
    with pytest.raises(DomainError):
        to_real("nan")
    with pytest.raises(DomainError):
        to_real(mpmath.inf)
