"""Extended-precision scalars, log-Gamma, generalized binomials and tolerances.

All arithmetic runs on :class:`mpmath.mpf` at the *session* precision, which is
whatever ``mpmath.mp.prec`` is when a public function is entered.  Routines that
suffer cancellation temporarily add guard bits through :func:`guarded`; nested
guards do not compound, and :func:`session_precision` keeps reporting the outer
precision so tolerances stay tied to what the caller asked for.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import mpmath
from mpmath import mp, mpf

DEFAULT_PRECISION = 192
MIN_PRECISION = 96

Real = mpf

_session_prec: ContextVar[int | None] = ContextVar("mopz_session_prec", default=None)


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to reach the requested accuracy."""


def default_precision() -> int:
    """Precision in bits from ``MOPZ_PREC`` if set, otherwise 192."""
    raw = os.environ.get("MOPZ_PREC")
    if not raw:
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits < MIN_PRECISION:
        raise DomainError(f"MOPZ_PREC={bits} is below the minimum of {MIN_PRECISION} bits")
    return bits


def set_precision(bits: int) -> None:
    if bits < MIN_PRECISION:
        raise DomainError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    mp.prec = int(bits)


@contextmanager
def precision(bits: int):
    """Run a block at a fixed session precision."""
    if bits < MIN_PRECISION:
        raise DomainError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    with mp.workprec(int(bits)):
        yield


def session_precision() -> int:
    base = _session_prec.get()
    return mp.prec if base is None else base


@contextmanager
def guarded(extra: int):
    """Raise the working precision to ``session + extra`` bits for a block."""
    base = _session_prec.get()
    token = None
    if base is None:
        base = mp.prec
        token = _session_prec.set(base)
    target = base + int(extra)
    try:
        if target > mp.prec:
            with mp.workprec(target):
                yield
        else:
            yield
    finally:
        if token is not None:
            _session_prec.reset(token)


@dataclass(frozen=True)
class Tolerance:
    rel_identity: mpf
    zero_cluster: mpf

    def __post_init__(self):
        for name in ("rel_identity", "zero_cluster"):
            v = getattr(self, name)
            if not (0 < v < 1):
                raise DomainError(f"{name} must lie in (0, 1), got {v}")

    @classmethod
    def for_precision(cls, bits: int) -> Tolerance:
        return cls(mpf(2) ** (10 - bits), mpf(2) ** (20 - bits))


def tolerance() -> Tolerance:
    """Tolerance policy derived from the current session precision."""
    return Tolerance.for_precision(session_precision())


def to_real(x) -> mpf:
    """Convert ``x`` to an mpf, rejecting NaN and infinities.

    Strings are parsed at the current precision, so ``"0.1"`` is rounded once
    instead of going through a binary double first.
    """
    if isinstance(x, Fraction):
        v = mpf(x.numerator) / x.denominator
    else:
        v = mpf(x)
    if not mpmath.isfinite(v):
        raise DomainError(f"non-finite value {x!r}")
    return v


def is_integer_value(x) -> bool:
    return mpmath.isint(mpf(x))


# -- log-Gamma -----------------------------------------------------------------


@cache
def _bernoulli_even(m: int) -> tuple[Fraction, ...]:
    """Exact B_2, B_4, ..., B_2m (Akiyama-Tanigawa)."""
    out = []
    a = [Fraction(0)] * (2 * m + 1)
    for i in range(2 * m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if i >= 2 and i % 2 == 0:
            out.append(a[0])
    return tuple(out)


def _stirling_shift(bits: int) -> int:
    # Smallest Stirling term is about exp(-2*pi*x); push x until that is < 2^-bits.
    return max(32, math.ceil(bits * math.log(2) / (2 * math.pi)) + 8)


def _stirling_tail(z: mpf, eps: mpf) -> mpf:
    """Sum_k B_2k / (2k (2k-1) z^(2k-1)) until terms drop below eps."""
    total = mpf(0)
    z2 = z * z
    zp = z
    m = 8
    k = 0
    while True:
        bern = _bernoulli_even(m)
        while k < len(bern):
            b = bern[k]
            two_k = 2 * (k + 1)
            term = mpf(b.numerator) / (b.denominator * two_k * (two_k - 1)) / zp
            total += term
            k += 1
            if abs(term) < eps:
                return total
            zp *= z2
        m *= 2


def log_gamma(x) -> mpf:
    """Natural log of Gamma(x) for real x > 0.

    Shifts the argument up with Gamma(x+1) = x Gamma(x) until the Stirling
    series is accurate to the working precision, then sums the series.
    """
    x = to_real(x)
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    prec = mp.prec
    if mpmath.isint(x) and x <= 256:
        return mpmath.log(math.factorial(int(x) - 1))
    with mp.workprec(prec + 32):
        shift_to = _stirling_shift(prec + 32)
        z = +x
        prod = mpf(1)
        while z < shift_to:
            prod *= z
            z += 1
        eps = mpf(2) ** (-(prec + 40))
        s = (z - mpf(0.5)) * mpmath.log(z) - z + mpmath.log(2 * mp.pi) / 2
        s += _stirling_tail(z, eps)
        s -= mpmath.log(prod)
    return +s


def digamma(x) -> mpf:
    """psi(x) = d/dx log Gamma(x) for x > 0, by the same shift + asymptotic series."""
    x = to_real(x)
    if x <= 0:
        raise DomainError(f"digamma requires x > 0, got {x}")
    prec = mp.prec
    with mp.workprec(prec + 32):
        shift_to = _stirling_shift(prec + 32)
        z = +x
        acc = mpf(0)
        while z < shift_to:
            acc -= 1 / z
            z += 1
        eps = mpf(2) ** (-(prec + 40))
        s = mpmath.log(z) - 1 / (2 * z)
        z2 = z * z
        zp = z2
        for b, k in zip(_bernoulli_even(64), range(1, 65)):
            term = mpf(b.numerator) / (b.denominator * 2 * k) / zp
            s -= term
            if abs(term) < eps:
                break
            zp *= z2
        s += acc
    return +s


def gen_binomial(a, k: int) -> mpf:
    """Gamma(a+1) / (Gamma(a-k+1) k!) evaluated through log-Gamma differences."""
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    k = int(k)
    a = to_real(a)
    if not a > k - 1:
        raise DomainError(f"gen_binomial requires a > k - 1, got a={a}, k={k}")
    if k == 0:
        return mpf(1)
    # log Gamma(a+1) ~ a log a, so its magnitude eats into the relative accuracy.
    extra = 40 + 2 * int(abs(a) + 2).bit_length()
    with mp.workprec(mp.prec + extra):
        v = mpmath.exp(log_gamma(a + 1) - log_gamma(a - k + 1) - log_gamma(k + 1))
    return +v
