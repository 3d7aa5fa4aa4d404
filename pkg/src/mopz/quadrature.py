"""Double-exponential quadrature for integrands with algebraic endpoint singularities.

The tanh-sinh rule hands the integrand the distances to both endpoints
computed directly from the node formula, so factors like ``(x - a)**beta``
keep full relative accuracy even when ``x - a`` is far below ``ulp(a)``.
Integrands return a sequence of values so several moments share one set of
weight evaluations.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .numeric import NumericalError

MIN_LEVEL = 3
MAX_LEVEL = 11
_T_CAP = 12.0


@dataclass(frozen=True)
class QuadResult:
    values: tuple
    abs_values: tuple
    level: int
    error: tuple


@lru_cache(maxsize=400_000)
def _tanh_sinh_node(prec: int, m: int, k: int):
    """(u_near, u_far, g) at t = k / 2**m on the unit half-length interval.

    u_near is the distance to the nearer endpoint, u_far to the other one,
    g = (pi/2) cosh t sech^2((pi/2) sinh t).
    """
    with mp.workprec(prec):
        t = mpf(k) / 2**m
        s = mp.pi / 2 * mpmath.sinh(t)
        e = mpmath.exp(-2 * s)
        one_e = 1 + e
        u_near = 2 * e / one_e
        u_far = 2 / one_e
        g = mp.pi / 2 * mpmath.cosh(t) * 4 * e / (one_e * one_e)
        return u_near, u_far, g


@lru_cache(maxsize=400_000)
def _exp_exp_node(prec: int, m: int, k: int):
    """(x, g) for x = exp(t - exp(-t)), g = dx/dt at t = k / 2**m."""
    with mp.workprec(prec):
        t = mpf(k) / 2**m
        e = mpmath.exp(-t)
        x = mpmath.exp(t - e)
        return x, x * (1 + e)


def _accumulate(sums, abs_sums, vals, w):
    for i, v in enumerate(vals):
        tv = v * w
        sums[i] += tv
        abs_sums[i] += abs(tv)


def _small(vals, w, abs_sums, eps) -> bool:
    return all(abs(v * w) <= eps * (s if s else 1) for v, s in zip(vals, abs_sums))


def _de_rule(node_terms, width: int, tol, max_level: int, what: str) -> QuadResult:
    """Generic level-doubling driver.

    ``node_terms(m, k)`` returns a list of (values, weight) pairs for the nodes
    at t = +-k/2**m (one or two pairs).
    """
    eps = tol * mpf(2) ** -8
    sums = [mpf(0)] * width
    abs_sums = [mpf(0)] * width

    def add(m, k):
        small = True
        for vals, w in node_terms(m, k):
            _accumulate(sums, abs_sums, vals, w)
            small = small and _small(vals, w, abs_sums, eps)
        return small

    # Level 0 (h = 1): march outward until the tail is negligible.
    add(0, 0)
    quiet = 0
    k = 1
    while k <= _T_CAP:
        quiet = quiet + 1 if add(0, k) else 0
        if quiet >= 2:
            break
        k += 1
    kmax0 = k
    # Refinement needs finer resolution of where the tail ends.
    prev = [s for s in sums]
    level = 0
    error = [mpf("inf")] * width
    while level < max_level:
        level += 1
        h = mpf(2) ** -level
        # new nodes at odd multiples of h up to kmax0 (in units of h=1)
        limit = kmax0 * 2**level
        for kk in range(1, limit + 1, 2):
            add(level, kk)
        cur = [s * h for s in sums]
        error = [abs(c - p) for c, p in zip(cur, prev)]
        abs_cur = [s * h for s in abs_sums]
        if level >= MIN_LEVEL and all(e <= tol * (a if a else 1) for e, a in zip(error, abs_cur)):
            return QuadResult(tuple(cur), tuple(abs_cur), level, tuple(error))
        prev = cur
    raise NumericalError(
        f"{what}: no convergence after level {max_level}; "
        f"last level differences {[mpmath.nstr(e, 5) for e in error]}, "
        f"abs integrals {[mpmath.nstr(s * 2**-level, 5) for s in abs_sums]}"
    )


def tanh_sinh(
    f: Callable[[mpf, mpf, mpf], Sequence[mpf]],
    lo,
    hi,
    tol,
    width: int,
    max_level: int = MAX_LEVEL,
) -> QuadResult:
    """Integrate ``f(x, x - lo, hi - x)`` over ``[lo, hi]`` componentwise.

    Convergence is declared when successive levels differ by at most ``tol``
    times the integral of ``|f|`` in every component.
    """
    lo = mpf(lo)
    hi = mpf(hi)
    half = (hi - lo) / 2
    center = lo + half
    prec = mp.prec

    def node_terms(m, k):
        if k == 0:
            w = half * mp.pi / 2
            return [(f(center, half, half), w)]
        u_near, u_far, g = _tanh_sinh_node(prec, m, k)
        d_near = half * u_near
        d_far = half * u_far
        w = half * g
        return [
            (f(hi - d_near, d_far, d_near), w),
            (f(lo + d_near, d_near, d_far), w),
        ]

    return _de_rule(node_terms, width, tol, max_level, f"tanh-sinh on [{lo}, {hi}]")


def exp_exp(
    f: Callable[[mpf], Sequence[mpf]],
    tol,
    width: int,
    max_level: int = MAX_LEVEL,
) -> QuadResult:
    """Integrate ``f(x)`` over ``(0, inf)`` for integrands with exponential decay.

    ``x`` is produced directly from the node formula, so it is also the exact
    distance to the origin.  The transformation x = exp(t - e^{-t}) matches
    e^{-x}-type tails.
    """
    prec = mp.prec

    def node_terms(m, k):
        x, g = _exp_exp_node(prec, m, k)
        if k == 0:
            return [(f(x), g)]
        xn, gn = _exp_exp_node(prec, m, -k)
        return [(f(x), g), (f(xn), gn)]

    return _de_rule(node_terms, width, tol, max_level, "exp-exp on (0, inf)")
