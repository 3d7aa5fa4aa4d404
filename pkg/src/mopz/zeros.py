"""Real zeros of the multiple orthogonal polynomials, interlacing, and the f-function."""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp, mpf

from .numeric import DomainError, NumericalError, guarded, to_real, tolerance
from .polynomial import Family, Poly, _horner, eval_with_derivative

MAX_DEPTH = 40


class IsolationError(NumericalError):
    """The expected number of zeros could not be separated."""


@dataclass(frozen=True)
class ZeroSet:
    negative: tuple
    positive: tuple
    refined_to: mpf

    @property
    def all(self) -> tuple:
        return self.negative + self.positive

    def __len__(self) -> int:
        return len(self.negative) + len(self.positive)


@dataclass(frozen=True)
class InterlacingVerdict:
    holds: bool
    pattern: str | None
    first_violation: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cauchy_bound(coeffs: Sequence[mpf]) -> mpf:
    """1 + max |c_i / c_lead|: every root lies strictly inside this radius."""
    lead = coeffs[-1]
    return 1 + max((abs(c / lead) for c in coeffs[:-1]), default=mpf(0))


def _taylor_at(coeffs, m):
    """Coefficients of P(m + t) in powers of t (repeated synthetic division)."""
    c = list(coeffs)
    d = len(c) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            c[j] += m * c[j + 1]
    return c


def _excluded(coeffs, u, v) -> bool:
    """True if P provably has no zero in [u, v]."""
    m = (u + v) / 2
    r = (v - u) / 2
    t = _taylor_at(coeffs, m)
    tail = mpf(0)
    rk = r
    for c in t[1:]:
        tail += abs(c) * rk
        rk *= r
    return abs(t[0]) > tail


def _float_seeds(coeffs, lo, hi):
    try:
        fc = [float(c) for c in reversed(coeffs)]
    except (OverflowError, ValueError):
        return None
    if not all(np.isfinite(fc)):
        return None
    roots = np.roots(fc)
    flo, fhi = float(lo), float(hi)
    out = sorted(r.real for r in roots if abs(r.imag) <= 1e-7 * max(1.0, abs(r.real)) and flo < r.real < fhi)
    return out


def _brackets_from_seeds(coeffs, lo, hi, count, plo, phi):
    seeds = _float_seeds(coeffs, lo, hi)
    if seeds is None or len(seeds) != count:
        return None
    pts = [lo]
    for s0, s1 in itertools.pairwise(seeds):
        mid = mpf((s0 + s1) / 2)
        if not pts[-1] < mid < hi:
            return None
        pts.append(mid)
    pts.append(hi)
    vals = [plo] + [_horner(coeffs, t) for t in pts[1:-1]] + [phi]
    brackets = []
    for i in range(count):
        if _sign(vals[i]) * _sign(vals[i + 1]) >= 0:
            return None
        brackets.append((pts[i], pts[i + 1], vals[i], mpf(seeds[i])))
    return brackets


def _brackets_dyadic(coeffs, lo, hi, count, plo, phi):
    """Refine a dyadic grid, discarding provably root-free cells, until
    ``count`` sign changes (plus exact grid hits) have been separated."""
    cells = [(lo, hi, plo, phi)]
    exact = []
    for depth in range(MAX_DEPTH + 1):
        live = []
        brackets = []
        for u, v, pu, pv in cells:
            if _sign(pu) * _sign(pv) < 0:
                brackets.append((u, v, pu, pv))
                live.append((u, v, pu, pv))
            elif not _excluded(coeffs, u, v):
                live.append((u, v, pu, pv))
        found = len(brackets) + len(exact)
        if found == count:
            return [(u, v, pu, pv, None) for u, v, pu, pv in brackets], exact
        if found > count:
            raise IsolationError(f"found {found} sign changes in ({lo}, {hi}) but expected {count}")
        cells = []
        for u, v, pu, pv in live:
            m = (u + v) / 2
            pm = _horner(coeffs, m)
            if pm == 0:
                exact.append(m)
            cells.append((u, m, pu, pm))
            cells.append((m, v, pm, pv))
    raise IsolationError(
        f"isolated {len(brackets) + len(exact)} of {count} zeros in ({lo}, {hi}) after grid depth {MAX_DEPTH}"
    )


def _refine(coeffs, u, v, pu, seed):
    """Safeguarded Newton inside a sign-change bracket."""
    su = _sign(pu)
    x = seed if seed is not None and u < seed < v else (u + v) / 2
    eps = mpf(2) ** (6 - mp.prec)
    for _ in range(400):
        px, dpx = eval_with_derivative(coeffs, x)
        if px == 0:
            return x, mpf(0)
        if _sign(px) == su:
            u = x
        else:
            v = x
        step = px / dpx if dpx != 0 else None
        x1 = x - step if step is not None else None
        if x1 is None or not (u < x1 < v):
            x1 = (u + v) / 2
        moved = abs(x1 - x)
        x = x1
        if moved <= eps * max(abs(x), eps) or v - u <= eps * max(abs(u), abs(v)):
            px, dpx = eval_with_derivative(coeffs, x)
            return x, abs(px / dpx) if dpx else mpf(0)
    raise NumericalError(f"Newton refinement stalled in [{u}, {v}]")


def real_zeros(poly: Poly, lo, hi, count: int) -> tuple[list, mpf]:
    """The ``count`` simple zeros of ``poly`` in the open interval (lo, hi).

    Infinite endpoints are replaced by the Cauchy root bound.  Returns the
    sorted zeros and the largest final Newton correction |P/P'|.
    """
    if count == 0:
        return [], mpf(0)
    with guarded(poly.guard):
        coeffs = poly.coeffs
        lo = -cauchy_bound(coeffs) if lo is None or lo == -mpmath.inf else mpf(lo)
        hi = cauchy_bound(coeffs) if hi is None or hi == mpmath.inf else mpf(hi)
        plo = _horner(coeffs, lo)
        phi = _horner(coeffs, hi)
        brackets = _brackets_from_seeds(coeffs, lo, hi, count, plo, phi)
        exact = []
        if brackets is None:
            raw, exact = _brackets_dyadic(coeffs, lo, hi, count, plo, phi)
            brackets = [(u, v, pu, None) for u, v, pu, pv, _ in raw]
        zs = list(exact)
        worst = mpf(0)
        for u, v, pu, seed in brackets:
            z, res = _refine(coeffs, u, v, pu, seed)
            zs.append(z)
            worst = max(worst, res)
        zs.sort()
    sep = tolerance().zero_cluster
    for z0, z1 in itertools.pairwise(zs):
        if z1 - z0 <= sep:
            raise IsolationError(f"zeros {z0} and {z1} are closer than {sep}")
    return zs, worst


def _default_layout(poly: Poly):
    n = poly.n
    if poly.family is Family.ANGELESCO_JACOBI:
        return (n, n), (poly.params.a, mpf(1))
    if poly.family is Family.JACOBI_LAGUERRE:
        return (n, n), (poly.params.a, None)
    if poly.family is Family.LAGUERRE_HERMITE:
        return (n, n), (None, None)
    raise ValueError(f"no default zero layout for family {poly.family}")


def find_zeros(poly: Poly, expected=None, bounds=None) -> ZeroSet:
    """Zeros of a diagonal multiple orthogonal polynomial, split at the origin.

    ``expected`` is (count in (lo, 0), count in (0, hi)); ``bounds`` is
    (lo, hi) where ``None`` means unbounded.  Both default from the family.
    """
    d_expected, d_bounds = (None, None)
    if expected is None or bounds is None:
        d_expected, d_bounds = _default_layout(poly)
    expected = expected or d_expected
    bounds = bounds or d_bounds
    n_neg, n_pos = expected
    lo, hi = bounds
    neg, r1 = real_zeros(poly, lo, mpf(0), n_neg)
    pos, r2 = real_zeros(poly, mpf(0), hi, n_pos)
    return ZeroSet(tuple(neg), tuple(pos), max(r1, r2))


# -- interlacing ----------------------------------------------------------------------


def _check_sorted(zs, name):
    for z0, z1 in itertools.pairwise(zs):
        if z0 > z1:
            raise ValueError(f"{name} zeros are not sorted")


def _inside(zs, interval):
    if interval is None:
        return list(zs)
    lo, hi = interval
    lo = -mpmath.inf if lo is None else lo
    hi = mpmath.inf if hi is None else hi
    return [z for z in zs if lo < z < hi]


def check_interlacing(q_zeros, p_zeros, interval=None) -> InterlacingVerdict:
    """Whether q interlaces p (written p < q) on ``interval``.

    Zeros outside the open interval are ignored; ``None`` means the real line.
    The alternation p_1 < q_1 < p_2 < ... must be strict, with q having as
    many zeros as p (``same_count``) or one fewer (``count_minus_one``).
    """
    _check_sorted(list(q_zeros), "q")
    _check_sorted(list(p_zeros), "p")
    p = _inside(p_zeros, interval)
    q = _inside(q_zeros, interval)
    k, j = len(p), len(q)
    if j == k:
        pattern = "same_count"
    elif j == k - 1:
        pattern = "count_minus_one"
    else:
        return InterlacingVerdict(False, None, ("count", k, j))
    chain = []
    for i in range(k):
        chain.append(p[i])
        if i < j:
            chain.append(q[i])
    for i in range(len(chain) - 1):
        if not chain[i] < chain[i + 1]:
            return InterlacingVerdict(False, pattern, (i, chain[i], chain[i + 1]))
    return InterlacingVerdict(True, pattern, None)


def with_extra_roots(zs, extra) -> list:
    """Zero list of (prod (x - r)) * P given the zeros of P."""
    return sorted(list(zs) + [to_real(r) for r in extra])


# -- f-function -------------------------------------------------------------------------


def _f_terms(x, p, inner):
    x = to_real(x)
    for pole in (p.a, mpf(0), mpf(1)):
        if x == pole:
            raise DomainError(f"x={x} is a pole of the f-function")
    terms = []
    for y in inner:
        if x == y:
            raise DomainError(f"x={x} coincides with an inner zero")
        terms.append(1 / (x - y))
    terms.append((p.beta + 1) / (x - p.a))
    terms.append((p.gamma + 1) / x)
    terms.append(-(p.alpha + 1) / (1 - x))
    return terms


def f_function(x, p, inner_zeros) -> mpf:
    """sum_j 1/(x - y_j) + (beta+1)/(x-a) + (gamma+1)/x - (alpha+1)/(1-x).

    ``inner_zeros`` are the zeros y_j of P_{n-1}^{(alpha+1,beta+1,gamma+1)}
    (a ZeroSet or a plain sequence); ``p`` holds the unshifted parameters.
    """
    inner = inner_zeros.all if isinstance(inner_zeros, ZeroSet) else inner_zeros
    return mpmath.fsum(_f_terms(x, p, inner))


def f_function_scale(x, p, inner_zeros) -> mpf:
    """Sum of the absolute values of the f-function terms at x."""
    inner = inner_zeros.all if isinstance(inner_zeros, ZeroSet) else inner_zeros
    return mpmath.fsum(abs(t) for t in _f_terms(x, p, inner))
