"""Diagonal Angelesco-Jacobi polynomials P_n^{(alpha,beta,gamma)}(x; a).

Type II multiple orthogonal polynomials of degree 2n for the weight
``(1-x)**alpha * (x-a)**beta * |x|**gamma`` on the two intervals ``[a, 0]``
and ``[0, 1]``, built from the explicit triple-product expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .numeric import (
    DomainError,
    NumericalError,
    gen_binomial,
    guarded,
    is_integer_value,
    to_real,
    tolerance,
)
from .polynomial import (
    DEFAULT_GUARD,
    Family,
    Poly,
    _horner,
    eval_with_derivative,
    linear_power,
    poly_mul,
)
from .quadrature import tanh_sinh

# Conditioning of the explicit expansion beyond this is unquantified.
MAX_N = 12


@dataclass(frozen=True)
class ParamSet:
    alpha: mpf
    beta: mpf
    gamma: mpf
    a: mpf

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "a"):
            object.__setattr__(self, name, to_real(getattr(self, name)))
        for name in ("alpha", "beta", "gamma"):
            if not getattr(self, name) > -1:
                raise DomainError(f"{name} must be > -1, got {getattr(self, name)}")
        if not self.a < 0:
            raise DomainError(f"a must be < 0, got {self.a}")

    def shifted(self, alpha=0, beta=0, gamma=0) -> ParamSet:
        return replace(self, alpha=self.alpha + alpha, beta=self.beta + beta, gamma=self.gamma + gamma)

    def raised(self) -> ParamSet:
        """(alpha+1, beta+1, gamma+1), the parameters of the companion P_{n-1}."""
        return self.shifted(1, 1, 1)

    def with_a(self, a) -> ParamSet:
        return replace(self, a=a)

    def as_strings(self, digits: int = 20) -> dict:
        return {k: mpmath.nstr(getattr(self, k), digits) for k in ("alpha", "beta", "gamma", "a")}


def c_n(n: int, p: ParamSet) -> mpf:
    """Rodrigues normalising constant binom(3n + alpha + beta + gamma, n)."""
    if n == 0:
        return mpf(1)
    return gen_binomial(3 * n + p.alpha + p.beta + p.gamma, n)


def _binomial_row(top: mpf, kmax: int) -> list:
    # binom(top, k) for k = 0..kmax by the product formula; all factors are
    # positive because top > kmax - 1.
    row = [mpf(1)]
    for k in range(kmax):
        row.append(row[-1] * (top - k) / (k + 1))
    return row


def triple_coefficients(n: int, p: ParamSet) -> dict:
    """d^{(n)}_{j,k} for 0 <= k <= n, 0 <= j <= n - k, keyed by (j, k)."""
    ba = _binomial_row(n + p.alpha, n)
    bb = _binomial_row(n + p.beta, n)
    bg = _binomial_row(n + p.gamma, n)
    return {(j, k): ba[k] * bb[j] * bg[n - k - j] for k in range(n + 1) for j in range(n - k + 1)}


def _expand(n: int, p: ParamSet, absolute: bool) -> list:
    """Sum_{j,k} d_{j,k} (x-1)^{n-k} x^{k+j} (x-a)^{n-j} in the monomial basis.

    With ``absolute`` every factor is replaced by its coefficientwise absolute
    value, giving a bound on the magnitudes that cancel in each coefficient.
    """
    d = triple_coefficients(n, p)
    one, a = (mpf(-1), -abs(p.a)) if absolute else (mpf(1), p.a)
    pow_1 = [linear_power(one, m) for m in range(n + 1)]
    pow_a = [linear_power(a, m) for m in range(n + 1)]
    total = [mpf(0)] * (2 * n + 1)
    for j in range(n + 1):
        # inner(x) = sum_k d_{j,k} (x-1)^{n-k} x^k
        inner = [mpf(0)] * (n + 1)
        for k in range(n - j + 1):
            base = pow_1[n - k]
            for i, c in enumerate(base):
                inner[i + k] += d[(j, k)] * c
        term = poly_mul(inner, pow_a[n - j])
        for i, c in enumerate(term):
            total[i + j] += c
    return total


def _cancellation(coeffs, bounds):
    """(lost_bits, noise_mask): bits lost to cancellation in each coefficient.

    Coefficients indistinguishable from zero at the current precision are
    flagged in ``noise_mask`` and excluded from ``lost_bits``.
    """
    floor = mpf(2) ** (8 - mp.prec)
    worst = 0
    noise = []
    for c, b in zip(coeffs, bounds):
        if b == 0:
            noise.append(False)
            continue
        if abs(c) <= b * floor:
            noise.append(True)
            continue
        noise.append(False)
        worst = max(worst, int(mpmath.log(b / abs(c), 2)) + 1)
    return worst, noise


def build_aj(n: int, p: ParamSet, guard: int = DEFAULT_GUARD) -> Poly:
    """Monic Angelesco-Jacobi polynomial of degree 2n.

    The expansion is carried out with ``guard`` extra bits; if the measured
    cancellation eats more than half of them the build is repeated with more.
    Coefficients that cancel to the noise floor are confirmed at a higher
    guard and then set to exact zeros (they occur for symmetric parameters).
    The result is normalised by its computed leading coefficient, which equals
    c_n(alpha, beta, gamma) up to rounding (recorded in ``meta``).
    """
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    if not isinstance(p, ParamSet):
        raise TypeError("p must be a ParamSet")
    if n == 0:
        return Poly((mpf(1),), Family.ANGELESCO_JACOBI, 0, p, guard)
    if n > MAX_N:
        raise DomainError(f"n={n} exceeds the supported maximum {MAX_N}")
    confirmed = False
    for _ in range(6):
        with guarded(guard):
            raw = _expand(n, p, absolute=False)
            bound = _expand(n, p, absolute=True)
            lost, noise = _cancellation(raw, bound)
            if lost > guard // 2:
                guard = lost + DEFAULT_GUARD
                continue
            if any(noise) and not confirmed:
                confirmed = True
                guard *= 2
                continue
            lead = raw[-1]
            coeffs = [mpf(0) if z else c / lead for c, z in zip(raw[:-1], noise)]
            coeffs.append(mpf(1))
            cn = c_n(n, p)
            meta = {"lost_bits": lost, "lead_vs_cn": abs(lead / cn - 1), "zeroed": sum(noise)}
        return Poly(tuple(coeffs), Family.ANGELESCO_JACOBI, n, p, guard, meta)
    raise NumericalError(f"expansion of P_{n} did not stabilise (last guard {guard} bits)")


def constant_term(n: int, p: ParamSet) -> mpf:
    """P_n(0) = binom(3n+alpha+beta+gamma, n)^{-1} binom(n+gamma, n) a^n."""
    if n == 0:
        return mpf(1)
    return gen_binomial(n + p.gamma, n) / c_n(n, p) * p.a**n


def weight(p: ParamSet, x) -> mpf:
    """(1-x)^alpha (x-a)^beta |x|^gamma."""
    x = to_real(x)
    return (1 - x) ** p.alpha * (x - p.a) ** p.beta * abs(x) ** p.gamma


# -- property checks -------------------------------------------------------------


def orthogonality_integrals(poly: Poly, p: ParamSet, kmax: int, guard: int = 48):
    """Signed and absolute integrals of x^k P w over (a, 0) and (0, 1), k < kmax.

    Returns ``(signed, absolute)``, each a pair of tuples (left, right).
    """
    tol = tolerance()
    q_tol = tol.rel_identity * mpf(2) ** -16
    with guarded(max(guard, poly.guard)):
        al, be, ga = p.alpha, p.beta, p.gamma
        a = p.a
        coeffs = poly.coeffs

        def left(x, d_a, d_0):
            # x in (a, 0): x - a = d_a, |x| = d_0, 1 - x = 1 + d_0
            w = (1 + d_0) ** al * d_a**be * d_0**ga
            v = _horner(coeffs, x) * w
            out = []
            for _ in range(kmax):
                out.append(v)
                v *= x
            return out

        def right(x, d_0, d_1):
            # x in (0, 1): |x| = d_0, 1 - x = d_1, x - a = d_0 - a
            w = d_1**al * (d_0 - a) ** be * d_0**ga
            v = _horner(coeffs, x) * w
            out = []
            for _ in range(kmax):
                out.append(v)
                v *= x
            return out

        rl = tanh_sinh(left, a, 0, q_tol, kmax)
        rr = tanh_sinh(right, 0, 1, q_tol, kmax)
    return (rl.values, rr.values), (rl.abs_values, rr.abs_values)


def check_orthogonality(n: int, p: ParamSet, k_range=None) -> mpf:
    """Largest normalised orthogonality residual of P_n on both intervals.

    Each integral of x^k P w is divided by the integral of |x^k P| w.  With
    ``k_range`` other powers can be inspected (for k >= n the value is not a
    residual but a genuinely nonzero moment).
    """
    if n < 1:
        raise DomainError("orthogonality is only defined for n >= 1")
    poly = build_aj(n, p)
    ks = list(range(n)) if k_range is None else list(k_range)
    kmax = max(ks) + 1
    signed, absolute = orthogonality_integrals(poly, p, kmax)
    worst = mpf(0)
    for side in (0, 1):
        for k in ks:
            worst = max(worst, abs(signed[side][k]) / absolute[side][k])
    return worst


def _check_point(p: ParamSet, x: mpf):
    if x == p.a or x == 0 or x == 1:
        raise DomainError(f"x={x} is a singular point of the weight")
    if not (p.a < x < 1):
        raise DomainError(f"x={x} must lie in (a, 1) = ({p.a}, 1)")


def check_raising_aj(n: int, p: ParamSet, x) -> mpf:
    """Relative residual of the raising-operator identity at x.

    (2n+alpha+beta+gamma+1) w P_n  vs  -d/dx [w_+ P_{n-1}^{(alpha+1,beta+1,gamma+1)}],
    with w_+ = (1-x)(x-a) x w expanded analytically.
    """
    if n < 1:
        raise DomainError("raising identity needs n >= 1")
    x = to_real(x)
    _check_point(p, x)
    big = build_aj(n, p)
    small = build_aj(n - 1, p.raised())
    with guarded(max(big.guard, small.guard)):
        w = weight(p, x)
        w_plus = w * (1 - x) * (x - p.a) * x
        dlog = -(p.alpha + 1) / (1 - x) + (p.beta + 1) / (x - p.a) + (p.gamma + 1) / x
        q, dq = eval_with_derivative(small.coeffs, x)
        lhs = (2 * n + p.alpha + p.beta + p.gamma + 1) * w * _horner(big.coeffs, x)
        rhs = -w_plus * (dlog * q + dq)
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale if scale else mpf(0)


# -- exact Rodrigues oracle ---------------------------------------------------------


def _fr_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _fr_pow(lin, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = _fr_mul(out, lin)
    return out


def _fr_divide(num, den):
    """Exact polynomial division; raises if the remainder is nonzero."""
    num = list(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        q[i] = num[i + len(den) - 1] / den[-1]
        for j, dj in enumerate(den):
            num[i + j] -= q[i] * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


def rodrigues_exact(n: int, alpha: int, beta: int, gamma: int, a: Fraction) -> list:
    """(-1)^n / n! D^n[(1-x)^{alpha+n} (x-a)^{beta+n} x^{gamma+n}] / w(x), exactly.

    Integer exponents only; ``a`` a rational.  Returns Fraction coefficients of
    c_n P_n in ascending order.
    """
    a = Fraction(a)
    f = _fr_mul(
        _fr_mul(_fr_pow([Fraction(1), Fraction(-1)], alpha + n), _fr_pow([-a, Fraction(1)], beta + n)),
        _fr_pow([Fraction(0), Fraction(1)], gamma + n),
    )
    for _ in range(n):
        f = [i * f[i] for i in range(1, len(f))]
    scale = Fraction((-1) ** n, math.factorial(n))
    f = [scale * c for c in f]
    w = _fr_mul(
        _fr_mul(_fr_pow([Fraction(1), Fraction(-1)], alpha), _fr_pow([-a, Fraction(1)], beta)),
        _fr_pow([Fraction(0), Fraction(1)], gamma),
    )
    return _fr_divide(f, w)


def check_rodrigues_integer_params(n: int, p: ParamSet) -> bool:
    """Compare c_n P_n with the exact Rodrigues expansion coefficientwise."""
    for name in ("alpha", "beta", "gamma"):
        v = getattr(p, name)
        if not (is_integer_value(v) and v >= 0):
            raise ValueError(f"Rodrigues check needs non-negative integer {name}, got {v}")
    if n < 0:
        raise DomainError("n must be >= 0")
    sign, man, exp, _ = p.a._mpf_
    a_frac = (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)
    exact = rodrigues_exact(n, int(p.alpha), int(p.beta), int(p.gamma), a_frac)
    poly = build_aj(n, p)
    tol = tolerance().rel_identity
    with guarded(poly.guard):
        cn = c_n(n, p)
        scale = max(abs(mpf(c.numerator) / c.denominator) for c in exact)
        for c_exact, c_poly in zip(exact, poly.coeffs):
            ce = mpf(c_exact.numerator) / c_exact.denominator
            if abs(ce - cn * c_poly) > tol * scale:
                return False
    return len(exact) == len(poly.coeffs)
