"""Jacobi-Laguerre and Laguerre-Hermite multiple orthogonal polynomials.

Both families are built from their orthogonality relations: a monic
polynomial of degree 2n is the solution of a moment linear system.

Jacobi-Laguerre moments m_k = int x^k (x-a)^beta |x|^gamma e^{-x} dx on (a, 0)
and (0, inf) satisfy, by integration by parts,

    m_{k+2} = (beta + gamma + k + 2 + a) m_{k+1} - a (gamma + k + 1) m_k,

so two quadrature seeds per interval determine the whole table.  Tables for
integer shifts of beta and gamma follow from the exact maps
beta+1: m_k -> m_{k+1} - a m_k and gamma+1: m_k -> +-m_{k+1}.
Laguerre-Hermite moments are Gamma values and need no quadrature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .angelesco import ParamSet, build_aj
from .numeric import DomainError, NumericalError, guarded, log_gamma, to_real, tolerance
from .polynomial import Family, Poly, _horner, eval_poly, eval_with_derivative
from .quadrature import exp_exp, tanh_sinh

LEFT = "(a,0)"
RIGHT = "(0,inf)"
NEG = "(-inf,0)"


@dataclass(frozen=True)
class JLParams:
    beta: mpf
    gamma: mpf
    a: mpf

    def __post_init__(self):
        for name in ("beta", "gamma", "a"):
            object.__setattr__(self, name, to_real(getattr(self, name)))
        for name in ("beta", "gamma"):
            if not getattr(self, name) > -1:
                raise DomainError(f"{name} must be > -1, got {getattr(self, name)}")
        if not self.a < 0:
            raise DomainError(f"a must be < 0, got {self.a}")

    def shifted(self, beta=0, gamma=0) -> JLParams:
        return JLParams(self.beta + beta, self.gamma + gamma, self.a)


@dataclass(frozen=True)
class LHParams:
    gamma: mpf

    def __post_init__(self):
        object.__setattr__(self, "gamma", to_real(self.gamma))
        if not self.gamma > -1:
            raise DomainError(f"gamma must be > -1, got {self.gamma}")


@dataclass(frozen=True)
class MomentTable:
    interval: str
    weight: str
    m: tuple

    def __post_init__(self):
        if not self.m or not self.m[0] > 0:
            raise NumericalError(f"moment table on {self.interval} has non-positive m_0")


# -- Jacobi-Laguerre moments ---------------------------------------------------------


def _split(e: mpf) -> tuple:
    """e = base + shift with shift a non-negative integer and base in (-1, 1).

    Non-negative exponents keep their fractional part as the base, so an
    exponent just above an integer does not become one just above -1, where
    the seed quadrature would face a nearly non-integrable endpoint.
    """
    shift = max(0, int(mpmath.floor(e)))
    return e - shift, shift


def _seeds(interval: str, beta: mpf, gamma: mpf, a: mpf, tol) -> tuple:
    """(m_0, m_1) on one interval by double-exponential quadrature."""
    if interval == LEFT:

        def f(x, d_a, d_0):
            v = d_a**beta * d_0**gamma * mpmath.exp(-x)
            return [v, v * x]

        r = tanh_sinh(f, a, 0, tol, 2)
    else:

        def f(x):
            v = x**gamma * (x - a) ** beta * mpmath.exp(-x)
            return [v, v * x]

        r = exp_exp(f, tol, 2)
    return r.values


def _run_recurrence(m0, m1, beta, gamma, a, K):
    m = [m0, m1]
    for k in range(K - 1):
        m.append((beta + gamma + k + 2 + a) * m[k + 1] - a * (gamma + k + 1) * m[k])
    return m[: K + 1]


def _amplification_bits(m, beta, gamma, a) -> int:
    """Bits by which seed errors can be amplified in the table ``m``.

    Runs the recurrence on the two fundamental seed vectors scaled like the
    true seeds and compares their size with the computed moments.
    """
    K = len(m) - 1
    u = _run_recurrence(abs(m[0]), mpf(0), beta, gamma, a, K)
    v = _run_recurrence(mpf(0), abs(m[1]), beta, gamma, a, K)
    worst = mpf(1)
    for uk, vk, mk in zip(u, v, m):
        if mk == 0:
            continue
        worst = max(worst, (abs(uk) + abs(vk)) / abs(mk))
    return int(mpmath.log(worst, 2)) + 1


_BASE_CACHE: dict = {}
_BASE_CACHE_SIZE = 256


def _compute_base_table(interval, beta, gamma, a, K, prec) -> tuple:
    extra = 32
    for _ in range(5):
        with mp.workprec(prec + extra):
            tol = mpf(2) ** (-(prec + extra // 2))
            m0, m1 = _seeds(interval, beta, gamma, a, tol)
            m = _run_recurrence(m0, m1, beta, gamma, a, K)
            amp = _amplification_bits(m, beta, gamma, a)
        if amp <= extra // 2:
            return tuple(m)
        extra = 2 * amp + 32
    raise NumericalError(f"moment recurrence on {interval} amplifies seed errors by 2^{amp}")


def _base_table(interval: str, beta: mpf, gamma: mpf, a: mpf, K: int, prec: int) -> tuple:
    """Moments m_0..m_K for base exponents, accurate to at least ``prec`` bits.

    Precision and length are rounded up so that related requests share one
    pair of quadratures; a cached table that is long and precise enough is
    reused.
    """
    prec = -(-prec // 64) * 64
    K = -(-(K + 1) // 8) * 8
    key = (interval, beta, gamma, a)
    hit = _BASE_CACHE.get(key)
    if hit is not None and hit[0] >= prec and len(hit[1]) > K:
        return hit[1]
    table = _compute_base_table(interval, beta, gamma, a, K, prec)
    if len(_BASE_CACHE) >= _BASE_CACHE_SIZE:
        _BASE_CACHE.clear()
    _BASE_CACHE[key] = (prec, table)
    return table


def _shift_beta(m, a):
    return [m[k + 1] - a * m[k] for k in range(len(m) - 1)]


def _shift_gamma(m, interval):
    # |x|^{gamma+1} = -x |x|^gamma on (a, 0) and x |x|^gamma on (0, inf).
    sign = -1 if interval == LEFT else 1
    return [sign * m[k + 1] for k in range(len(m) - 1)]


def jl_moments(interval: str, q: JLParams, K: int, prec: int | None = None) -> MomentTable:
    """m_0..m_K of (x-a)^beta |x|^gamma e^{-x} on ``interval`` (LEFT or RIGHT).

    Seeds are taken at the base exponents in (-1, 1); integer shifts are then
    applied exactly, so all parameters differing by integers share one pair of
    quadratures per interval.
    """
    if interval not in (LEFT, RIGHT):
        raise ValueError(f"interval must be {LEFT!r} or {RIGHT!r}")
    prec = mp.prec if prec is None else prec
    b0, sb = _split(q.beta)
    g0, sg = _split(q.gamma)
    # each shift drops one entry and may cost a few bits of cancellation
    base = _base_table(interval, b0, g0, q.a, K + sb + sg, prec + 8 * (sb + sg) + 8)
    with mp.workprec(prec + 8 * (sb + sg) + 8):
        m = list(base)
        for _ in range(sb):
            m = _shift_beta(m, q.a)
        for _ in range(sg):
            m = _shift_gamma(m, interval)
    return MomentTable(interval, f"jl(beta={q.beta}, gamma={q.gamma}, a={q.a})", tuple(m[: K + 1]))


# -- linear algebra ------------------------------------------------------------------


def solve_full_pivot(A, b):
    """Gaussian elimination with complete pivoting.

    Returns ``(x, cond_bits)`` where ``cond_bits`` is log2 of the ratio of the
    largest to the smallest pivot, a cheap lower bound on the condition number.
    """
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    cols = list(range(n))
    pivots = []
    for i in range(n):
        best, pr, pc = mpf(-1), i, i
        for r in range(i, n):
            for c in range(i, n):
                v = abs(M[r][c])
                if v > best:
                    best, pr, pc = v, r, c
        if best == 0:
            raise NumericalError("moment system is singular at the working precision")
        M[i], M[pr] = M[pr], M[i]
        for row in M:
            row[i], row[pc] = row[pc], row[i]
        cols[i], cols[pc] = cols[pc], cols[i]
        pivots.append(best)
        piv = M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / piv
            if f:
                for c in range(i, n + 1):
                    M[r][c] -= f * M[i][c]
    y = [mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = M[i][n] - mpmath.fsum(M[i][c] * y[c] for c in range(i + 1, n))
        y[i] = acc / M[i][i]
    x = [mpf(0)] * n
    for i, c in enumerate(cols):
        x[c] = y[i]
    cond = max(pivots) / min(pivots)
    return x, int(mpmath.log(cond, 2)) + 1


def _monic_from_moments(tables, n: int):
    """Solve sum_i c_i m_{k+i} = -m_{k+2n}, k < n, for each table."""
    rows, rhs = [], []
    for m in tables:
        for k in range(n):
            rows.append([m[k + i] for i in range(2 * n)])
            rhs.append(-m[k + 2 * n])
    return solve_full_pivot(rows, rhs)


# -- Jacobi-Laguerre ---------------------------------------------------------------------


def _jl_params(beta, gamma, a) -> JLParams:
    return beta if isinstance(beta, JLParams) else JLParams(beta, gamma, a)


def build_jl(n: int, beta, gamma=None, a=None) -> Poly:
    """Monic Jacobi-Laguerre polynomial L_n^{(beta,gamma)}(x; a) of degree 2n.

    Accepts either (n, beta, gamma, a) or (n, JLParams).
    """
    q = _jl_params(beta, gamma, a)
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    if n == 0:
        return Poly((mpf(1),), Family.JACOBI_LAGUERRE, 0, q)
    prec = mp.prec
    guard = 56 + 12 * n
    for _ in range(5):
        K = 3 * n
        left = jl_moments(LEFT, q, K, prec + guard)
        right = jl_moments(RIGHT, q, K, prec + guard)
        with mp.workprec(prec + guard):
            c, cond = _monic_from_moments([left.m, right.m], n)
        if cond <= guard - 40:
            coeffs = tuple(c) + (mpf(1),)
            return Poly(coeffs, Family.JACOBI_LAGUERRE, n, q, guard, {"cond_bits": cond})
        guard = cond + 64
    raise NumericalError(f"Jacobi-Laguerre system for n={n} too ill-conditioned ({cond} bits)")


def jl_weight(q: JLParams, x) -> mpf:
    x = to_real(x)
    return (x - q.a) ** q.beta * abs(x) ** q.gamma * mpmath.exp(-x)


def _jl_point(q: JLParams, x):
    if x == q.a or x == 0:
        raise DomainError(f"x={x} is a singular point of the Jacobi-Laguerre weight")
    if not x > q.a:
        raise DomainError(f"x={x} must lie in (a, inf)")


def check_raising_jl(n: int, beta, gamma=None, a=None, x=None) -> mpf:
    """Relative residual of w L_n = -d/dx[w_+ L_{n-1}^{(beta+1,gamma+1)}],
    w_+ = (x-a) x w, with the derivative expanded analytically."""
    if isinstance(beta, JLParams):
        q, x = beta, gamma if x is None else x
    else:
        q = JLParams(beta, gamma, a)
    if n < 1:
        raise DomainError("raising identity needs n >= 1")
    x = to_real(x)
    _jl_point(q, x)
    big = build_jl(n, q)
    small = build_jl(n - 1, q.shifted(1, 1))
    with guarded(64):
        w = jl_weight(q, x)
        w_plus = w * (x - q.a) * x
        dlog = (q.beta + 1) / (x - q.a) + (q.gamma + 1) / x - 1
        s, ds = eval_with_derivative(small.coeffs, x)
        lhs = w * _horner(big.coeffs, x)
        rhs = -w_plus * (dlog * s + ds)
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale if scale else mpf(0)


def structure_identity_jl(kind: str, n: int, beta, gamma=None, a=None, x=None) -> mpf:
    """Residual of L_n^{(beta+1,gamma)} = L_n - n x L_{n-1}^{(beta+1,gamma+1)} (kind beta)
    or L_n^{(beta,gamma+1)} = L_n - n (x-a) L_{n-1}^{(beta+1,gamma+1)} (kind gamma).

    The factor n is the limit of alpha * B_n(alpha, beta, gamma) as alpha grows.
    """
    if isinstance(beta, JLParams):
        q, x = beta, gamma if x is None else x
    else:
        q = JLParams(beta, gamma, a)
    if kind not in ("beta", "gamma"):
        raise ValueError(f"kind must be 'beta' or 'gamma', got {kind!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"structure relation needs n >= 1, got {n}")
    x = to_real(x)
    lhs_q = q.shifted(1, 0) if kind == "beta" else q.shifted(0, 1)
    factor = n * (x if kind == "beta" else x - q.a)
    lhs = eval_poly(build_jl(n, lhs_q), x)
    rhs = eval_poly(build_jl(n, q), x) - factor * eval_poly(build_jl(n - 1, q.shifted(1, 1)), x)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


def jl_orthogonality(n: int, q: JLParams) -> mpf:
    """Largest |int x^k L w| / int |x^k L w| over k < n on both intervals,
    by direct quadrature (independent of the moment recurrence)."""
    if n < 1:
        raise DomainError("orthogonality is only defined for n >= 1")
    poly = build_jl(n, q)
    q_tol = tolerance().rel_identity * mpf(2) ** -16
    with guarded(48):
        coeffs = poly.coeffs

        def powers(v, x):
            out = []
            for _ in range(n):
                out.append(v)
                v *= x
            return out

        def left(x, d_a, d_0):
            return powers(_horner(coeffs, x) * d_a**q.beta * d_0**q.gamma * mpmath.exp(-x), x)

        def right(x):
            return powers(_horner(coeffs, x) * x**q.gamma * (x - q.a) ** q.beta * mpmath.exp(-x), x)

        rl = tanh_sinh(left, q.a, 0, q_tol, n)
        rr = exp_exp(right, q_tol, n)
        worst = mpf(0)
        for r in (rl, rr):
            for v, s in zip(r.values, r.abs_values):
                worst = max(worst, abs(v) / s)
    return +worst


# -- Laguerre-Hermite ---------------------------------------------------------------------


def lh_moment(k: int, gamma: mpf) -> mpf:
    """int_0^inf x^(k+gamma) e^{-x^2} dx = Gamma((k+gamma+1)/2) / 2."""
    return mpmath.exp(log_gamma((k + gamma + 1) / 2)) / 2


def lh_moments(interval: str, gamma, K: int) -> MomentTable:
    gamma = to_real(gamma)
    if interval not in (RIGHT, NEG):
        raise ValueError(f"interval must be {RIGHT!r} or {NEG!r}")
    sign = -1 if interval == NEG else 1
    m = tuple(sign**k * lh_moment(k, gamma) for k in range(K + 1))
    return MomentTable(interval, f"lh(gamma={gamma})", m)


def build_lh(n: int, gamma) -> Poly:
    """Monic Laguerre-Hermite polynomial H_n^{(gamma)} of degree 2n.

    The weight is even, so the even part of the polynomial satisfies both sets
    of conditions; only the n even coefficients are solved for and the odd
    ones are exact zeros.
    """
    p = gamma if isinstance(gamma, LHParams) else LHParams(gamma)
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    if n == 0:
        return Poly((mpf(1),), Family.LAGUERRE_HERMITE, 0, p)
    prec = mp.prec
    guard = 64
    for _ in range(5):
        with mp.workprec(prec + guard):
            m = lh_moments(RIGHT, p.gamma, 3 * n).m
            rows = [[m[k + 2 * i] for i in range(n)] for k in range(n)]
            rhs = [-m[k + 2 * n] for k in range(n)]
            even, cond = solve_full_pivot(rows, rhs)
        if cond <= guard - 40:
            coeffs = [mpf(0)] * (2 * n + 1)
            for i, c in enumerate(even):
                coeffs[2 * i] = c
            coeffs[2 * n] = mpf(1)
            return Poly(tuple(coeffs), Family.LAGUERRE_HERMITE, n, p, guard, {"cond_bits": cond})
        guard = cond + 64
    raise NumericalError(f"Laguerre-Hermite system for n={n} too ill-conditioned")


def check_raising_lh(n: int, gamma, x) -> mpf:
    """Relative residual of w H_n = -(1/2) d/dx[x w H_{n-1}^{(gamma+1)}], w = |x|^gamma e^{-x^2}."""
    if n < 1:
        raise DomainError("raising identity needs n >= 1")
    gamma = to_real(gamma)
    x = to_real(x)
    if x == 0:
        raise DomainError("x=0 is a singular point of the Laguerre-Hermite weight")
    big = build_lh(n, gamma)
    small = build_lh(n - 1, gamma + 1)
    with guarded(64):
        w = abs(x) ** gamma * mpmath.exp(-x * x)
        dlog = (gamma + 1) / x - 2 * x
        s, ds = eval_with_derivative(small.coeffs, x)
        lhs = w * _horner(big.coeffs, x)
        rhs = -w * x * (dlog * s + ds) / 2
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale if scale else mpf(0)


def structure_identity_lh(n: int, gamma, x) -> mpf:
    """Residual of H_n^{(gamma+1)} = H_n^{(gamma)} - (n/2) H_{n-1}^{(gamma+1)}.

    The factor n/2 is the limit of alpha * B_n(alpha, alpha, gamma).
    """
    if int(n) != n or n < 1:
        raise DomainError(f"structure relation needs n >= 1, got {n}")
    gamma = to_real(gamma)
    x = to_real(x)
    lhs = eval_poly(build_lh(n, gamma + 1), x)
    rhs = eval_poly(build_lh(n, gamma), x) - eval_poly(build_lh(n - 1, gamma + 1), x) * n / 2
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


def lh_orthogonality(n: int, gamma) -> mpf:
    """Direct-quadrature orthogonality residual of H_n on both half-lines."""
    if n < 1:
        raise DomainError("orthogonality is only defined for n >= 1")
    gamma = to_real(gamma)
    poly = build_lh(n, gamma)
    q_tol = tolerance().rel_identity * mpf(2) ** -16
    with guarded(48):
        coeffs = poly.coeffs

        def half(sign):
            def f(y):
                x = sign * y
                v = _horner(coeffs, x) * y**gamma * mpmath.exp(-y * y)
                out = []
                for _ in range(n):
                    out.append(v)
                    v *= x
                return out

            return f

        worst = mpf(0)
        for sign in (1, -1):
            r = exp_exp(half(sign), q_tol, n)
            for v, s in zip(r.values, r.abs_values):
                worst = max(worst, abs(v) / s)
    return +worst


# -- limit relations -------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitRow:
    alpha: mpf
    error: mpf


@dataclass(frozen=True)
class LimitTable:
    family: str
    n: int
    rows: tuple
    orders: tuple

    @property
    def decreasing(self) -> bool:
        return all(r1.error < r0.error for r0, r1 in zip(self.rows, self.rows[1:]))

    @property
    def empirical_order(self) -> mpf:
        """Order between the two finest grid points."""
        if not self.orders:
            raise ValueError("an order needs at least two grid points")
        return self.orders[-1]

    @property
    def fitted_order(self) -> mpf:
        """Least-squares slope of -log(error) against log(alpha) over the whole grid."""
        if len(self.rows) < 2:
            raise ValueError("an order needs at least two grid points")
        xs = [mpmath.log(r.alpha) for r in self.rows]
        ys = [-mpmath.log(r.error) for r in self.rows]
        mx = mpmath.fsum(xs) / len(xs)
        my = mpmath.fsum(ys) / len(ys)
        num = mpmath.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
        return num / mpmath.fsum((x - mx) ** 2 for x in xs)


def scaled_aj_coeffs(family: str, n: int, alpha, params) -> list:
    """Coefficients of the rescaled Angelesco-Jacobi polynomial approaching the
    Jacobi-Laguerre (``jl``) or Laguerre-Hermite (``lh``) limit at a finite alpha."""
    alpha = to_real(alpha)
    if family == "jl":
        q = params
        P = build_aj(n, ParamSet(alpha, q.beta, q.gamma, q.a / alpha))
        with guarded(P.guard):
            return [c * alpha ** (2 * n - i) for i, c in enumerate(P.coeffs)]
    if family == "lh":
        P = build_aj(n, ParamSet(alpha, alpha, params.gamma, -1))
        with guarded(P.guard):
            root = mpmath.sqrt(alpha)
            return [c * root ** (2 * n - i) for i, c in enumerate(P.coeffs)]
    raise ValueError(f"family must be 'jl' or 'lh', got {family!r}")


def limit_convergence(family: str, n: int, params, alpha_grid) -> LimitTable:
    """Coefficientwise distance of the rescaled AJ polynomial to its limit.

    The error at each alpha is max_i |c_i(alpha) - c_i| / max_i |c_i|, and the
    empirical order between consecutive grid points is
    log(e_k / e_{k+1}) / log(alpha_{k+1} / alpha_k).
    """
    grid = [to_real(g) for g in alpha_grid]
    if any(g1 <= g0 for g0, g1 in itertools.pairwise(grid)):
        raise ValueError("alpha_grid must be strictly increasing")
    if any(g < 10 for g in grid):
        raise ValueError("alpha_grid entries must be >= 10")
    if family == "jl":
        params = params if isinstance(params, JLParams) else JLParams(*params)
        target = build_jl(n, params).coeffs
    elif family == "lh":
        params = params if isinstance(params, LHParams) else LHParams(params)
        target = build_lh(n, params).coeffs
    else:
        raise ValueError(f"family must be 'jl' or 'lh', got {family!r}")
    scale = max(abs(c) for c in target)
    rows = []
    for alpha in grid:
        approx = scaled_aj_coeffs(family, n, alpha, params)
        err = max(abs(u - v) for u, v in zip(approx, target)) / scale
        rows.append(LimitRow(alpha, err))
    orders = tuple(
        mpmath.log(r0.error / r1.error) / mpmath.log(r1.alpha / r0.alpha) for r0, r1 in itertools.pairwise(rows)
    )
    return LimitTable(family, n, tuple(rows), orders)
