"""Structure relations, zero means, endpoint derivatives and zero sensitivities
for the Angelesco-Jacobi family."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .angelesco import ParamSet, build_aj
from .numeric import DomainError, guarded, log_gamma, session_precision, to_real
from .polynomial import eval_poly
from .zeros import ZeroSet, find_zeros

KINDS = ("alpha", "beta", "gamma")
PARAMS = ("alpha", "beta", "gamma", "a")


@dataclass(frozen=True)
class StructureCoeffs:
    A: mpf
    B: mpf


@dataclass(frozen=True)
class SensitivityVector:
    wrt: str
    step: mpf
    values: tuple

    def signs(self) -> tuple:
        return tuple((v > 0) - (v < 0) for v in self.values)


def _s(p: ParamSet) -> mpf:
    return p.alpha + p.beta + p.gamma


def _need_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"this identity needs n >= 1, got {n}")


def structure_coeffs(n: int, p: ParamSet) -> StructureCoeffs:
    """(A_n, B_n) with A = (2n+s+1)/(3n+s+1), B = 1 - A = n/(3n+s+1)."""
    _need_n(n)
    s = _s(p)
    A = (2 * n + s + 1) / (3 * n + s + 1)
    # 1 - A rounds so that A + B == 1 holds exactly in floating point.
    return StructureCoeffs(A, 1 - A)


def _quadratic(kind: str, x: mpf, a: mpf) -> mpf:
    if kind == "alpha":
        return x * (x - a)
    if kind == "beta":
        return (x - 1) * x
    if kind == "gamma":
        return (x - a) * (x - 1)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def structure_identity_residual(kind: str, n: int, p: ParamSet, x) -> mpf:
    """|LHS - RHS| / max(|LHS|, |RHS|, 1) for the single-parameter shift of P_n.

    P_n with ``kind`` raised by one equals A P_n + B q(x) P_{n-1}^{(alpha+1,beta+1,gamma+1)},
    where q is x(x-a), (x-1)x or (x-a)(x-1) for alpha, beta, gamma.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    _need_n(n)
    x = to_real(x)
    shift = {k: (1 if k == kind else 0) for k in KINDS}
    lhs_poly = build_aj(n, p.shifted(**shift))
    base = build_aj(n, p)
    inner = build_aj(n - 1, p.raised())
    sc = structure_coeffs(n, p)
    lhs = eval_poly(lhs_poly, x)
    rhs = sc.A * eval_poly(base, x) + sc.B * _quadratic(kind, x, p.a) * eval_poly(inner, x)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1)


# -- means ---------------------------------------------------------------------------


def arithmetic_mean(n: int, p: ParamSet) -> mpf:
    """Closed-form mean of the 2n zeros of P_n."""
    _need_n(n)
    s = _s(p)
    return ((2 * n + p.beta + p.gamma) + p.a * (2 * n + p.gamma + p.alpha)) / (2 * (3 * n + s))


def arithmetic_mean_gamma_derivative(n: int, p: ParamSet) -> mpf:
    _need_n(n)
    s = _s(p)
    return (n + p.alpha + (n + p.beta) * p.a) / (2 * (3 * n + s) ** 2)


def geometric_mean_at_zero(n: int, p: ParamSet) -> mpf:
    """|P_n(0)| = prod |zeros|, from the Gamma-ratio closed form."""
    if n == 0:
        return mpf(1)
    s = _s(p)
    with mp.workprec(mp.prec + 20):
        lg = log_gamma(s + 2 * n + 1) + log_gamma(n + p.gamma + 1) - log_gamma(s + 3 * n + 1) - log_gamma(p.gamma + 1)
        v = mpmath.exp(lg) * abs(p.a) ** n
    return +v


def geo_mean_log_gamma_derivative(n: int, p: ParamSet) -> mpf:
    """d/dgamma log |P_n(0)| = sum_{k=1}^{n} [1/(k+gamma) - 1/(k+alpha+beta+gamma+2n)].

    This is psi(s+2n+1) - psi(s+3n+1) + psi(n+gamma+1) - psi(gamma+1) with the
    digamma differences telescoped; every summand is positive because
    alpha + beta + 2n > 0.
    """
    _need_n(n)
    top = _s(p) + 2 * n
    with mp.workprec(mp.prec + 20):
        v = mpmath.fsum(1 / (k + p.gamma) - 1 / (k + top) for k in range(1, n + 1))
    return +v


def endpoint_gap_bound(n: int, p: ParamSet) -> mpf:
    """g = 1 - |P_n(0)| / |a|^n.

    Since every zero is bounded by |a| or 1 in absolute value, each zero lies
    within max(|a|, 1) * g of its limiting endpoint.
    """
    _need_n(n)
    return 1 - geometric_mean_at_zero(n, p) / abs(p.a) ** n


def endpoint_distance(zs: ZeroSet, p: ParamSet) -> mpf:
    """Largest distance of a negative zero to a or of a positive zero to 1."""
    d = [z - p.a for z in zs.negative] + [1 - z for z in zs.positive]
    return max(d, default=mpf(0))


# -- endpoint derivative ---------------------------------------------------------------


def endpoint_derivative_residuals(n: int, p: ParamSet, x) -> tuple:
    """Residuals of the two closed forms for (x-a) dP_n^{(alpha,beta+1,gamma)}/da.

    The a-derivative is a central difference with step 2^(-prec/3) |a|.
    Each residual is normalised by the largest magnitude among the terms.
    """
    _need_n(n)
    x = to_real(x)
    prec = session_precision()
    q = p.shifted(beta=1)
    h = mpf(2) ** (-(prec // 3)) * abs(p.a)
    s = _s(p)
    N = 1 + s + 3 * n
    with guarded(64):
        up = build_aj(n, q.with_a(p.a + h))
        down = build_aj(n, q.with_a(p.a - h))
        d_a = (eval_poly(up, x) - eval_poly(down, x)) / (2 * h)
        lhs = (x - p.a) * d_a
        p_beta1 = eval_poly(build_aj(n, q), x)
        p_base = eval_poly(build_aj(n, p), x)
        inner = eval_poly(build_aj(n - 1, p.raised()), x)
        t1 = -(n + p.beta + 1) * (1 + s + 2 * n) / N * p_base
        t2 = (p.beta + 1) * p_beta1
        r1 = t1 + t2
        u1 = -n * p_beta1
        u2 = n * (n + p.beta + 1) / N * x * (x - 1) * inner
        r2 = u1 + u2
        s1 = max(abs(lhs), abs(t1), abs(t2))
        s2 = max(abs(lhs), abs(u1), abs(u2))
        e1 = abs(lhs - r1) / s1 if s1 else mpf(0)
        e2 = abs(lhs - r2) / s2 if s2 else mpf(0)
    return +e1, +e2


# -- sensitivities -------------------------------------------------------------------


def default_step() -> mpf:
    return max(mpf("1e-8"), mpf(2) ** (-(session_precision() // 3)))


def _bumped(p: ParamSet, wrt: str, h) -> ParamSet:
    if wrt not in PARAMS:
        raise ValueError(f"wrt must be one of {PARAMS}, got {wrt!r}")
    if wrt == "a":
        return p.with_a(p.a + h)
    return p.shifted(**{wrt: h})


def zero_sensitivities(n: int, p: ParamSet, wrt: str, h=None) -> SensitivityVector:
    """Central finite differences of the sorted zeros of P_n in one parameter.

    Zeros are matched by index within each subinterval.
    """
    _need_n(n)
    h = default_step() if h is None else to_real(h)
    try:
        lo = _bumped(p, wrt, -h)
        hi = _bumped(p, wrt, h)
    except DomainError as exc:
        raise DomainError(f"step {h} in {wrt} leaves the parameter domain: {exc}") from exc
    z_lo = find_zeros(build_aj(n, lo)).all
    z_hi = find_zeros(build_aj(n, hi)).all
    return SensitivityVector(wrt, h, tuple((b - c) / (2 * h) for b, c in zip(z_hi, z_lo)))


# -- large-gamma diagnostics ------------------------------------------------------------------


@dataclass(frozen=True)
class GammaDiagnostics:
    """Quantities behind the large-gamma monotonicity argument at one gamma."""

    sensitivities: tuple
    pattern_holds: bool
    zeros_in_half_intervals: bool
    inner_sum: mpf | None
    inner_sum_in_bounds: bool | None


def gamma_sign_pattern(values, n: int) -> bool:
    """First n entries negative, last n positive."""
    return all(v < 0 for v in values[:n]) and all(v > 0 for v in values[n:])


def gamma_diagnostics(n: int, p: ParamSet, h=None) -> GammaDiagnostics:
    """Sign pattern of the gamma-sensitivities plus the location and summed
    sensitivity bounds used in the large-gamma argument.

    The zeros should sit in (a, a/2) and (1/2, 1), and the summed gamma
    sensitivities of P_{n-1}^{(alpha+1,beta+1,gamma+1)} in
    (-(1-a)^2/4, -(1-a)^2/(4a)).
    """
    sens = zero_sensitivities(n, p, "gamma", h)
    zs = find_zeros(build_aj(n, p))
    a = p.a
    located = all(a < z < a / 2 for z in zs.negative) and all(mpf(1) / 2 < z < 1 for z in zs.positive)
    inner_sum = None
    inner_ok = None
    if n >= 2:
        inner = zero_sensitivities(n - 1, p.raised(), "gamma", h)
        inner_sum = mpmath.fsum(inner.values)
        inner_ok = -((1 - a) ** 2) / 4 < inner_sum < -((1 - a) ** 2) / (4 * a)
    return GammaDiagnostics(sens.values, gamma_sign_pattern(sens.values, n), located, inner_sum, inner_ok)


def gamma_threshold(grid, holds) -> mpf | None:
    """Smallest grid value from which ``holds`` is true for the rest of the grid.

    ``grid`` is increasing; returns None if the last point fails.
    """
    star = None
    for g, ok in zip(reversed(list(grid)), reversed(list(holds))):
        if not ok:
            break
        star = g
    return star
