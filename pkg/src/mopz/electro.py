"""Classical Jacobi polynomials and the Stieltjes electrostatic model of their zeros."""

from __future__ import annotations

import itertools
import random
from collections.abc import Sequence
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .numeric import DomainError, guarded, to_real, tolerance
from .polynomial import Family, Poly, _horner
from .quadrature import tanh_sinh
from .zeros import real_zeros


@dataclass(frozen=True)
class JacobiParams:
    alpha: mpf
    beta: mpf

    def __post_init__(self):
        for name in ("alpha", "beta"):
            object.__setattr__(self, name, to_real(getattr(self, name)))
            if not getattr(self, name) > -1:
                raise DomainError(f"{name} must be > -1, got {getattr(self, name)}")


def recurrence_coeffs(k: int, alpha: mpf, beta: mpf) -> tuple:
    """(b_k, c_k) of the monic recurrence p_{k+1} = (x - b_k) p_k - c_k p_{k-1}."""
    s = alpha + beta
    if k == 0:
        b = (beta - alpha) / (s + 2)
    else:
        b = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2))
    if k == 0:
        c = mpf(0)
    elif k == 1:
        # (k+s)/(2k+s-1) cancels to 1, which also covers s = -1.
        c = 4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
    else:
        t = 2 * k + s
        c = 4 * k * (k + alpha) * (k + beta) * (k + s) / (t * t * (t + 1) * (t - 1))
    return b, c


def build_classical_jacobi(n: int, alpha, beta, guard: int = 32) -> Poly:
    """Monic Jacobi polynomial of degree n for the weight (1-x)^alpha (1+x)^beta."""
    p = JacobiParams(alpha, beta)
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    with guarded(guard):
        prev = [mpf(0)]
        cur = [mpf(1)]
        for k in range(n):
            b, c = recurrence_coeffs(k, p.alpha, p.beta)
            nxt = [mpf(0)] + cur
            for i, v in enumerate(cur):
                nxt[i] -= b * v
            for i, v in enumerate(prev):
                nxt[i] -= c * v
            prev, cur = cur, nxt
    return Poly(tuple(cur), Family.CLASSICAL_JACOBI, n, p, guard)


def jacobi_zeros(n: int, alpha, beta) -> list:
    poly = build_classical_jacobi(n, alpha, beta)
    zs, _ = real_zeros(poly, -1, 1, n)
    return zs


def jacobi_orthogonality(n: int, alpha, beta) -> mpf:
    """Largest |int x^k P w| / int |x^k P w|, k < n, by tanh-sinh on (-1, 1)."""
    if n < 1:
        raise DomainError("orthogonality is only defined for n >= 1")
    poly = build_classical_jacobi(n, alpha, beta)
    p = poly.params
    q_tol = tolerance().rel_identity * mpf(2) ** -16
    with guarded(48):

        def f(x, d_left, d_right):
            v = _horner(poly.coeffs, x) * d_right**p.alpha * d_left**p.beta
            out = []
            for _ in range(n):
                out.append(v)
                v *= x
            return out

        r = tanh_sinh(f, -1, 1, q_tol, n)
        worst = max(abs(v) / s for v, s in zip(r.values, r.abs_values))
    return +worst


# -- energy --------------------------------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    points: tuple

    def __post_init__(self):
        pts = tuple(to_real(x) for x in self.points)
        for x in pts:
            if not -1 < x < 1:
                raise DomainError(f"point {x} is not inside (-1, 1)")
        for x0, x1 in itertools.pairwise(pts):
            if not x0 < x1:
                raise DomainError("points must be distinct and strictly increasing")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class EnergyBreakdown:
    mutual: mpf
    external: mpf
    total: mpf


def _config(X) -> Configuration:
    if isinstance(X, Configuration):
        return X
    return Configuration(tuple(sorted(to_real(x) for x in X)))


def energy(X, alpha, beta) -> EnergyBreakdown:
    """Mutual logarithmic repulsion plus the endpoint field
    (alpha+1)/2 log 1/|x-1| + (beta+1)/2 log 1/|x+1|."""
    pts = _config(X).points
    alpha, beta = to_real(alpha), to_real(beta)
    mutual = mpmath.fsum(-mpmath.log(abs(pts[k] - pts[j])) for k in range(len(pts)) for j in range(k + 1, len(pts)))
    external = mpmath.fsum(-(alpha + 1) / 2 * mpmath.log(1 - x) - (beta + 1) / 2 * mpmath.log(1 + x) for x in pts)
    return EnergyBreakdown(mutual, external, mutual + external)


def energy_gradient(X, alpha, beta) -> list:
    pts = _config(X).points
    alpha, beta = to_real(alpha), to_real(beta)
    out = []
    for i, xi in enumerate(pts):
        g = -mpmath.fsum(1 / (xi - xj) for j, xj in enumerate(pts) if j != i)
        g -= (alpha + 1) / (2 * (xi - 1)) + (beta + 1) / (2 * (xi + 1))
        out.append(g)
    return out


def energy_hessian_fd(X, alpha, beta, h=None) -> list:
    """Hessian by central differences of the analytic gradient."""
    pts = list(_config(X).points)
    h = mpf(2) ** -40 if h is None else to_real(h)
    n = len(pts)
    H = [[mpf(0)] * n for _ in range(n)]
    for j in range(n):
        up = list(pts)
        dn = list(pts)
        up[j] += h
        dn[j] -= h
        gu = energy_gradient(up, alpha, beta)
        gd = energy_gradient(dn, alpha, beta)
        for i in range(n):
            H[i][j] = (gu[i] - gd[i]) / (2 * h)
    return H


def is_positive_definite(H) -> bool:
    try:
        mpmath.cholesky(mpmath.matrix(H))
    except ValueError:
        return False
    return True


def _unit(rng: random.Random) -> mpf:
    # uniform on the open interval (0, 1)
    return (mpf(rng.getrandbits(53)) + mpf(0.5)) / 2**53


def jitter(points: Sequence[mpf], rng: random.Random) -> list:
    """Move each point uniformly inside its cell, bounded by the midpoints to
    its neighbours (or by -1 and 1 at the ends)."""
    pts = list(points)
    n = len(pts)
    out = []
    for i, x in enumerate(pts):
        lo = (pts[i - 1] + x) / 2 if i > 0 else mpf(-1)
        hi = (x + pts[i + 1]) / 2 if i < n - 1 else mpf(1)
        out.append(lo + (hi - lo) * _unit(rng))
    return out


@dataclass(frozen=True)
class StieltjesReport:
    n: int
    alpha: mpf
    beta: mpf
    seed: int
    gradient_norm: mpf
    energy_at_zeros: mpf
    min_perturbed_energy: mpf
    minimizer_holds: bool
    hessian_positive: bool | None


def stieltjes_check(n: int, alpha, beta, trials: int = 100, seed: int = 0, hessian: bool = False):
    """Gradient at the Jacobi zeros and comparison against jittered configurations."""
    zs = jacobi_zeros(n, alpha, beta)
    grad = energy_gradient(zs, alpha, beta)
    gnorm = mpmath.sqrt(mpmath.fsum(g * g for g in grad))
    e0 = energy(zs, alpha, beta).total
    rng = random.Random(seed)
    best = None
    for _ in range(trials):
        e = energy(jitter(zs, rng), alpha, beta).total
        best = e if best is None else min(best, e)
    pd = is_positive_definite(energy_hessian_fd(zs, alpha, beta)) if hessian else None
    return StieltjesReport(n, to_real(alpha), to_real(beta), seed, gnorm, e0, best, best is None or e0 < best, pd)


def jacobi_zero_sensitivities(n: int, alpha, beta, wrt: str, h=None) -> list:
    """Central differences of the sorted Jacobi zeros in alpha or beta."""
    if wrt not in ("alpha", "beta"):
        raise ValueError(f"wrt must be 'alpha' or 'beta', got {wrt!r}")
    alpha, beta = to_real(alpha), to_real(beta)
    h = mpf("1e-8") if h is None else to_real(h)
    if wrt == "alpha":
        lo, hi = jacobi_zeros(n, alpha - h, beta), jacobi_zeros(n, alpha + h, beta)
    else:
        lo, hi = jacobi_zeros(n, alpha, beta - h), jacobi_zeros(n, alpha, beta + h)
    return [(u - v) / (2 * h) for u, v in zip(hi, lo)]
