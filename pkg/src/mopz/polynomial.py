"""Dense monic polynomials over mpf with Horner evaluation."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from mpmath import mpf

from .numeric import guarded, to_real

# Guard bits used when a polynomial does not record its own.
DEFAULT_GUARD = 64


class Family(str, enum.Enum):
    ANGELESCO_JACOBI = "aj"
    JACOBI_LAGUERRE = "jl"
    LAGUERRE_HERMITE = "lh"
    CLASSICAL_JACOBI = "jacobi"
    PRODUCT = "product"


@dataclass(frozen=True)
class Poly:
    """Polynomial with ascending coefficients ``coeffs[i] * x**i``.

    ``n`` is the half-degree for the multiple families and the degree for
    classical Jacobi.  ``guard`` is the number of extra bits the coefficients
    were computed with; evaluation uses the same guard.
    """

    coeffs: tuple
    family: Family = Family.PRODUCT
    n: int = 0
    params: Any = None
    guard: int = DEFAULT_GUARD
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> mpf:
        return eval_poly(self, x)

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1


def _horner(coeffs: Sequence[mpf], x: mpf) -> mpf:
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative_coeffs(coeffs: Sequence[mpf], order: int = 1) -> list:
    out = list(coeffs)
    for _ in range(order):
        out = [i * out[i] for i in range(1, len(out))]
    return out or [mpf(0)]


def eval_poly(p: Poly, x) -> mpf:
    x = to_real(x)
    with guarded(p.guard):
        return _horner(p.coeffs, x)


def eval_derivative(p: Poly, x, order: int = 1) -> mpf:
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    x = to_real(x)
    with guarded(p.guard):
        return _horner(derivative_coeffs(p.coeffs, order), x)


def eval_with_derivative(coeffs: Sequence[mpf], x: mpf) -> tuple[mpf, mpf]:
    """P(x) and P'(x) in one Horner pass (current precision)."""
    p = mpf(0)
    dp = mpf(0)
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def poly_mul(a: Sequence[mpf], b: Sequence[mpf]) -> list:
    out = [mpf(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_add(a: Sequence[mpf], b: Sequence[mpf]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = out[i] + bi
    return out


def poly_scale(a: Sequence[mpf], s) -> list:
    return [s * c for c in a]


def linear_power(root, k: int) -> list:
    """Coefficients of (x - root)**k."""
    out = [mpf(1)]
    lin = [-root, mpf(1)]
    for _ in range(k):
        out = poly_mul(out, lin)
    return out


def monic(coeffs: Sequence[mpf]) -> list:
    lead = coeffs[-1]
    out = [c / lead for c in coeffs[:-1]]
    out.append(mpf(1))
    return out
