"""Diagonal Angelesco-Jacobi, Jacobi-Laguerre and Laguerre-Hermite multiple
orthogonal polynomials at extended precision: construction, zeros, interlacing,
structure relations, limits and classical Jacobi electrostatics.

Importing the package raises ``mpmath.mp.prec`` to the session default
(``MOPZ_PREC`` or 192 bits) when it is below the supported minimum.
"""

from mpmath import mp

from .numeric import MIN_PRECISION, default_precision

__version__ = "0.1.0"

if mp.prec < MIN_PRECISION:
    mp.prec = default_precision()

from .angelesco import ParamSet, build_aj
from .limits import JLParams, LHParams, build_jl, build_lh
from .zeros import ZeroSet, check_interlacing, find_zeros

__all__ = [
    "JLParams",
    "LHParams",
    "ParamSet",
    "ZeroSet",
    "__version__",
    "build_aj",
    "build_jl",
    "build_lh",
    "check_interlacing",
    "find_zeros",
]
