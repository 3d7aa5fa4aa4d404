"""Sample data for the degree-5 / degree-4 interlacing figure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .angelesco import ParamSet, build_aj, constant_term
from .numeric import to_real
from .polynomial import Poly, eval_poly
from .report import exact_decimal
from .zeros import InterlacingVerdict, ZeroSet, check_interlacing, find_zeros

FIG1_PARAMS = ParamSet(Fraction(-1, 2), 1, 0, -2)
FIG1_N = 5
FIG1_POINTS = 2001
FIG1_RANGE = (Fraction(-2), Fraction(1))


@dataclass(frozen=True)
class Figure1:
    big: Poly
    small: Poly
    xs: tuple
    labels: tuple
    big_values: tuple
    small_values: tuple
    big_zeros: ZeroSet
    small_zeros: ZeroSet
    left: InterlacingVerdict
    right: InterlacingVerdict

    @property
    def holds(self) -> bool:
        counts = (
            len(self.big_zeros.negative) == FIG1_N
            and len(self.big_zeros.positive) == FIG1_N
            and len(self.small_zeros.negative) == FIG1_N - 1
            and len(self.small_zeros.positive) == FIG1_N - 1
        )
        return counts and self.left.holds and self.right.holds


def sample_grid(points: int = FIG1_POINTS) -> list:
    """Uniform grid on [-2, 1] plus the origin, which the uniform grid misses."""
    lo, hi = FIG1_RANGE
    grid = {lo + (hi - lo) * Fraction(k, points - 1) for k in range(points)}
    grid.add(Fraction(0))
    return sorted(grid)


def y_extent(fig: Figure1):
    """Largest |value| of either curve between the outermost zeros of the degree-5 curve."""
    lo, hi = fig.big_zeros.all[0], fig.big_zeros.all[-1]
    inside = [max(abs(u), abs(v)) for x, u, v in zip(fig.xs, fig.big_values, fig.small_values) if lo <= x <= hi]
    return max(inside)


def figure1(points: int = FIG1_POINTS) -> Figure1:
    p = FIG1_PARAMS
    big = build_aj(FIG1_N, p)
    small = build_aj(FIG1_N - 1, p.raised())
    grid = sample_grid(points)
    xs = tuple(to_real(x) for x in grid)
    zb, zs = find_zeros(big), find_zeros(small)
    return Figure1(
        big,
        small,
        xs,
        tuple(exact_decimal(x) for x in grid),
        tuple(eval_poly(big, x) for x in xs),
        tuple(eval_poly(small, x) for x in xs),
        zb,
        zs,
        check_interlacing(zs.all, zb.all, (p.a, 0)),
        check_interlacing(zs.all, zb.all, (0, 1)),
    )


def constant_term_check(fig: Figure1):
    """(value at x=0 from the samples, closed-form constant term)."""
    i = fig.xs.index(0)
    return fig.big_values[i], constant_term(FIG1_N, FIG1_PARAMS)


def gnuplot_script(csv_name: str, y_max, comments=()) -> str:
    lines = list(comments)
    ylim = float(1.2 * y_max)
    lines += [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        "set xrange [-2:1]",
        f"set yrange [{-ylim:.6g}:{ylim:.6g}]",
        "set xzeroaxis",
        "set xlabel 'x'",
        "set key top left",
        (f"plot '{csv_name}' using 1:2 with lines dashtype 2 linewidth 1.5 title 'P_5^{{(-1/2,1,0)}}(x;-2)', \\"),
        (f"     '{csv_name}' using 1:3 with lines linewidth 3 title 'P_4^{{(1/2,2,1)}}(x;-2)'"),
        "",
    ]
    return "\n".join(lines)
