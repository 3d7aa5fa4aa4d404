from fractions import Fraction

from mopz.figure import (
    constant_term_check,
    figure1,
    gnuplot_script,
    sample_grid,
    y_extent,
)
from mopz.numeric import tolerance


def test_grid_contains_origin():
    g = sample_grid()
    assert len(g) == 2002 and Fraction(0) in g and g[0] == -2 and g[-1] == 1


def test_figure_counts_and_interlacing():
    fig = figure1(301)
    assert (len(fig.big_zeros.negative), len(fig.big_zeros.positive)) == (5, 5)
    assert (len(fig.small_zeros.negative), len(fig.small_zeros.positive)) == (4, 4)
    assert fig.left.holds and fig.left.pattern == "count_minus_one"
    assert fig.right.holds and fig.right.pattern == "count_minus_one"
    assert fig.holds
    at0, closed = constant_term_check(fig)
    assert abs(at0 - closed) <= 2**10 * tolerance().rel_identity * abs(closed)
    script = gnuplot_script("fig1.csv", y_extent(fig))
    assert "columnhead" in script and "fig1.csv" in script
