from decimal import Decimal
from fractions import Fraction

import mpmath
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from mopz.report import RunManifest, digits_for, dump_csv, exact_decimal, fmt, jsonable


@given(st.integers(-(2**191), 2**191), st.integers(-400, 400))
def test_fmt_round_trips(m, e):
    x = mpmath.ldexp(mpf(m), e)
    assert mpf(fmt(x)) == x


def test_fmt_shapes():
    assert fmt(mpf(-1) / 2) == "-0.5"
    assert fmt(mpf(3)) == "3"
    assert fmt(True) == "true" and fmt(None) == ""
    assert fmt(7) == "7"


def test_digits_for():
    assert digits_for(192) == 59
    assert digits_for(256) > digits_for(192)


def test_exact_decimal():
    assert exact_decimal(Fraction(-3, 2)) == "-1.5"
    assert exact_decimal(Fraction(-2) + Fraction(3, 2000) * 1) == "-1.9985"
    assert exact_decimal(Fraction(0)) == "0"
    assert exact_decimal(Fraction(1, 3)) == "1/3"
    x = Fraction(1, 2**80)
    assert Fraction(Decimal(exact_decimal(x))) == x
    assert exact_decimal(12) == "12"


def test_jsonable_converts_nested():
    out = jsonable({"a": [mpf(1) / 4, 2.5], "b": {"c": mpf(2)}, "d": "s"})
    assert out == {"a": ["0.25", "2.5"], "b": {"c": "2"}, "d": "s"}


def test_manifest_and_csv():
    m = RunManifest.create(["build", "--n", "1"], mp.prec, 0)
    assert m.command == "mopz build --n 1" and m.precision_bits == 192
    text = dump_csv(["x", "y"], [["1", "2"]], m.comment_lines())
    lines = text.splitlines()
    assert lines[0].startswith("# command:") and lines[-2:] == ["x,y", "1,2"]
