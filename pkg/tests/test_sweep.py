from fractions import Fraction

import pytest

from mopz.sweep import check_base, parse_range, run_sweep, sweep_point


def test_parse_range_exact():
    assert parse_range("-0.9:0.1:0.5") == [Fraction(-9, 10), Fraction(-2, 5), Fraction(1, 10)]
    assert len(parse_range("-0.9:50:0.5")) == 102
    assert parse_range("-3:-0.1:0.1")[-1] == Fraction(-1, 10)


@pytest.mark.parametrize("bad", ["1:0:0.1", "0:1:0", "0:1:-1", "0:1", "a:b:c", "0:1e6:1e-3"])
def test_parse_range_rejects(bad):
    with pytest.raises(ValueError):
        parse_range(bad)


def test_check_base_requires_other_params():
    with pytest.raises(ValueError):
        check_base("aj", "gamma", {"alpha": 0, "beta": 0})
    with pytest.raises(ValueError):
        check_base("lh", "alpha", {})
    assert check_base("lh", "gamma", {}) == {}


def test_point_records_verdicts():
    r = sweep_point("aj", 2, {"alpha": 0, "beta": 1, "a": -2}, "gamma", Fraction(500))
    assert r.status == "ok" and r.label == "500"
    assert r.verdicts["gamma_pattern"] and r.verdicts["companion_interlacing"]
    assert r.signs == "--++"


def test_domain_failure_is_flagged_not_raised():
    r = sweep_point("aj", 1, {"alpha": 0, "beta": 0, "a": -1}, "gamma", Fraction(-1))
    assert r.status.startswith("DomainError")


def test_a_sweep_with_shifted_beta_increasing():
    grid = parse_range("-3:-0.5:0.5")
    res = run_sweep("aj", 2, {"alpha": "-0.5", "beta": 2, "gamma": 0}, "a", grid)
    assert res.failures == 0
    assert all(r.verdicts["all_increasing"] for r in res.records)
    assert res.gamma_star is None


def test_gamma_sweep_threshold():
    res = run_sweep("aj", 2, {"alpha": "-0.5", "beta": 1, "a": -2}, "gamma", parse_range("-0.9:20:2.5"))
    assert res.failures == 0
    assert res.gamma_star is not None
