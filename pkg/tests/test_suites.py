import pytest

from mopz import suites


@pytest.mark.parametrize("name", list(suites.SUITES))
def test_small_run_passes(name):
    report = suites.run_suite(name, trials=3, seed=11, n_max=3)
    assert report.passed, report.failed()
    assert report.as_dict()["sampling"]


def test_cases_are_seeded():
    a = suites.draw_cases("interlacing", 5, 3, 8)
    assert a == suites.draw_cases("interlacing", 5, 3, 8)
    assert a != suites.draw_cases("interlacing", 5, 4, 8)


@pytest.mark.parametrize("kw", [{"trials": 0}, {"n_max": 0}, {"n_max": 99}])
def test_bad_arguments(kw):
    with pytest.raises(ValueError):
        suites.run_suite("means", **{"trials": 2, **kw})
    with pytest.raises(ValueError):
        suites.run_suite("nope")
