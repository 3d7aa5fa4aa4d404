"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import mpmath
from mpmath import mpf

from mopz import suites
from mopz.angelesco import ParamSet, build_aj
from mopz.figure import constant_term_check, figure1
from mopz.limits import JLParams, build_jl, build_lh
from mopz.numeric import precision, tolerance
from mopz.relations import KINDS, structure_identity_residual
from mopz.report import exact_decimal
from mopz.sweep import parse_range, run_sweep
from mopz.zeros import find_zeros

_REPORTS: dict = {}


def suite(name, trials, seed, n_max=8):
    key = (name, trials, seed, n_max)
    if key not in _REPORTS:
        _REPORTS[key] = suites.run_suite(name, trials=trials, seed=seed, n_max=n_max)
    return _REPORTS[key]


def props(report, names):
    """The named properties plus any numerical-failure entry of the suite."""
    found = {p.name: p for p in report.properties}
    missing = [n for n in names if n not in found]
    assert not missing, missing
    return [found[n] for n in names] + [p for p in report.properties if p.name.endswith("_numerics")]


def summarize(selected):
    bad = [f"{p.name} {p.failures}/{p.cases}" for p in selected if not p.passed]
    cases = min(p.cases for p in selected)
    return not bad, f"min cases {cases}" + (f"; failing {', '.join(bad)}" if bad else "")


def test_c01_closed_forms(acceptance):
    P = build_aj(1, ParamSet(0, 0, 0, -1))
    zs = find_zeros(P)
    r3 = 1 / mpmath.sqrt(3)
    errs = [abs(P.coeffs[0] + mpf(1) / 3), abs(P.coeffs[1]), abs(zs.negative[0] + r3), abs(zs.positive[0] - r3)]
    ok = max(errs) < mpf("1e-30")
    tol = tolerance().rel_identity
    ok &= all(abs(c - t) < tol for c, t in zip(build_lh(1, 0).coeffs, (mpf(-1) / 2, 0, 1)))
    ok &= all(abs(c - t) < tol for c, t in zip(build_lh(1, 1).coeffs, (-1, 0, 1)))
    L = build_jl(1, JLParams(0, 0, -1))
    zl = find_zeros(L)
    s5 = mpmath.sqrt(5)
    jl_err = max(abs(zl.negative[0] - (1 - s5) / 2), abs(zl.positive[0] - (1 + s5) / 2))
    jl_err = max([jl_err] + [abs(c - t) for c, t in zip(L.coeffs, (-1, -1, 1))])
    ok &= jl_err < mpf("1e-25")
    acceptance(
        1,
        "closed-form golden polynomials and zeros",
        ok,
        f"aj {mpmath.nstr(max(errs), 3)}, jl {mpmath.nstr(jl_err, 3)}",
    )
    assert ok


def test_c02_structure_identities_and_precision_scaling(acceptance):
    cases = suites.draw_cases("structure", 100, 42, 8)

    def worst(bits):
        with precision(bits):
            out = {}
            for kind in KINDS:
                out[kind] = max(
                    structure_identity_residual(
                        kind, c["n"], ParamSet(c["alpha"], c["beta"], c["gamma"], c["a"]), mpf(c["x"])
                    )
                    for c in cases
                )
            return out, tolerance().rel_identity

    lo, tol_lo = worst(192)
    hi, tol_hi = worst(256)
    ok = all(v < tol_lo for v in lo.values()) and all(v < tol_hi for v in hi.values())
    shrink = {}
    for kind in KINDS:
        shrink[kind] = hi[kind] <= lo[kind] * mpf(2) ** -50 if lo[kind] else hi[kind] == 0
    ok &= all(shrink.values())
    detail = ", ".join(f"{k}: {mpmath.nstr(lo[k], 3)} -> {mpmath.nstr(hi[k], 3)}" for k in KINDS)
    acceptance(2, "structure identities at 192 bits, shrink >= 2^50 at 256 bits", ok, detail)
    assert ok


def test_c03_orthogonality(acceptance):
    ok, detail = summarize(
        props(suite("orthogonality", 50, 3), ["orthogonality_aj", "orthogonality_jl", "orthogonality_lh"])
    )
    acceptance(3, "orthogonality residuals (AJ n<=6 incl. gamma<0, JL/LH n<=5)", ok, detail)
    assert ok


def test_c04_figure(acceptance):
    fig = figure1()
    at0, closed = constant_term_check(fig)
    counts = tuple(
        len(z)
        for z in (fig.big_zeros.negative, fig.big_zeros.positive, fig.small_zeros.negative, fig.small_zeros.positive)
    )
    ok = fig.holds and counts == (5, 5, 4, 4) and abs(at0 - closed) <= 2**10 * tolerance().rel_identity * abs(closed)
    acceptance(
        4,
        "degree-5/4 figure: zero counts and interlacing on both subintervals",
        ok,
        f"counts {counts}, patterns {fig.left.pattern}/{fig.right.pattern}",
    )
    assert ok


def test_c05_interlacing(acceptance):
    names = [
        "interlace_aj_alpha_shift",
        "interlace_aj_beta_shift",
        "interlace_aj_gamma_shift",
        "interlace_jl_beta_shift",
        "interlace_jl_gamma_shift",
        "interlace_lh_gamma_shift",
        "jacobi_shift_interlacing",
        "companion_interlacing",
    ]
    selected = props(suite("interlacing", 200, 7), names)
    ok, detail = summarize(selected)
    ok &= all(p.cases >= 200 for p in selected if not p.name.endswith("_numerics"))
    acceptance(5, "interlacing properties over 200 seeded cases", ok, detail)
    assert ok


def test_c06_monotonicity(acceptance):
    mono = props(
        suite("monotonicity", 100, 5),
        [
            "aj_alpha_beta_monotonicity",
            "aj_symmetric_gamma_pattern",
            "aj_a_increasing",
            "aj_large_gamma_pattern",
            "jacobi_zero_monotonicity",
        ],
    )
    ok, detail = summarize(mono)
    acceptance(6, "zero monotonicity signs in alpha, beta, a, large gamma and for Jacobi zeros", ok, detail)
    assert ok


def test_c07_means(acceptance):
    names = [
        "arithmetic_mean",
        "arithmetic_mean_gamma_derivative",
        "geometric_mean_vs_constant_term",
        "geometric_mean_vs_zero_product",
        "geo_mean_log_derivative_positive",
        "geo_mean_log_derivative_vs_fd",
    ]
    ok, detail = summarize(props(suite("means", 100, 13, 6), names))
    acceptance(7, "arithmetic and geometric mean laws", ok, detail)
    assert ok


def test_c08_f_function(acceptance):
    p, *numerics = props(suite("means", 100, 13, 6), ["f_function_vanishing"])
    ok = p.passed and not numerics
    acceptance(
        8,
        "f-function vanishes at every zero, n<=6",
        ok,
        f"worst {mpmath.nstr(p.worst, 3)} vs {mpmath.nstr(p.threshold, 3)}",
    )
    assert ok


def test_c09_endpoint_approach(acceptance):
    dist, gaps, ok = suites.endpoint_approach()
    detail = "distances " + ", ".join(mpmath.nstr(d, 4) for d in dist) + f"; 2*gap {mpmath.nstr(2 * gaps[-1], 4)}"
    acceptance(9, "zeros approach the endpoints as gamma grows", ok, detail)
    assert ok


def test_c10_limits(acceptance):
    selected = props(suite("limits", 30, 21, 3), ["limit_jacobi_laguerre", "limit_laguerre_hermite"])
    ok, detail = summarize(selected)
    acceptance(10, "limit relations: decreasing errors, empirical order >= 0.9", ok, detail)
    assert ok


def test_c11_electrostatics(acceptance):
    selected = props(suite("electro", 100, 17, 8), ["stieltjes_gradient", "stieltjes_minimizer"])
    ok, detail = summarize(selected)
    acceptance(11, "Jacobi zeros are the energy minimizer, n<=8", ok, detail)
    assert ok


def test_c12_endpoint_derivative(acceptance):
    p, *numerics = props(suite("monotonicity", 100, 5), ["endpoint_derivative_identities"])
    ok = p.passed and p.cases >= 50 and not numerics
    acceptance(12, "endpoint-derivative identities below 1e-8", ok, f"{p.cases} cases, worst {mpmath.nstr(p.worst, 3)}")
    assert ok


def test_c13_gamma_sweep(acceptance):
    grid = parse_range("-0.9:50:0.5")
    ok = True
    parts = []
    for n in (1, 2, 3, 4):
        res = run_sweep("aj", n, {"alpha": "-0.5", "beta": 1, "a": -2}, "gamma", grid)
        complete = len(res.records) == len(grid) and all(r.zeros for r in res.records)
        ok &= complete and res.failures == 0
        star = "none" if res.gamma_star is None else exact_decimal(res.gamma_star)
        parts.append(f"n={n}: {len(res.records)} rows, {res.failures} failures, gamma* {star}")
    acceptance(13, "gamma sweep over (-0.9, 50] completes for n<=4", ok, "; ".join(parts))
    assert ok
