"""Seeded randomized property suites behind ``mopz verify``.

Every suite draws its cases up front from ``random.Random(seed)``, evaluates
them (optionally in worker processes) and folds the observations into one
:class:`PropertyResult` per property, in input order.
"""

from __future__ import annotations

import itertools
import random
from collections import OrderedDict
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from . import angelesco, electro, limits, relations, zeros
from .angelesco import ParamSet, build_aj
from .limits import JLParams, build_jl, build_lh
from .numeric import NumericalError, precision, session_precision, tolerance
from .polynomial import eval_derivative, eval_poly
from .zeros import check_interlacing, find_zeros, with_extra_roots

EXPONENT_RANGE = (-0.9, 5.0)
A_RANGE = (-5.0, -0.2)
SAMPLING = (
    "alpha, beta, gamma ~ uniform(-0.9, 5); a ~ uniform(-5, -0.2); "
    "drawn as binary doubles from random.Random(seed) and used exactly"
)
JACOBI_SHIFTS = (0.5, 1.0, 1.9)
GAMMA_LARGE = (50, 500, 5000)
LIMIT_GRID = (100, 1000, 10000, 100000)
APPROACH_GRID = (100, 1000, 10000)


@dataclass(frozen=True)
class Obs:
    prop: str
    ok: bool
    value: mpf | None = None
    threshold: mpf | None = None
    detail: str | None = None


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: int = 0
    worst: mpf | None = None
    threshold: mpf | None = None
    failing_input: dict | None = None

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.failures == 0

    def add(self, obs: Obs, case: dict) -> None:
        self.cases += 1
        if obs.threshold is not None:
            self.threshold = obs.threshold
        if obs.value is not None and (self.worst is None or obs.value > self.worst):
            self.worst = obs.value
        if not obs.ok:
            self.failures += 1
            if self.failing_input is None:
                self.failing_input = dict(case)
                if obs.detail:
                    self.failing_input["detail"] = obs.detail


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    n_max: int
    properties: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.properties) and all(p.passed for p in self.properties)

    def failed(self) -> list:
        return [p.name for p in self.properties if not p.passed]

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "n_max": self.n_max,
            "sampling": SAMPLING,
            "passed": self.passed,
            "properties": [
                {
                    "name": p.name,
                    "passed": p.passed,
                    "cases": p.cases,
                    "failures": p.failures,
                    "worst": p.worst,
                    "threshold": p.threshold,
                    "failing_input": p.failing_input,
                }
                for p in self.properties
            ],
        }


# -- sampling ------------------------------------------------------------------------------


def _exp(rng: random.Random) -> float:
    return rng.uniform(*EXPONENT_RANGE)


def _a(rng: random.Random) -> float:
    return rng.uniform(*A_RANGE)


def _params(rng: random.Random) -> dict:
    return {"alpha": _exp(rng), "beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)}


def _ps(d: dict) -> ParamSet:
    return ParamSet(mpf(d["alpha"]), mpf(d["beta"]), mpf(d["gamma"]), mpf(d["a"]))


def _jl(d: dict) -> JLParams:
    return JLParams(mpf(d["beta"]), mpf(d["gamma"]), mpf(d["a"]))


def _x_in(rng: random.Random, lo: float, hi: float) -> float:
    x = rng.uniform(lo, hi)
    return x if x != 0 else (hi - lo) / 7


def _less(value, threshold, name, detail=None) -> Obs:
    return Obs(name, bool(value < threshold), value, threshold, detail)


def _verdict(name: str, checks) -> Obs:
    """AND over (label, InterlacingVerdict, expected pattern) triples."""
    for label, v, pattern in checks:
        if not v.holds or (pattern is not None and v.pattern != pattern):
            return Obs(name, False, None, None, f"{label}: pattern={v.pattern}, violation={v.first_violation}")
    return Obs(name, True)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# -- structure -----------------------------------------------------------------------------


def _draw_structure(rng, n_max, i):
    nj = min(n_max, 6)
    p = _params(rng)
    jl = {"beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)}
    return {
        "n": rng.randint(1, n_max),
        **p,
        "x": _x_in(rng, p["a"], 1.0),
        "n_jl": rng.randint(1, nj),
        "jl": jl,
        "x_jl": _x_in(rng, jl["a"], 2.0 * nj + 4),
        "n_lh": rng.randint(1, nj),
        "gamma_lh": _exp(rng),
        "x_lh": _x_in(rng, -3.0, 3.0),
    }


def _eval_structure(case):
    tol = tolerance().rel_identity
    p, n, x = _ps(case), case["n"], mpf(case["x"])
    out = []
    for kind in relations.KINDS:
        r = relations.structure_identity_residual(kind, n, p, x)
        out.append(_less(r, tol, f"structure_aj_{kind}"))
    sc = relations.structure_coeffs(n, p)
    out.append(Obs("structure_coeffs_sum_positive", sc.A + sc.B == 1 and sc.A > 0 and sc.B > 0))
    q, nj, xj = _jl(case["jl"]), case["n_jl"], mpf(case["x_jl"])
    for kind in ("beta", "gamma"):
        r = limits.structure_identity_jl(kind, nj, q, xj)
        out.append(_less(r, tol, f"jl_structure_{kind}"))
    r = limits.structure_identity_lh(case["n_lh"], mpf(case["gamma_lh"]), mpf(case["x_lh"]))
    out.append(_less(r, tol, "lh_structure"))
    return out


# -- raising -------------------------------------------------------------------------------


def _draw_raising(rng, n_max, i):
    nj = min(n_max, 6)
    p = _params(rng)
    jl = {"beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)}
    return {
        "n": rng.randint(1, n_max),
        **p,
        "x": _x_in(rng, p["a"], 1.0),
        "n_jl": rng.randint(1, nj),
        "jl": jl,
        "x_jl": _x_in(rng, jl["a"], 2.0 * nj + 4),
        "n_lh": rng.randint(1, nj),
        "gamma_lh": _exp(rng),
        "x_lh": _x_in(rng, -3.0, 3.0),
        "n_rod": rng.randint(0, min(n_max, 6)),
        "rod": [rng.randint(0, 3) for _ in range(3)],
    }


def _eval_raising(case):
    tol = tolerance().rel_identity
    out = [
        _less(angelesco.check_raising_aj(case["n"], _ps(case), mpf(case["x"])), tol, "raising_aj"),
        _less(limits.check_raising_jl(case["n_jl"], _jl(case["jl"]), mpf(case["x_jl"])), tol, "raising_jl"),
        _less(
            limits.check_raising_lh(case["n_lh"], mpf(case["gamma_lh"]), mpf(case["x_lh"])),
            tol,
            "raising_lh",
        ),
    ]
    al, be, ga = case["rod"]
    p = ParamSet(al, be, ga, mpf(case["a"]))
    out.append(Obs("rodrigues_integer_params", angelesco.check_rodrigues_integer_params(case["n_rod"], p)))
    return out


# -- orthogonality -------------------------------------------------------------------------


def _draw_orthogonality(rng, n_max, i):
    p = _params(rng)
    if i % 4 == 0:
        # keep a steady share of singular weights |x|^gamma with gamma < 0
        p["gamma"] = rng.uniform(-0.9, 0.0)
    return {
        "n": rng.randint(1, min(n_max, 6)),
        **p,
        "n_jl": rng.randint(1, min(n_max, 5)),
        "jl": {"beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)},
        "n_lh": rng.randint(1, min(n_max, 5)),
        "gamma_lh": _exp(rng),
    }


def _eval_orthogonality(case):
    tol = tolerance().rel_identity
    return [
        _less(angelesco.check_orthogonality(case["n"], _ps(case)), tol, "orthogonality_aj"),
        _less(limits.jl_orthogonality(case["n_jl"], _jl(case["jl"])), tol, "orthogonality_jl"),
        _less(limits.lh_orthogonality(case["n_lh"], mpf(case["gamma_lh"])), tol, "orthogonality_lh"),
    ]


# -- interlacing ---------------------------------------------------------------------------


def _draw_interlacing(rng, n_max, i):
    p = _params(rng)
    return {
        "n": rng.randint(2, max(2, n_max)),
        **p,
        "n_jl": rng.randint(2, max(2, min(n_max, 6))),
        "jl": {"beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)},
        "n_lh": rng.randint(2, max(2, min(n_max, 6))),
        "gamma_lh": _exp(rng),
        "n_jac": rng.randint(1, n_max),
        "jac": [_exp(rng), _exp(rng)],
    }


def _aj_sign_laws(n, p, P, inner, zP, zI, Pb, zPb):
    a = p.a
    neg, ineg = zP.negative, zI.negative
    ok = _sign(eval_poly(P, a)) == 1 and _sign(eval_poly(inner, a)) == 1
    for j in range(1, n):
        ok &= _sign(eval_poly(inner, neg[j - 1])) == (-1) ** (j + 1)
        ok &= _sign(eval_poly(P, ineg[j - 1])) == (-1) ** j
        ok &= _sign(eval_poly(inner, neg[j])) == (-1) ** j
    s0 = _sign(eval_poly(P, 0))
    ok &= s0 == (-1) ** n and s0 == -_sign(eval_poly(inner, 0))
    for j, x in enumerate(zPb.all, start=1):
        ok &= _sign(eval_derivative(Pb, x)) == (-1) ** j
        ok &= _sign(eval_poly(P, x)) == (-1) ** j
    return Obs("sign_laws_aj", bool(ok))


def _eval_interlacing(case):
    tol = tolerance()
    out = []
    n, p = case["n"], _ps(case)
    a = p.a
    P = build_aj(n, p)
    inner = build_aj(n - 1, p.raised())
    Pa = build_aj(n, p.shifted(alpha=1))
    Pb = build_aj(n, p.shifted(beta=1))
    Pg = build_aj(n, p.shifted(gamma=1))
    zP, zI, zPa, zPb, zPg = (find_zeros(f) for f in (P, inner, Pa, Pb, Pg))
    out.append(
        _verdict(
            "companion_interlacing",
            [
                ("(a,0)", check_interlacing(zI.all, zP.all, (a, 0)), "count_minus_one"),
                ("(0,1)", check_interlacing(zI.all, zP.all, (0, 1)), "count_minus_one"),
            ],
        )
    )
    prod_a0 = with_extra_roots(zI.all, [a, 0])
    prod_01 = with_extra_roots(zI.all, [0, 1])
    out.append(
        _verdict(
            "interlace_aj_alpha_shift",
            [
                ("x(x-a)inner < P^(alpha+1)", check_interlacing(zPa.all, prod_a0), "same_count"),
                ("P^(alpha+1) < P", check_interlacing(zP.all, zPa.all), "same_count"),
            ],
        )
    )
    out.append(
        _verdict(
            "interlace_aj_beta_shift",
            [
                ("P < P^(beta+1)", check_interlacing(zPb.all, zP.all), "same_count"),
                ("P^(beta+1) < x(x-1)inner", check_interlacing(prod_01, zPb.all), "same_count"),
            ],
        )
    )
    out.append(
        _verdict(
            "interlace_aj_gamma_shift",
            [
                ("(a,0) P^(gamma+1) < P", check_interlacing(zP.all, zPg.all, (a, 0)), "same_count"),
                ("(a,0) P < inner", check_interlacing(zI.all, zP.all, (a, 0)), "count_minus_one"),
                ("(0,1) P < P^(gamma+1)", check_interlacing(zPg.all, zP.all, (0, 1)), "same_count"),
                ("(0,1) P^(gamma+1) < inner", check_interlacing(zI.all, zPg.all, (0, 1)), "count_minus_one"),
            ],
        )
    )
    out.append(_aj_sign_laws(n, p, P, inner, zP, zI, Pb, zPb))

    nj, q = case["n_jl"], _jl(case["jl"])
    L = build_jl(nj, q)
    Lb = build_jl(nj, q.shifted(1, 0))
    Lg = build_jl(nj, q.shifted(0, 1))
    Li = build_jl(nj - 1, q.shifted(1, 1))
    zL, zLb, zLg, zLi = (find_zeros(f) for f in (L, Lb, Lg, Li))
    out.append(
        _verdict(
            "interlace_jl_beta_shift",
            [
                ("L < L^(beta+1)", check_interlacing(zLb.all, zL.all), "same_count"),
                ("L^(beta+1) < x inner", check_interlacing(with_extra_roots(zLi.all, [0]), zLb.all), "count_minus_one"),
            ],
        )
    )
    out.append(
        _verdict(
            "interlace_jl_gamma_shift",
            [
                ("(a,0) L^(gamma+1) < L", check_interlacing(zL.all, zLg.all, (q.a, 0)), "same_count"),
                ("(a,0) L < inner", check_interlacing(zLi.all, zL.all, (q.a, 0)), "count_minus_one"),
                ("(0,inf) L < L^(gamma+1)", check_interlacing(zLg.all, zL.all, (0, None)), "same_count"),
                ("(0,inf) L^(gamma+1) < inner", check_interlacing(zLi.all, zLg.all, (0, None)), "count_minus_one"),
            ],
        )
    )
    nh, g = case["n_lh"], mpf(case["gamma_lh"])
    H, Hg, Hi = build_lh(nh, g), build_lh(nh, g + 1), build_lh(nh - 1, g + 1)
    zH, zHg, zHi = (find_zeros(f) for f in (H, Hg, Hi))
    out.append(
        _verdict(
            "interlace_lh_gamma_shift",
            [
                ("(-inf,0) H^(gamma+1) < H", check_interlacing(zH.all, zHg.all, (None, 0)), "same_count"),
                ("(-inf,0) H < inner", check_interlacing(zHi.all, zH.all, (None, 0)), "count_minus_one"),
                ("(0,inf) H < H^(gamma+1)", check_interlacing(zHg.all, zH.all, (0, None)), "same_count"),
                ("(0,inf) H^(gamma+1) < inner", check_interlacing(zHi.all, zHg.all, (0, None)), "count_minus_one"),
            ],
        )
    )
    gap = min(
        min(abs(x - y) for x in zL.all for y in zLi.all),
        min(abs(x - y) for x in zH.all for y in zHi.all),
    )
    out.append(Obs("no_common_zeros_with_companion", bool(gap > tol.zero_cluster), None, None, f"min gap {gap}"))
    scale = max(abs(z) for z in zH.all)
    sym = max(abs(u + v) for u, v in zip(zH.negative, reversed(zH.positive))) / scale
    out.append(_less(sym, tol.rel_identity, "lh_symmetry"))

    nc, (al, be) = case["n_jac"], (mpf(v) for v in case["jac"])
    base = electro.jacobi_zeros(nc, al, be)
    checks = []
    for t in JACOBI_SHIFTS:
        checks.append((f"alpha+{t}", check_interlacing(base, electro.jacobi_zeros(nc, al + t, be)), "same_count"))
        checks.append((f"beta+{t}", check_interlacing(electro.jacobi_zeros(nc, al, be + t), base), "same_count"))
    out.append(_verdict("jacobi_shift_interlacing", checks))
    return out


# -- means ---------------------------------------------------------------------------------


def _draw_means(rng, n_max, i):
    return {"n": rng.randint(1, min(n_max, 6)), **_params(rng)}


def _rel(u, v, floor=None):
    return abs(u - v) / max(abs(v), mpf(2) ** -40 if floor is None else floor)


def _eval_means(case):
    tol = tolerance().rel_identity
    n, p = case["n"], _ps(case)
    P = build_aj(n, p)
    zs = find_zeros(P)
    out = []
    mean = mpmath.fsum(zs.all) / (2 * n)
    out.append(_less(abs(mean - relations.arithmetic_mean(n, p)), tol, "arithmetic_mean"))
    sens = relations.zero_sensitivities(n, p, "gamma")
    fd = mpmath.fsum(sens.values) / (2 * n)
    d = relations.arithmetic_mean_gamma_derivative(n, p)
    out.append(_less(_rel(fd, d), mpf("1e-6"), "arithmetic_mean_gamma_derivative"))
    g = relations.geometric_mean_at_zero(n, p)
    out.append(_less(_rel(g, abs(eval_poly(P, 0))), tol, "geometric_mean_vs_constant_term"))
    prod = mpmath.fprod(abs(z) for z in zs.all)
    out.append(_less(_rel(g, prod), tol, "geometric_mean_vs_zero_product"))
    dlog = relations.geo_mean_log_gamma_derivative(n, p)
    h = relations.default_step()
    up = relations.geometric_mean_at_zero(n, p.shifted(gamma=h))
    dn = relations.geometric_mean_at_zero(n, p.shifted(gamma=-h))
    fd_log = (mpmath.log(up) - mpmath.log(dn)) / (2 * h)
    out.append(Obs("geo_mean_log_derivative_positive", bool(dlog > 0)))
    out.append(_less(_rel(fd_log, dlog), mpf("1e-6"), "geo_mean_log_derivative_vs_fd"))
    ct = angelesco.constant_term(n, p)
    out.append(_less(_rel(eval_poly(P, 0), ct), tol, "constant_term_law"))
    inner = find_zeros(build_aj(n - 1, p.raised())) if n > 1 else ()
    worst = mpf(0)
    for x in zs.all:
        r = abs(zeros.f_function(x, p, inner)) / zeros.f_function_scale(x, p, inner)
        worst = max(worst, r)
    out.append(_less(worst, 1000 * tol, "f_function_vanishing"))
    return out


def endpoint_approach() -> tuple:
    """Distances to the endpoints on the fixed gamma grid and the implied gaps."""
    dist, gaps = [], []
    for g in APPROACH_GRID:
        p = ParamSet(0, 0, g, -1)
        dist.append(relations.endpoint_distance(find_zeros(build_aj(2, p)), p))
        gaps.append(max(abs(p.a), 1) * relations.endpoint_gap_bound(2, p))
    decreasing = all(d1 < d0 for d0, d1 in itertools.pairwise(dist))
    return dist, gaps, decreasing and dist[-1] < 2 * gaps[-1]


# -- monotonicity --------------------------------------------------------------------------


def _draw_monotonicity(rng, n_max, i):
    n = rng.randint(1, min(n_max, 6))
    return {
        "n": n,
        **_params(rng),
        "n_large": rng.randint(1, min(n_max, 4)),
        "gamma_large": GAMMA_LARGE[i % len(GAMMA_LARGE)],
        "n_endpoint": rng.randint(1, min(n_max, 5)),
        "x_endpoint": rng.uniform(0.0, 1.0),
        "n_jac": rng.randint(1, n_max),
        "jac": [_exp(rng), _exp(rng)],
    }


def _all_signs(values, s) -> bool:
    return all(_sign(v) == s for v in values)


def _eval_monotonicity(case):
    n, p = case["n"], _ps(case)
    out = []
    sa = relations.zero_sensitivities(n, p, "alpha")
    sb = relations.zero_sensitivities(n, p, "beta")
    out.append(Obs("aj_alpha_beta_monotonicity", _all_signs(sa.values, -1) and _all_signs(sb.values, 1)))
    sym = ParamSet(p.alpha, p.alpha, p.gamma, -1)
    sg = relations.zero_sensitivities(n, sym, "gamma")
    out.append(Obs("aj_symmetric_gamma_pattern", relations.gamma_sign_pattern(sg.values, n)))
    s4 = relations.zero_sensitivities(n, p.shifted(beta=1), "a")
    out.append(Obs("aj_a_increasing", _all_signs(s4.values, 1)))
    nl = case["n_large"]
    big = ParamSet(p.alpha, p.beta, case["gamma_large"], p.a)
    s2 = relations.zero_sensitivities(nl, big, "gamma")
    out.append(Obs("aj_large_gamma_pattern", relations.gamma_sign_pattern(s2.values, nl)))
    n4 = case["n_endpoint"]
    x = p.a + (1 - p.a) * mpf(case["x_endpoint"])
    e1, e2 = relations.endpoint_derivative_residuals(n4, p, x)
    out.append(_less(max(e1, e2), mpf("1e-8"), "endpoint_derivative_identities"))
    nc, (al, be) = case["n_jac"], (mpf(v) for v in case["jac"])
    ja = electro.jacobi_zero_sensitivities(nc, al, be, "alpha")
    jb = electro.jacobi_zero_sensitivities(nc, al, be, "beta")
    out.append(Obs("jacobi_zero_monotonicity", _all_signs(ja, -1) and _all_signs(jb, 1)))
    return out


# -- electro -------------------------------------------------------------------------------


def _draw_electro(rng, n_max, i):
    return {
        "n": rng.randint(1, n_max),
        "alpha": _exp(rng),
        "beta": _exp(rng),
        "jitter_seed": rng.getrandbits(32),
    }


def _eval_electro(case):
    tol = tolerance().rel_identity
    n, al, be = case["n"], mpf(case["alpha"]), mpf(case["beta"])
    rep = electro.stieltjes_check(n, al, be, trials=100, seed=case["jitter_seed"], hessian=True)
    out = [
        _less(rep.gradient_norm, 1000 * tol, "stieltjes_gradient"),
        Obs(
            "stieltjes_minimizer",
            rep.minimizer_holds,
            None,
            None,
            f"E(zeros)={rep.energy_at_zeros}, min jittered={rep.min_perturbed_energy}",
        ),
        Obs("stieltjes_hessian_positive_definite", bool(rep.hessian_positive)),
        _less(electro.jacobi_orthogonality(n, al, be), tol, "jacobi_orthogonality"),
    ]
    ja = electro.jacobi_zero_sensitivities(n, al, be, "alpha")
    jb = electro.jacobi_zero_sensitivities(n, al, be, "beta")
    out.append(Obs("jacobi_zero_monotonicity", _all_signs(ja, -1) and _all_signs(jb, 1)))
    base = electro.jacobi_zeros(n, al, be)
    checks = []
    for t in JACOBI_SHIFTS:
        checks.append((f"alpha+{t}", check_interlacing(base, electro.jacobi_zeros(n, al + t, be)), "same_count"))
        checks.append((f"beta+{t}", check_interlacing(electro.jacobi_zeros(n, al, be + t), base), "same_count"))
    out.append(_verdict("jacobi_shift_interlacing", checks))
    return out


# -- limits --------------------------------------------------------------------------------


def _draw_limits(rng, n_max, i):
    return {
        "n": 1 + i % min(n_max, 3),
        "jl": {"beta": _exp(rng), "gamma": _exp(rng), "a": _a(rng)},
        "gamma_lh": _exp(rng),
    }


def _limit_obs(name, table):
    order = table.empirical_order
    ok = table.decreasing and order >= mpf("0.9")
    detail = "errors " + ", ".join(mpmath.nstr(r.error, 5) for r in table.rows)
    detail += f"; order {mpmath.nstr(order, 5)}, fitted {mpmath.nstr(table.fitted_order, 5)}"
    return Obs(name, bool(ok), None, None, detail)


def _eval_limits(case):
    n = case["n"]
    jl = limits.limit_convergence("jl", n, _jl(case["jl"]), LIMIT_GRID)
    lh = limits.limit_convergence("lh", n, limits.LHParams(mpf(case["gamma_lh"])), LIMIT_GRID)
    return [_limit_obs("limit_jacobi_laguerre", jl), _limit_obs("limit_laguerre_hermite", lh)]


# -- runner --------------------------------------------------------------------------------

SUITES: OrderedDict[str, tuple[Callable, Callable]] = OrderedDict(
    [
        ("structure", (_draw_structure, _eval_structure)),
        ("interlacing", (_draw_interlacing, _eval_interlacing)),
        ("raising", (_draw_raising, _eval_raising)),
        ("orthogonality", (_draw_orthogonality, _eval_orthogonality)),
        ("means", (_draw_means, _eval_means)),
        ("monotonicity", (_draw_monotonicity, _eval_monotonicity)),
        ("electro", (_draw_electro, _eval_electro)),
        ("limits", (_draw_limits, _eval_limits)),
    ]
)


def _evaluate(job):
    suite, case, bits = job
    _, evaluate = SUITES[suite]
    with precision(bits):
        try:
            return evaluate(case)
        except NumericalError as exc:
            return [Obs(f"{suite}_numerics", False, None, None, f"{type(exc).__name__}: {exc}")]


def draw_cases(suite: str, trials: int, seed: int, n_max: int) -> list:
    draw, _ = SUITES[suite]
    rng = random.Random(seed)
    return [draw(rng, n_max, i) for i in range(trials)]


def run_suite(suite: str, trials: int = 100, seed: int = 0, n_max: int = 8, jobs: int = 1) -> SuiteReport:
    """Run one property suite; observations are merged in case order."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= n_max <= angelesco.MAX_N:
        raise ValueError(f"n_max must lie in [1, {angelesco.MAX_N}]")
    if suite == "interlacing" and n_max < 2:
        raise ValueError("interlacing needs n_max >= 2")
    bits = session_precision()
    cases = draw_cases(suite, trials, seed, n_max)
    jobs_in = [(suite, c, bits) for c in cases]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, jobs_in))
    else:
        results = [_evaluate(j) for j in jobs_in]
    props: OrderedDict[str, PropertyResult] = OrderedDict()
    for idx, (case, observations) in enumerate(zip(cases, results)):
        labelled = {"case": idx, **case}
        for obs in observations:
            props.setdefault(obs.prop, PropertyResult(obs.prop)).add(obs, labelled)
    report = SuiteReport(suite, seed, trials, n_max, list(props.values()))
    if suite == "means":
        dist, gaps, ok = endpoint_approach()
        pr = PropertyResult("endpoint_approach")
        detail = "distances " + ", ".join(mpmath.nstr(d, 5) for d in dist)
        pr.add(Obs(pr.name, ok, dist[-1], 2 * gaps[-1], detail), {"gamma_grid": list(APPROACH_GRID)})
        report.properties.append(pr)
    return report
