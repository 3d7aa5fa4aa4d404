"""One-parameter sweeps of zeros and their sensitivities."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mpf

from .angelesco import ParamSet, build_aj
from .limits import JLParams, build_jl, build_lh
from .numeric import DomainError, NumericalError, precision, session_precision, to_real
from .relations import default_step, gamma_sign_pattern, gamma_threshold
from .report import exact_decimal
from .zeros import check_interlacing, find_zeros

FAMILY_PARAMS = {
    "aj": ("alpha", "beta", "gamma", "a"),
    "jl": ("beta", "gamma", "a"),
    "lh": ("gamma",),
}
MAX_POINTS = 100_000

COLUMNS = (
    "family",
    "n",
    "alpha",
    "beta",
    "gamma",
    "a",
    "wrt",
    "value",
    "status",
    "zeros",
    "sensitivities",
    "signs",
    "gamma_pattern",
    "all_increasing",
    "all_decreasing",
    "companion_interlacing",
)

COLUMN_DOC = (
    "zeros and sensitivities are ';'-separated in increasing zero order; "
    "signs is one of +/-/0 per zero; gamma_pattern: first n sensitivities negative and "
    "last n positive; all_increasing/all_decreasing: every sensitivity positive/negative; "
    "companion_interlacing: P_n < P_(n-1) with all parameters raised, on both subintervals (aj, n >= 2); "
    "status is ok or the isolation failure message"
)


def parse_range(text: str) -> list:
    """``lo:hi:step`` as an exact list of Fractions lo, lo+step, ... <= hi."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (Fraction(s.strip()) for s in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad range {text!r}: {exc}") from exc
    if step <= 0:
        raise ValueError(f"range step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    count = int((hi - lo) / step) + 1
    if count > MAX_POINTS:
        raise ValueError(f"range has {count} points, more than {MAX_POINTS}")
    return [lo + k * step for k in range(count)]


def _build(family: str, n: int, params: dict):
    if family == "aj":
        return build_aj(n, ParamSet(params["alpha"], params["beta"], params["gamma"], params["a"]))
    if family == "jl":
        return build_jl(n, JLParams(params["beta"], params["gamma"], params["a"]))
    if family == "lh":
        return build_lh(n, params["gamma"])
    raise ValueError(f"family must be one of {', '.join(FAMILY_PARAMS)}, got {family!r}")


def check_base(family: str, wrt: str, params: dict) -> dict:
    """Validate the family/parameter combination and convert values to mpf."""
    if family not in FAMILY_PARAMS:
        raise ValueError(f"family must be one of {', '.join(FAMILY_PARAMS)}, got {family!r}")
    names = FAMILY_PARAMS[family]
    if wrt not in names:
        raise ValueError(f"family {family} has no parameter {wrt!r}; choose from {names}")
    out = {}
    for k in names:
        if k == wrt:
            continue
        if params.get(k) is None:
            raise ValueError(f"--{k} is required for family {family}")
        out[k] = to_real(params[k])
    return out


@dataclass(frozen=True)
class SweepRecord:
    family: str
    n: int
    params: dict
    wrt: str
    value: mpf
    status: str
    zeros: tuple = ()
    sensitivities: tuple = ()
    verdicts: dict | None = None
    label: str = ""

    @property
    def signs(self) -> str:
        return "".join("+" if v > 0 else "-" if v < 0 else "0" for v in self.sensitivities)


def sweep_point(family: str, n: int, params: dict, wrt: str, value) -> SweepRecord:
    label = exact_decimal(value)
    value = to_real(value)
    here = dict(params, **{wrt: value})
    try:
        h = default_step()
        zs = find_zeros(_build(family, n, here))
        z_up = find_zeros(_build(family, n, dict(here, **{wrt: value + h}))).all
        z_dn = find_zeros(_build(family, n, dict(here, **{wrt: value - h}))).all
        sens = tuple((u - d) / (2 * h) for u, d in zip(z_up, z_dn))
        verdicts = {
            "gamma_pattern": gamma_sign_pattern(sens, n),
            "all_increasing": all(v > 0 for v in sens),
            "all_decreasing": all(v < 0 for v in sens),
            "companion_interlacing": None,
        }
        if family == "aj" and n >= 2:
            p = ParamSet(here["alpha"], here["beta"], here["gamma"], here["a"])
            inner = find_zeros(build_aj(n - 1, p.raised())).all
            verdicts["companion_interlacing"] = bool(
                check_interlacing(inner, zs.all, (p.a, 0)) and check_interlacing(inner, zs.all, (0, 1))
            )
        return SweepRecord(family, n, here, wrt, value, "ok", zs.all, sens, verdicts, label)
    except (NumericalError, DomainError) as exc:
        return SweepRecord(family, n, here, wrt, value, f"{type(exc).__name__}: {exc}", label=label)


def _point_job(job):
    bits, args = job
    with precision(bits):
        return sweep_point(*args)


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    gamma_star: mpf | None

    @property
    def failures(self) -> int:
        return sum(r.status != "ok" for r in self.records)


def run_sweep(family: str, n: int, params: dict, wrt: str, grid, jobs: int = 1) -> SweepResult:
    """Sweep ``wrt`` over ``grid`` (any order; records come back sorted).

    ``gamma_star`` is reported for gamma sweeps: the smallest grid value from
    which the gamma sign pattern holds at every remaining point.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    base = check_base(family, wrt, params)
    points = sorted(grid)
    if not points:
        raise ValueError("empty grid")
    bits = session_precision()
    jobs_in = [(bits, (family, int(n), base, wrt, v)) for v in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = tuple(pool.map(_point_job, jobs_in))
    else:
        records = tuple(_point_job(j) for j in jobs_in)
    star = None
    if wrt == "gamma":
        holds = [r.status == "ok" and r.verdicts["gamma_pattern"] for r in records]
        star = gamma_threshold(points, holds)
    return SweepResult(records, star)
