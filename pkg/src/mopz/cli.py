"""``mopz`` command line: build, zeros, verify, sweep, limits, energy, plot-fig1.

Exit codes: 0 when everything checked passes, 1 on a property or numerical
failure, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import mpmath
from mpmath import mpf

from . import figure, suites
from .angelesco import MAX_N, ParamSet, build_aj, constant_term
from .electro import build_classical_jacobi, jacobi_zeros, stieltjes_check
from .limits import JLParams, LHParams, build_jl, build_lh, limit_convergence
from .numeric import (
    DomainError,
    NumericalError,
    default_precision,
    precision,
    to_real,
    tolerance,
)
from .report import RunManifest, dump_csv, dump_json, exact_decimal, fmt, jsonable
from .sweep import COLUMN_DOC, COLUMNS, parse_range, run_sweep
from .zeros import find_zeros

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILIES = ("aj", "jl", "lh", "jacobi")
DEFAULT_ALPHA_GRID = "100,1000,10000,100000"


class UsageError(Exception):
    pass


# -- argument parsing ------------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Registered on the root parser and on every subparser so the flags work on
    # either side of the subcommand; SUPPRESS keeps the subparser from
    # overwriting a value given before it.
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prec", type=int, default=d, help="working precision in bits (default: MOPZ_PREC or 192)")
    parser.add_argument("--seed", type=int, default=d, help="seed for random sampling (u64, default 0)")
    parser.add_argument("--out", default=d, help="output file, or directory for plot-fig1 (default: stdout / .)")
    parser.add_argument("--format", choices=("json", "csv"), default=d, help="output format")


def _param_flags(p: argparse.ArgumentParser) -> None:
    for name in ("alpha", "beta", "gamma", "a"):
        p.add_argument(f"--{name}", help=f"value of {name} (decimal string, parsed at --prec)")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="mopz", description=__doc__.splitlines()[0])
    _global_flags(root, suppress=False)
    sub = root.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    for name, help_ in (("build", "coefficients of one polynomial"), ("zeros", "zeros of one polynomial")):
        p = add(name, help_)
        p.add_argument("--family", choices=FAMILIES, required=True)
        p.add_argument("--n", type=int, required=True)
        _param_flags(p)

    p = add("verify", "run a randomized property suite")
    p.add_argument("--suite", choices=(*suites.SUITES, "all"), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)

    p = add("sweep", "sweep one parameter and record zeros and sensitivities")
    p.add_argument("--family", choices=("aj", "jl", "lh"), default="aj")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--wrt", choices=("alpha", "beta", "gamma", "a"), required=True)
    p.add_argument("--range", dest="grid", required=True, metavar="LO:HI:STEP")
    p.add_argument("--shift-beta", action="store_true", help="sweep P_n with beta+1 in place of beta")
    p.add_argument("--jobs", type=int, default=1)
    _param_flags(p)

    p = add("limits", "convergence of rescaled Angelesco-Jacobi polynomials to their limits")
    p.add_argument("--family", choices=("jl", "lh"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-grid", default=DEFAULT_ALPHA_GRID)
    for name in ("beta", "gamma", "a"):
        p.add_argument(f"--{name}")

    p = add("energy", "Stieltjes minimizer check at classical Jacobi zeros")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--hessian", action="store_true", help="also check the Hessian is positive definite")

    p = add("plot-fig1", "sample data, gnuplot script and zeros for the degree-5/4 figure")
    p.add_argument("--points", type=int, default=figure.FIG1_POINTS)
    return root


# -- helpers -----------------------------------------------------------------------------------


def _real(args, name, required=True):
    raw = getattr(args, name, None)
    if raw is None:
        if required:
            raise UsageError(f"--{name} is required here")
        return None
    try:
        return to_real(raw)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--{name}: cannot parse {raw!r} as a number") from exc


def _check_n(n: int, lo: int = 0, hi: int = MAX_N) -> int:
    if not lo <= n <= hi:
        raise DomainError(f"n must lie in [{lo}, {hi}], got {n}")
    return n


def _family_poly(args):
    fam, n = args.family, args.n
    if fam == "aj":
        _check_n(n)
        p = ParamSet(_real(args, "alpha"), _real(args, "beta"), _real(args, "gamma"), _real(args, "a"))
        return build_aj(n, p), {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "a": p.a}
    if fam == "jl":
        _check_n(n, hi=8)
        q = JLParams(_real(args, "beta"), _real(args, "gamma"), _real(args, "a"))
        return build_jl(n, q), {"beta": q.beta, "gamma": q.gamma, "a": q.a}
    if fam == "lh":
        _check_n(n, hi=8)
        g = LHParams(_real(args, "gamma"))
        return build_lh(n, g), {"gamma": g.gamma}
    _check_n(n, hi=64)
    al, be = _real(args, "alpha"), _real(args, "beta")
    return build_classical_jacobi(n, al, be), {"alpha": al, "beta": be}


class Output:
    def __init__(self, args, manifest: RunManifest, default_format: str = "json"):
        self.path = getattr(args, "out", None)
        self.format = getattr(args, "format", None) or default_format
        self.manifest = manifest

    def json(self, payload: dict) -> str:
        return dump_json(jsonable({**payload, "manifest": self.manifest.as_dict()}))

    def csv(self, header, rows, extra=()) -> str:
        cells = [[c if isinstance(c, str) else fmt(c) for c in r] for r in rows]
        return dump_csv(header, cells, self.manifest.comment_lines() + list(extra))

    def write(self, text: str) -> None:
        if self.path in (None, "-"):
            sys.stdout.write(text)
        else:
            Path(self.path).write_text(text, encoding="utf-8")


# -- commands ----------------------------------------------------------------------------------


def cmd_build(args, out: Output) -> int:
    poly, params = _family_poly(args)
    check = None
    if args.family == "aj":
        p = poly.params
        closed = constant_term(args.n, p)
        err = abs(poly.coeffs[0] - closed) / max(abs(closed), mpf(2) ** -mpmath.mp.prec)
        check = {
            "closed_form": closed,
            "computed": poly.coeffs[0],
            "relative_error": err,
            "passed": bool(err < tolerance().rel_identity),
        }
    if out.format == "csv":
        out.write(out.csv(["power", "coefficient"], [[i, c] for i, c in enumerate(poly.coeffs)]))
    else:
        out.write(
            out.json(
                {
                    "family": args.family,
                    "n": args.n,
                    "params": params,
                    "precision_bits": out.manifest.precision_bits,
                    "coeffs": list(poly.coeffs),
                    "constant_term_check": check,
                }
            )
        )
    return EXIT_OK if check is None or check["passed"] else EXIT_FAIL


def cmd_zeros(args, out: Output) -> int:
    poly, params = _family_poly(args)
    if args.family == "jacobi":
        zs = jacobi_zeros(args.n, params["alpha"], params["beta"])
        neg, pos, refined = (), tuple(zs), None
        groups = [("(-1,1)", z) for z in zs]
    else:
        found = find_zeros(poly)
        neg, pos, refined = found.negative, found.positive, found.refined_to
        left = {"aj": "(a,0)", "jl": "(a,0)", "lh": "(-inf,0)"}[args.family]
        right = {"aj": "(0,1)", "jl": "(0,inf)", "lh": "(0,inf)"}[args.family]
        groups = [(left, z) for z in neg] + [(right, z) for z in pos]
    if out.format == "csv":
        out.write(out.csv(["index", "interval", "zero"], [[i + 1, g, z] for i, (g, z) in enumerate(groups)]))
    else:
        out.write(
            out.json(
                {
                    "family": args.family,
                    "n": args.n,
                    "params": params,
                    "precision_bits": out.manifest.precision_bits,
                    "negative": list(neg),
                    "positive": list(pos),
                    "refined_to": refined,
                }
            )
        )
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    try:
        reports = [suites.run_suite(s, args.trials, out.manifest.seed, args.n_max, args.jobs) for s in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    passed = all(r.passed for r in reports)
    for r in reports:
        for name in r.failed():
            print(f"FAIL {r.suite}/{name}", file=sys.stderr)
    if out.format == "csv":
        rows = [
            [r.suite, p.name, "pass" if p.passed else "fail", p.cases, p.failures, p.worst, p.threshold]
            for r in reports
            for p in r.properties
        ]
        out.write(out.csv(["suite", "property", "result", "cases", "failures", "worst", "threshold"], rows))
    else:
        out.write(out.json({"passed": passed, "suites": [r.as_dict() for r in reports]}))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_sweep(args, out: Output) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    _check_n(args.n, lo=1, hi=MAX_N if args.family == "aj" else 8)
    try:
        grid = parse_range(args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    params = {k: _real(args, k, required=False) for k in ("alpha", "beta", "gamma", "a")}
    if args.shift_beta:
        if params["beta"] is None and args.wrt != "beta":
            raise UsageError("--shift-beta needs --beta")
        if args.wrt == "beta":
            grid = [g + 1 for g in grid]
        else:
            params["beta"] += 1
    try:
        result = run_sweep(args.family, args.n, params, args.wrt, grid, args.jobs)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(str(exc)) from exc
    fmt_format = getattr(args, "format", None) or "csv"
    rows = []
    for r in result.records:
        v = r.verdicts or {}
        rows.append(
            [
                r.family,
                str(r.n),
                *(
                    (r.label or fmt(r.value)) if k == r.wrt else fmt(r.params[k]) if k in r.params else ""
                    for k in ("alpha", "beta", "gamma", "a")
                ),
                r.wrt,
                r.label or fmt(r.value),
                r.status,
                ";".join(fmt(z) for z in r.zeros),
                ";".join(fmt(s) for s in r.sensitivities),
                r.signs,
                *(
                    "" if v.get(k) is None else fmt(v[k])
                    for k in ("gamma_pattern", "all_increasing", "all_decreasing", "companion_interlacing")
                ),
            ]
        )
    star = "none" if result.gamma_star is None else exact_decimal(result.gamma_star)
    if fmt_format == "json":
        out.write(
            out.json(
                {
                    "columns": list(COLUMNS),
                    "records": [dict(zip(COLUMNS, row)) for row in rows],
                    "gamma_star": star if args.wrt == "gamma" else None,
                    "shift_beta": args.shift_beta,
                    "isolation_failures": result.failures,
                }
            )
        )
    else:
        comments = out.manifest.comment_lines() + [
            f"# shift_beta: {'true' if args.shift_beta else 'false'}",
            f"# gamma_star: {star if args.wrt == 'gamma' else 'n/a'}",
            f"# isolation_failures: {result.failures}",
            f"# columns: {COLUMN_DOC}",
        ]
        out.write(dump_csv(COLUMNS, rows, comments))
    return EXIT_OK if result.failures == 0 else EXIT_FAIL


def cmd_limits(args, out: Output) -> int:
    _check_n(args.n, lo=1, hi=6)
    try:
        grid = [to_real(g) for g in args.alpha_grid.split(",")]
    except ValueError as exc:
        raise UsageError(f"--alpha-grid: {exc}") from exc
    if args.family == "jl":
        params = JLParams(_real(args, "beta"), _real(args, "gamma"), _real(args, "a"))
    else:
        params = LHParams(_real(args, "gamma"))
    try:
        table = limit_convergence(args.family, args.n, params, grid)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(str(exc)) from exc
    orders = list(table.orders)
    multi = len(table.rows) > 1
    order = table.empirical_order if multi else None
    fitted = table.fitted_order if multi else None
    ok = table.decreasing and (order is None or order >= mpf("0.9"))
    if out.format == "csv":
        rows = [[r.alpha, r.error, orders[i - 1] if i else ""] for i, r in enumerate(table.rows)]
        out.write(
            out.csv(
                ["alpha", "error", "order"],
                rows,
                [f"# empirical_order: {fmt(order)}", f"# fitted_order: {fmt(fitted)}"],
            )
        )
    else:
        out.write(
            out.json(
                {
                    "family": args.family,
                    "n": args.n,
                    "rows": [{"alpha": r.alpha, "error": r.error} for r in table.rows],
                    "orders": orders,
                    "empirical_order": order,
                    "fitted_order": fitted,
                    "decreasing": table.decreasing,
                    "passed": ok,
                }
            )
        )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_energy(args, out: Output) -> int:
    _check_n(args.n, lo=1, hi=64)
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    rep = stieltjes_check(
        args.n, _real(args, "alpha"), _real(args, "beta"), args.trials, out.manifest.seed, args.hessian
    )
    bound = 1000 * tolerance().rel_identity
    ok = rep.gradient_norm < bound and rep.minimizer_holds and rep.hessian_positive is not False
    payload = {
        "n": rep.n,
        "alpha": rep.alpha,
        "beta": rep.beta,
        "seed": rep.seed,
        "trials": args.trials,
        "gradient_norm": rep.gradient_norm,
        "gradient_bound": bound,
        "energy_at_zeros": rep.energy_at_zeros,
        "min_perturbed_energy": rep.min_perturbed_energy,
        "minimizer_holds": rep.minimizer_holds,
        "hessian_positive": rep.hessian_positive,
        "passed": bool(ok),
    }
    if out.format == "csv":
        out.write(out.csv(["quantity", "value"], [[k, v if v is not None else ""] for k, v in payload.items()]))
    else:
        out.write(out.json(payload))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_plot_fig1(args, out: Output) -> int:
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    directory = Path(out.path or ".")
    directory.mkdir(parents=True, exist_ok=True)
    fig = figure.figure1(args.points)
    rows = list(zip(fig.labels, fig.big_values, fig.small_values))
    header = ["x", "P5(x)", "P4(x)"]
    (directory / "fig1.csv").write_text(out.csv(header, rows), encoding="utf-8")
    (directory / "fig1.gp").write_text(
        figure.gnuplot_script("fig1.csv", figure.y_extent(fig), out.manifest.comment_lines()), encoding="utf-8"
    )
    at0, closed = figure.constant_term_check(fig)

    def verdict(v):
        return {"holds": v.holds, "pattern": v.pattern, "first_violation": v.first_violation}

    payload = {
        "params_big": figure.FIG1_PARAMS.as_strings(),
        "params_small": figure.FIG1_PARAMS.raised().as_strings(),
        "big": {"n": figure.FIG1_N, "negative": list(fig.big_zeros.negative), "positive": list(fig.big_zeros.positive)},
        "small": {
            "n": figure.FIG1_N - 1,
            "negative": list(fig.small_zeros.negative),
            "positive": list(fig.small_zeros.positive),
        },
        "interlacing": {"(a,0)": verdict(fig.left), "(0,1)": verdict(fig.right)},
        "value_at_zero": at0,
        "constant_term": closed,
        "holds": fig.holds,
    }
    (directory / "fig1.json").write_text(out.json(payload), encoding="utf-8")
    print(f"wrote {directory / 'fig1.csv'}, {directory / 'fig1.gp'}, {directory / 'fig1.json'}", file=sys.stderr)
    return EXIT_OK if fig.holds else EXIT_FAIL


COMMANDS = {
    "build": cmd_build,
    "zeros": cmd_zeros,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "limits": cmd_limits,
    "energy": cmd_energy,
    "plot-fig1": cmd_plot_fig1,
}


def _join_negative_values(argv: list) -> list:
    # argparse would read "--range -3:-0.1:0.1" as two options
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--range", "--alpha-grid") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        bits = args.prec if args.prec is not None else default_precision()
        seed = 0 if args.seed is None else args.seed
        if not 0 <= seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        with precision(bits):
            manifest = RunManifest.create(argv, bits, seed)
            args.seed = seed
            out = Output(args, manifest)
            return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        print(f"mopz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"mopz: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
