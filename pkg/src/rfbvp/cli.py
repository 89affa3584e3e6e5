"""Command-line entry point: ``rfbvp {solve,sweep,weights,verify,fit}``.

Exit codes: 0 ok, 1 verification failure, 2 validation/input error,
3 solver failure, 4 fit failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import oracle
from .discretize import DirichletBC, Domain1D, assemble, build_grid
from .errors import (
    ConditioningWarning,
    InvalidDomain,
    NoFeasiblePoint,
    ParameterError,
    ProfileError,
    SolverError,
)
from .fit import FitConfig, fit
from .io import (
    RunManifest,
    jsonable,
    read_profile_csv,
    solution_csv,
    svg_plot,
    weights_csv,
    write_svg,
)
from .kernel import FractionalParams, SchemeWeights, build_weight_table
from .solve import lu_solve

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_SOLVER, EXIT_FIT = 0, 1, 2, 3, 4

PRESETS = {
    "fig2": {"alpha": [0.1, 0.5, 0.75, 1.01, 1.25, 1.5, 1.75, 2.0], "theta": [0.0]},
    "fig3": {"alpha": [1.01], "theta": [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99]},
}
BOUNDEDNESS_TOL = 0.02


class UsageError(Exception):
    pass


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(jsonable(payload), indent=2) + "\n", encoding="utf-8")


def _manifest(args, command: str, **overrides) -> RunManifest:
    fields = {
        "alpha": getattr(args, "alpha", None),
        "theta": getattr(args, "theta", None),
        "lambda1": args.lambda1,
        "lambda2": args.lambda2,
        "L": args.L,
        "R": args.R,
        "N": getattr(args, "N", None),
        "gL": getattr(args, "gl", None),
        "gR": getattr(args, "gr", None),
        "outputs": {k: getattr(args, k, None) for k in ("out", "json", "svg") if getattr(args, k, None)},
    }
    fields.update(overrides)
    return RunManifest(command=command, **fields)


def _solve_one(alpha, theta, args):
    domain = Domain1D(args.L, args.R, args.N)
    system = assemble(
        domain,
        FractionalParams(alpha, theta),
        SchemeWeights(args.lambda1, args.lambda2),
        DirichletBC(args.gl, args.gr),
    )
    return lu_solve(system)


# -- commands ----------------------------------------------------------------


def cmd_solve(args) -> int:
    try:
        sol = _solve_one(args.alpha, args.theta, args)
    except (ParameterError, InvalidDomain, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except SolverError as exc:
        return _fail(EXIT_SOLVER, f"solver failure: {exc}")

    x = sol.nodes
    text = solution_csv(x, sol.values)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    if args.json:
        _write_json(
            args.json,
            {
                "manifest": _manifest(args, "solve").to_dict(),
                "nodes": x,
                "values": sol.values,
                "residual_inf": sol.residual_inf,
            },
        )
    if args.svg:
        label = f"alpha={args.alpha:g}, theta={args.theta:g}"
        write_svg(args.svg, svg_plot([(label, x, sol.values)], title="Steady-state profile"))
    excess = sol.boundedness_excess(BOUNDEDNESS_TOL)
    if excess > 0:
        print(f"warning: profile leaves the boundary-value band by {excess:.3g}", file=sys.stderr)
    return EXIT_OK


def _sweep_combinations(args):
    if args.preset:
        preset = PRESETS[args.preset]
        alphas, thetas = preset["alpha"], preset["theta"]
    else:
        if args.alpha is None:
            raise UsageError("sweep needs --alpha values or --preset")
        alphas = args.alpha
        thetas = args.theta if args.theta is not None else [0.0]
    return list(itertools.product(alphas, thetas))


def cmd_sweep(args) -> int:
    try:
        combos = _sweep_combinations(args)
        # validate everything before writing anything
        for a, t in combos:
            try:
                FractionalParams(a, t)
            except ParameterError as exc:
                raise ParameterError(f"combination alpha={a:g}, theta={t:g}: {exc}") from None
        Domain1D(args.L, args.R, args.N)
        DirichletBC(args.gl, args.gr)
    except (UsageError, ParameterError, InvalidDomain, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))

    outdir = Path(args.out or "sweep_out")
    outdir.mkdir(parents=True, exist_ok=True)
    series, files, residuals = [], [], []
    for idx, (a, t) in enumerate(combos):
        try:
            sol = _solve_one(a, t, args)
        except SolverError as exc:
            return _fail(EXIT_SOLVER, f"combination alpha={a:g}, theta={t:g}: solver failure: {exc}")
        name = f"profile_{idx:02d}_alpha{a:g}_theta{t:g}.csv"
        (outdir / name).write_text(solution_csv(sol.nodes, sol.values), encoding="utf-8", newline="")
        files.append(str(outdir / name))
        residuals.append(sol.residual_inf)
        series.append((f"alpha={a:g}, theta={t:g}", sol.nodes, sol.values))
        excess = sol.boundedness_excess(BOUNDEDNESS_TOL)
        if excess > 0:
            print(
                f"warning: alpha={a:g}, theta={t:g} leaves the boundary-value band by {excess:.3g}",
                file=sys.stderr,
            )
        print(f"alpha={a:g} theta={t:g} -> {outdir / name}")

    svg_path = Path(args.svg) if args.svg else outdir / "sweep.svg"
    title = f"preset {args.preset}" if args.preset else "parameter sweep"
    write_svg(svg_path, svg_plot(series, title=title))
    if args.json:
        alphas = sorted({a for a, _ in combos})
        thetas = sorted({t for _, t in combos})
        _write_json(
            args.json,
            {
                "manifest": _manifest(args, "sweep", alpha=alphas, theta=thetas).to_dict(),
                "profiles": [
                    {"alpha": a, "theta": t, "csv": f, "residual_inf": r}
                    for (a, t), f, r in zip(combos, files, residuals)
                ],
            },
        )
    return EXIT_OK


def cmd_weights(args) -> int:
    try:
        params = FractionalParams(args.alpha, args.theta)
        table = build_weight_table(params, SchemeWeights(args.lambda1, args.lambda2), args.kmax)
    except (ParameterError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    text = weights_csv(table)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify_reports(args) -> list:
    scheme = SchemeWeights(args.lambda1, args.lambda2)
    chosen = (
        [FractionalParams(args.alpha, args.theta if args.theta is not None else 0.0)]
        if args.alpha is not None
        else None
    )
    bc = DirichletBC(args.gl, args.gr)
    checks = ["tails", "reduction", "symmetry", "convergence"] if args.check == "all" else [args.check]
    reports = []
    for check in checks:
        if check == "tails":
            for p in chosen or oracle.pinned_sweep():
                reports.append(oracle.tails_check(p, scheme, K=args.K))
        elif check == "reduction":
            theta = args.theta if args.theta is not None else 0.0
            reports.append(oracle.reduction_check(scheme, theta=theta))
        elif check == "symmetry":
            for p in chosen or oracle.pinned_sweep():
                reports.append(oracle.symmetry_check(p, bc, args.N or 64, scheme, args.L, args.R))
        elif check == "convergence":
            defaults = [FractionalParams(1.5, 0.0), FractionalParams(0.5, 0.25)]
            for p in chosen or defaults:
                reports.append(
                    oracle.convergence_study(p, bc, (32, 64, 128, 256), scheme, args.L, args.R)
                )
    return reports


def cmd_verify(args) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConditioningWarning)
            reports = _verify_reports(args)
    except (ParameterError, InvalidDomain, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except SolverError as exc:
        return _fail(EXIT_SOLVER, f"solver failure: {exc}")
    for r in reports:
        p = r.parameters
        print(
            f"{'PASS' if r.passed else 'FAIL'} {r.check:<11} alpha={p.get('alpha'):g} "
            f"theta={p.get('theta'):g} max_error={r.max_error:.3e} tol={r.tolerance:.3e}"
        )
    if args.json:
        _write_json(
            args.json,
            {
                "manifest": _manifest(args, f"verify {args.check}").to_dict(),
                "checks": [r.to_dict() for r in reports],
            },
        )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_fit(args) -> int:
    try:
        profile = read_profile_csv(args.data, args.L, args.R)
        bc = DirichletBC(args.gl, args.gr) if args.gl is not None and args.gr is not None else None
        if bc is None:
            bc = profile.infer_bc()
        config = FitConfig(N_fit=args.N or 200, scheme=SchemeWeights(args.lambda1, args.lambda2))
    except (ProfileError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        result = fit(profile, bc, config)
    except NoFeasiblePoint as exc:
        return _fail(EXIT_FIT, str(exc))

    payload = {
        "manifest": _manifest(
            args,
            "fit",
            alpha=result.alpha_star,
            theta=result.theta_star,
            L=profile.L,
            R=profile.R,
            N=config.N_fit,
            gL=bc.gL,
            gR=bc.gR,
            outputs={k: getattr(args, k) for k in ("data", "json", "svg") if getattr(args, k)},
        ).to_dict(),
        **result.as_dict(),
    }
    print(json.dumps(jsonable(result.as_dict())))
    if args.json:
        _write_json(args.json, payload)
    if args.svg:
        domain = Domain1D(profile.L, profile.R, config.N_fit)
        values = lu_solve(
            assemble(domain, FractionalParams(result.alpha_star, result.theta_star), config.scheme, bc)
        ).values
        label = f"fit alpha={result.alpha_star:.4g}, theta={result.theta_star:.4g}"
        write_svg(
            args.svg,
            svg_plot(
                [(label, build_grid(domain), values)],
                points=("data", profile.x, profile.T_obs),
                title="Observed profile and fitted solution",
            ),
        )
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_scheme(p):
    p.add_argument("--lambda1", type=float, default=0.0, help="scheme weight for alpha < 1")
    p.add_argument("--lambda2", type=float, default=0.0, help="scheme weight for alpha > 1")


def _add_domain(p, *, N=200, bounds=True, bc=True):
    if bounds:
        p.add_argument("--L", type=float, default=0.0)
        p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--N", type=int, default=N, help="number of sub-intervals")
    if bc:
        p.add_argument("--gl", type=float, default=2.0, help="boundary value at x=L")
        p.add_argument("--gr", type=float, default=1.0, help="boundary value at x=R")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rfbvp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one boundary value problem")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    _add_scheme(p)
    _add_domain(p)
    p.add_argument("--out", help="solution CSV (default: stdout)")
    p.add_argument("--json", help="JSON output with manifest, nodes, values, residual")
    p.add_argument("--svg", help="SVG line plot")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve over lists of alpha/theta")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--alpha", type=float, nargs="+")
    p.add_argument("--theta", type=float, nargs="+")
    _add_scheme(p)
    _add_domain(p)
    p.add_argument("--out", help="output directory for CSVs (default: sweep_out)")
    p.add_argument("--json", help="JSON manifest of the sweep")
    p.add_argument("--svg", help="combined SVG (default: <out>/sweep.svg)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("weights", help="tabulate weights and exterior sums")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--kmax", type=int, default=10)
    _add_scheme(p)
    p.add_argument("--out", help="weights CSV (default: stdout)")
    p.set_defaults(func=cmd_weights, L=0.0, R=1.0)

    p = sub.add_parser("verify", help="run oracle checks")
    p.add_argument("check", choices=["tails", "reduction", "symmetry", "convergence", "all"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--K", type=int, default=oracle.DEFAULT_K, help="brute-force truncation")
    _add_scheme(p)
    _add_domain(p, N=None)
    p.add_argument("--json", help="JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fit", help="fit (alpha, theta) to an x,T_obs profile")
    p.add_argument("--data", required=True, help="CSV with header x,T_obs")
    p.add_argument("--L", type=float, default=None, help="left bound (default: first x)")
    p.add_argument("--R", type=float, default=None, help="right bound (default: last x)")
    p.add_argument("--N", type=int, default=200, help="grid size inside the objective")
    p.add_argument("--gl", type=float, default=None, help="default: first T_obs")
    p.add_argument("--gr", type=float, default=None, help="default: last T_obs")
    _add_scheme(p)
    p.add_argument("--json", help="FitResult JSON")
    p.add_argument("--svg", help="SVG overlay of data and fitted profile")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
