"""Command-line front end emitting reproducible CSV/JSON artifacts.

Floats are written with 12 significant digits and '.' as the decimal
separator, so identical invocations produce byte-identical output.  CSV files
start with '#' comment lines carrying the run parameters.  Files are written
atomically (temp file + rename); without --out, output goes to stdout.  The
SIMPLEXWALK_OUTDIR environment variable, when set, is prepended to relative
--out paths.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__, dynamics, graph, spectral, subspace, theory
from .dynamics import Stage

_SWEEP_POINTS = 500
_EVOLVE_SAMPLES = 2000
_WIDTH_OFFSETS = 41


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _json_value(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(_fmt(float(x)))


def _graph_spec(args: argparse.Namespace) -> graph.GraphSpec:
    try:
        return graph.GraphSpec(M=args.M, w=getattr(args, "w", 1.0))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_output(args: argparse.Namespace, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    out = Path(args.out)
    outdir = os.environ.get("SIMPLEXWALK_OUTDIR")
    if outdir and not out.is_absolute():
        out = Path(outdir) / out
    out.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=out.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, out)
    except BaseException:
        os.unlink(tmp)
        raise


def _json_doc(payload: dict) -> str:
    return json.dumps({k: _json_value(v) for k, v in payload.items()}, indent=2) + "\n"


def cmd_predict(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    payload: dict = {"M": spec.M, "w": spec.w}
    payload.update(theory.predict(spec).to_dict())
    payload["validity_margin"] = theory.validity_margin(spec)
    _write_output(args, _json_doc(payload))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    if not 0 < args.lo < args.hi:
        raise UsageError("gamma range must satisfy 0 < lo < hi")
    if args.points < 2:
        raise UsageError("points must be >= 2")
    result = spectral.gamma_sweep(spec, (args.lo, args.hi), args.points)
    lines = [
        f"# simplexwalk {__version__} sweep M={spec.M} w={_fmt(spec.w)} "
        f"lo={_fmt(args.lo)} hi={_fmt(args.hi)} points={args.points}",
        "gamma," + ",".join(f"{tag}_{k}" for tag in spectral.PROBE_TAGS for k in range(7)),
    ]
    for i, gamma in enumerate(result.gammas):
        row = [_fmt(gamma)]
        for tag in spectral.PROBE_TAGS:
            row.extend(_fmt(v) for v in result.curves[tag][i])
        lines.append(",".join(row))
    _write_output(args, "\n".join(lines) + "\n")
    return 0


def _schedule_from_args(args: argparse.Namespace, spec: graph.GraphSpec) -> list[Stage]:
    pred = theory.predict(spec)
    gamma1 = pred.gamma_c1 if args.gamma1 is None else args.gamma1
    gamma2 = pred.gamma_c2 if args.gamma2 is None else args.gamma2
    t1 = pred.t1 if args.t1 is None else args.t1
    t2 = pred.t2 if args.t2 is None else args.t2
    if t1 < 0 or t2 < 0:
        raise UsageError("stage durations must be >= 0")
    if gamma1 <= 0 or gamma2 <= 0:
        raise UsageError("stage gammas must be > 0")
    return [Stage(gamma1, t1), Stage(gamma2, t2)]


def cmd_evolve(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    if args.samples < 1:
        raise UsageError("samples must be >= 1")
    schedule = _schedule_from_args(args, spec)
    series = dynamics.run_schedule(spec, schedule, samples_per_stage=args.samples)
    stage_desc = " ".join(
        f"gamma_{k+1}={_fmt(s.gamma)} t_{k+1}={_fmt(s.duration)}"
        for k, s in enumerate(schedule)
    )
    lines = [
        f"# simplexwalk {__version__} evolve M={spec.M} w={_fmt(spec.w)} "
        f"samples={args.samples}",
        f"# stages: {stage_desc}",
        "# stage_end_times: " + ",".join(_fmt(b) for b in series.stage_boundaries),
        "t,prob_a,prob_b,norm",
    ]
    for i, t in enumerate(series.times):
        lines.append(
            f"{_fmt(t)},{_fmt(series.prob_a[i])},{_fmt(series.prob_b[i])},"
            f"{_fmt(series.norm[i])}"
        )
    _write_output(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    if spec.M > 30:
        raise UsageError(
            "verify builds the full vertex space and is limited to M <= 30 "
            f"(N <= 930); got M={spec.M}"
        )
    gamma = args.gamma if args.gamma is not None else theory.predict(spec).gamma_c1
    if gamma <= 0:
        raise UsageError("gamma must be > 0")

    basis = subspace.class_basis(spec)
    ham_full = subspace.full_hamiltonian(spec, gamma)
    ham_red = subspace.reduced_hamiltonian(spec, gamma)
    checks: list[tuple[str, bool, str]] = []

    projected = basis.matrix @ ham_full @ basis.matrix.T
    dev = float(np.max(np.abs(projected - ham_red)))
    checks.append(("projection", dev <= 1e-10,
                   f"max|P H P^T - H_reduced| = {dev:.3e} (tol 1e-10)"))

    psi_full = subspace.full_initial_state(spec)
    psi_red = subspace.reduced_initial_state(spec)
    dyn_dev = 0.0
    for t in (1.0, 10.0):
        lifted = basis.lift(dynamics.evolve(ham_red, psi_red, t))
        full = dynamics.evolve(ham_full, psi_full, t)
        dyn_dev = max(dyn_dev, float(np.linalg.norm(full - lifted)))
    checks.append(("dynamics", dyn_dev <= 1e-8,
                   f"max full-vs-reduced state deviation = {dyn_dev:.3e} (tol 1e-8)"))

    leakage = 0.0
    for k in range(7):
        lifted = basis.lift(np.eye(7)[k].astype(complex))
        evolved = dynamics.evolve(ham_full, lifted, 10.0)
        residual = evolved - basis.matrix.T @ (basis.matrix @ evolved)
        leakage = max(leakage, float(np.linalg.norm(residual)))
    checks.append(("leakage", leakage <= 1e-8,
                   f"max out-of-subspace leakage = {leakage:.3e} (tol 1e-8)"))

    census = graph.edge_census(spec, graph.classify_vertices(spec))
    census_ok = census == theory.census_formulas(spec.M)
    checks.append(("census", census_ok, "edge census matches the closed forms"))

    lines = [f"# verify M={spec.M} w={_fmt(spec.w)} gamma={_fmt(gamma)}"]
    passed = 0
    for name, ok, detail in checks:
        passed += ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name:<12} {detail}")
    lines.append(f"{passed}/{len(checks)} checks passed")
    _write_output(args, "\n".join(lines) + "\n")
    if passed < len(checks):
        raise CheckFailure(f"{len(checks) - passed} verification check(s) failed")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    if args.M < 3:
        raise UsageError("M must be an integer >= 3")
    counts = theory.census_formulas(args.M)
    lines = [
        f"# simplexwalk {__version__} census M={args.M}",
        "class_pair,weight_tier,count",
    ]
    for lo, hi, tier in graph.CENSUS_KEYS:
        lines.append(f"{lo}~{hi},{tier},{counts[(lo, hi, tier)]}")
    _write_output(args, "\n".join(lines) + "\n")
    return 0


def cmd_connectivity(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    adj = graph.build_adjacency(spec)
    lam_max = float(np.linalg.eigvalsh(adj)[-1])
    lam1 = float(np.linalg.eigvalsh(graph.laplacian(adj))[1])
    degree = spec.M - 1 + spec.w
    payload = {
        "M": spec.M,
        "w": spec.w,
        "lambda1": lam1,
        "lambda1_closed_form": theory.algebraic_connectivity_formula(spec.M, spec.w),
        "op_norm": lam_max,
        "op_norm_closed_form": spec.M + spec.w - 1.0,
        "normalized_connectivity": lam1 / degree,
    }
    _write_output(args, _json_doc(payload))
    return 0


def cmd_width(args: argparse.Namespace) -> int:
    spec = _graph_spec(args)
    if args.stage not in (1, 2):
        raise UsageError("stage must be 1 or 2")
    if args.offsets < 3 or args.offsets % 2 == 0:
        raise UsageError("offsets must be an odd integer >= 3")
    pred = theory.predict(spec)
    gamma_c = pred.gamma_c1 if args.stage == 1 else pred.gamma_c2
    scale = spec.M ** -1.5
    lo = args.eps_lo if args.eps_lo is not None else 1e-3 * scale
    hi = args.eps_hi if args.eps_hi is not None else min(1e2 * scale, 0.5 * gamma_c)
    if not 0 < lo < hi:
        raise UsageError("epsilon range must satisfy 0 < lo < hi")
    if hi >= gamma_c:
        raise UsageError(
            f"largest detuning {hi:g} must stay below the critical gamma {gamma_c:g}"
        )
    per_side = (args.offsets - 1) // 2
    positive = np.logspace(np.log10(lo), np.log10(hi), per_side)
    eps_grid = np.concatenate([-positive[::-1], [0.0], positive])
    offsets, peaks = dynamics.width_scan(spec, args.stage, eps_grid)
    lines = [
        f"# simplexwalk {__version__} width M={spec.M} w={_fmt(spec.w)} "
        f"stage={args.stage} gamma_c={_fmt(gamma_c)} offsets={args.offsets}",
        "epsilon,p_peak",
    ]
    for eps, peak in zip(offsets, peaks):
        lines.append(f"{_fmt(eps)},{_fmt(peak)}")
    _write_output(args, "\n".join(lines) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexwalk",
        description="Two-stage quantum-walk search on the weighted simplex "
        "of complete graphs: predictions, scans, and evolutions as CSV/JSON.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_w: bool = True) -> None:
        p.add_argument("--M", type=int, required=True, help="cluster size (>= 3)")
        if with_w:
            p.add_argument("--w", type=float, default=1.0,
                           help="inter-cluster edge weight (> 0, default 1)")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("predict", help="closed-form quantities as flat JSON")
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", help="eigenstate overlap curves over a gamma grid")
    common(p)
    p.add_argument("--lo", type=float, required=True, help="gamma grid start")
    p.add_argument("--hi", type=float, required=True, help="gamma grid end")
    p.add_argument("--points", type=int, default=_SWEEP_POINTS)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evolve", help="probability time series along a schedule")
    common(p)
    p.add_argument("--gamma1", type=float, help="stage-1 gamma (default: critical)")
    p.add_argument("--t1", type=float, help="stage-1 duration (default: closed form)")
    p.add_argument("--gamma2", type=float, help="stage-2 gamma (default: critical)")
    p.add_argument("--t2", type=float, help="stage-2 duration (default: closed form)")
    p.add_argument("--samples", type=int, default=_EVOLVE_SAMPLES,
                   help="samples per stage")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="full-space vs reduced-space checks (M <= 30)")
    common(p)
    p.add_argument("--gamma", type=float, help="jumping rate (default: stage-1 critical)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="edge census by class pair and weight tier")
    common(p, with_w=False)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("connectivity", help="algebraic connectivity and operator norm")
    common(p)
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("width", help="peak success vs gamma detuning of one stage")
    common(p)
    p.add_argument("--stage", type=int, required=True, choices=(1, 2))
    p.add_argument("--offsets", type=int, default=_WIDTH_OFFSETS,
                   help="odd number of detunings (log-spaced, symmetric, plus 0)")
    p.add_argument("--eps-lo", type=float, dest="eps_lo",
                   help="smallest |detuning| (default 1e-3 / M^1.5)")
    p.add_argument("--eps-hi", type=float, dest="eps_hi",
                   help="largest |detuning| (default min(1e2 / M^1.5, gamma_c / 2))")
    p.set_defaults(func=cmd_width)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())
