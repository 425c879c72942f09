"""Command-line front end: ``mdi-asym figure | eval | verify``.

Exit codes: 0 success, 1 verification (or evaluation) failure, 2 usage
error, 3 I/O error.
"""

import argparse
import contextlib
import json
import math
import os
import sys

from . import __version__
from . import entanglement as ent
from . import measures as ms
from . import model as md
from .errors import ConfigError, MdiError
from .output import write_csv
from .presets import DEFAULT_GRID, FIGURES, figure_specs
from .scan import Measure, landmark_report, run_scan
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="mdi-asym",
        description="Asymmetry measures of two dipoles under the magnetic dipolar interaction.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    angles = argparse.ArgumentParser(add_help=False)
    angles.add_argument("--deg", action="store_true", help="angles and times are in degrees")

    fig = sub.add_parser("figure", parents=[angles], help="emit the data grid behind a figure")
    fig.add_argument("id", choices=FIGURES)
    fig.add_argument("--out", help="output CSV path (default: standard output)")
    fig.add_argument("--grid", type=int, default=DEFAULT_GRID, help="points per axis")
    fig.add_argument("--workers", type=int, default=None, help="worker processes")
    fig.add_argument("--theta-b", type=float, help="fixed theta_b for fig3/fig6")
    fig.add_argument("--t", type=float, help="fixed time for fig4/fig7")
    fig.add_argument("--axis", choices=("x", "z"), help="Bloch axis for fig5")
    fig.add_argument("--r-b", type=float, help="fixed r_b for fig5")
    fig.add_argument("--path", choices=("closed", "oracle", "both"), help="evaluation route")

    ev = sub.add_parser("eval", parents=[angles], help="evaluate one measure at one point")
    ev.add_argument("--measure", required=True, choices=[m.value for m in Measure])
    for name in ("theta-a", "theta-b", "r-a", "r-b", "t"):
        ev.add_argument(f"--{name}", type=float)
    ev.add_argument("--subsystem", choices=("a", "b"), default="a", help="local measures only")

    ver = sub.add_parser("verify", help="run the seeded invariant suite")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--samples", type=int, default=500)
    return parser


def _angle(value, deg):
    if value is None:
        return None
    return math.radians(value) if deg else value


def _output_name(out, label):
    if label is None:
        return out
    stem, ext = os.path.splitext(out)
    return f"{stem}_{label.replace('=', '')}{ext or '.csv'}"


def cmd_figure(args, stdout, stderr):
    try:
        specs = figure_specs(
            args.id,
            grid=args.grid,
            theta_b=_angle(args.theta_b, args.deg),
            t=_angle(args.t, args.deg),
            axis=args.axis,
            r_b=args.r_b,
            path=args.path,
        )
    except ConfigError as exc:
        print(f"mdi-asym figure: error: {exc}", file=stderr)
        return EXIT_USAGE
    for label, spec in specs:
        try:
            result = run_scan(spec, workers=args.workers)
        except MdiError as exc:
            print(f"mdi-asym figure: {exc}", file=stderr)
            return EXIT_FAIL
        comments = [
            f"preset: {args.id}" + (f" ({label})" if label else ""),
            f"spec: {spec.to_json()}",
            f"version: mdi-asymmetry {__version__}",
        ]
        try:
            if args.out:
                with open(_output_name(args.out, label), "w", newline="") as fh:
                    write_csv(result, fh, comments)
            else:
                write_csv(result, stdout, comments)
        except OSError as exc:
            print(f"mdi-asym figure: cannot write output: {exc}", file=stderr)
            return EXIT_IO
        tag = args.id + (f" {label}" if label else "")
        print(f"landmarks {tag}: {json.dumps(landmark_report(result).to_dict())}", file=stderr)
    return EXIT_OK


_EVAL_PARAMS = {
    Measure.GLOBAL_PURE: ("theta_a", "theta_b"),
    Measure.GLOBAL_RHO1: ("r_a", "r_b"),
    Measure.GLOBAL_RHO3: ("r_a", "r_b"),
    Measure.LOCAL_PURE: ("theta_a", "theta_b", "t"),
    Measure.LOCAL_RHO1: ("r_a", "r_b", "t"),
    Measure.LOCAL_RHO3: ("r_a", "r_b", "t"),
    Measure.UNITARY_PURE: ("theta_a", "theta_b", "t"),
    Measure.CONCURRENCE_PURE: ("theta_a", "theta_b", "t"),
}


def evaluate(measure, subsystem="A", **p):
    """Evaluate one measure on both routes; returns the JSON-ready record."""
    measure = Measure(measure)
    h = md.canonical_hamiltonian()
    rec = {"measure": measure.value}
    closed = None
    if measure in (Measure.GLOBAL_PURE, Measure.LOCAL_PURE, Measure.UNITARY_PURE,
                   Measure.CONCURRENCE_PURE):
        params = md.PureProductParams(p["theta_a"], p["theta_b"])
        psi = md.pure_product_state(params)
    if measure is Measure.GLOBAL_PURE:
        val = ms.wy_asymmetry_pure(psi, h)
        closed = ms.closed_form_pure(params)
        rec.update(raw=val.raw, normalized=val.normalized)
        ref = val.normalized
    elif measure in (Measure.GLOBAL_RHO1, Measure.GLOBAL_RHO3):
        axis = "X" if measure is Measure.GLOBAL_RHO1 else "Z"
        rho = md.bloch_product_state(md.BlochProductParams(axis, p["r_a"], p["r_b"]))
        val = ms.wy_asymmetry(rho, h)
        fn = ms.closed_form_rho1 if axis == "X" else ms.closed_form_rho3
        closed = fn(p["r_a"], p["r_b"])
        rec.update(raw=val.raw, normalized=val.normalized)
        ref = val.normalized
    elif measure is Measure.LOCAL_PURE:
        val = ms.local_asymmetry(md.DensityMatrix.from_ket(psi), h, p["t"], subsystem)
        rec.update(raw=val.raw, normalized=val.normalized)
    elif measure in (Measure.LOCAL_RHO1, Measure.LOCAL_RHO3):
        axis = "X" if measure is Measure.LOCAL_RHO1 else "Z"
        rho = md.bloch_product_state(md.BlochProductParams(axis, p["r_a"], p["r_b"]))
        val = ms.local_asymmetry(rho, h, p["t"], subsystem)
        rec.update(raw=val.raw, normalized=val.normalized)
        if str(subsystem).upper() == "A":
            if axis == "X":
                closed = ms.local_closed_form_rho1(p["r_a"], p["r_b"], p["t"])
                rec["closed_form_scale"], ref = "raw", val.raw
            else:
                closed = ms.local_closed_form_rho3(p["r_a"], p["r_b"], p["t"])
                rec["closed_form_scale"], ref = "normalized", val.normalized
    elif measure is Measure.UNITARY_PURE:
        raw = ms.unitary_asymmetry(md.DensityMatrix.from_ket(psi), md.unitary_at(h, p["t"]))
        closed = ms.unitary_asymmetry_pure_closed(params, p["t"])
        rec["raw"] = ref = raw
    else:
        rho_t = md.evolve_density(md.DensityMatrix.from_ket(psi), h, p["t"])
        raw = ent.concurrence(rho_t)
        closed = ent.concurrence_pure(md.evolve_pure_closed(params, p["t"]))
        rec["raw"] = ref = raw
    if closed is not None:
        rec["closed_form"] = closed
        rec["deviation"] = abs(closed - ref)
    return rec


def cmd_eval(args, stdout, stderr):
    measure = Measure(args.measure)
    values = {}
    for name in _EVAL_PARAMS[measure]:
        v = getattr(args, name)
        if v is None:
            print(f"mdi-asym eval: error: {measure.value} needs --{name.replace('_', '-')}",
                  file=stderr)
            return EXIT_USAGE
        values[name] = _angle(v, args.deg) if name in ("theta_a", "theta_b", "t") else v
    try:
        rec = evaluate(measure, subsystem=args.subsystem.upper(), **values)
    except MdiError as exc:
        print(f"mdi-asym eval: error: {exc}", file=stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_FAIL
    print(json.dumps(rec), file=stdout)
    return EXIT_OK


def cmd_verify(args, stdout, stderr):
    results = run_checks(seed=args.seed, samples=args.samples)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  worst={r.worst:.3e}  tol={r.tol:.0e}", file=stdout)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} properties passed", file=stdout)
    for r in failed:
        print(f"failed: {r.name}: worst {r.worst:.6e} at {r.where}", file=stderr)
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handler = {"figure": cmd_figure, "eval": cmd_eval, "verify": cmd_verify}[args.command]
    return handler(args, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
