"""Command-line front end.

    conftraj run --config fig3.toml [--projection ball] [--output out.csv]
    conftraj verify --config fig3.toml [--report report.json]
    conftraj catalog

Exit codes: 0 ok, 1 oracle failure, 2 config error, 3 integration abort,
4 projection singular, 5 no oracle for the configured field.
"""

import argparse
import csv
import io
import sys
import warnings
from dataclasses import replace

import numpy as np

from .config import PROJECTION_NAMES, load_config
from .errors import ConfigError, ConfTrajError, IntegrationAbort, PreconditionError, ProjectionSingularError
from .fields import catalog
from .frenet import frenet_series, tangential_component
from .integrator import CORRECTION_FLAG_TOL, drift, integrate, validate_initial
from .metric import inner
from .oracles import compare
from .projections import PROJECTIONS, project_trajectory
from .spaceforms import constraint_residual

EXIT_OK = 0
EXIT_ORACLE_FAIL = 1
EXIT_CONFIG = 2
EXIT_ABORT = 3
EXIT_PROJECTION = 4
EXIT_NO_ORACLE = 5

AXES = ("x", "y", "z", "t")


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fmt(x):
    return "" if x is None or not np.isfinite(x) else f"{x:.17g}"


def _parse_pole(text):
    try:
        vals = tuple(float(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad pole {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("pole needs 4 comma-separated numbers")
    return vals


def _prepare(args, log):
    """Load the config, apply flag overrides and vet the initial data."""
    try:
        cfg = load_config(args.config)
        overrides = {}
        if args.step is not None:
            if args.step <= 0:
                raise ConfigError("--step must be positive")
            overrides["step"] = args.step
        if getattr(args, "projection", None) is not None:
            overrides["projection"] = args.projection
        if getattr(args, "pole", None) is not None:
            overrides["pole"] = args.pole
        cfg = replace(cfg, **overrides)
        scenario = cfg.scenario()
        check = validate_initial(scenario)
    except ConfTrajError as exc:
        raise _Fail(EXIT_CONFIG, f"config error: {exc}") from None
    if check.position_shift > CORRECTION_FLAG_TOL:
        raise _Fail(
            EXIT_CONFIG,
            f"config error: initial.position is off {cfg.space_form.value} "
            f"(projection would move it by {check.position_shift:.3g}); give an on-manifold point",
        )
    if check.velocity_shift > CORRECTION_FLAG_TOL:
        if not cfg.normalize_velocity:
            raise _Fail(EXIT_CONFIG, "config error: initial.velocity is not a unit tangent vector "
                                     "and normalize_velocity = false")
        log(f"warning: initial velocity normalized to {np.array2string(check.state.velocity, precision=12)}")
    if cfg.projection != "none" and PROJECTIONS[cfg.projection] != cfg.space_form.value:
        raise _Fail(EXIT_CONFIG, f"config error: projection {cfg.projection} needs a "
                                 f"{PROJECTIONS[cfg.projection]} scenario")
    return cfg, scenario


def _integrate(scenario, log):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            traj = integrate(scenario)
        except IntegrationAbort as exc:
            raise _Fail(EXIT_ABORT, f"integration aborted: {exc}") from None
    for w in caught:
        log(f"warning: {w.message}")
    return traj


def trajectory_rows(cfg, traj):
    """Header and rows of the trajectory CSV."""
    M = cfg.space_form
    d = M.dim
    sig = M.signature
    series = frenet_series(traj) if len(traj) >= 5 else None
    header = ["s"] + list(AXES[:d]) + [f"v{a}" for a in AXES[:d]] + ["kappa", "tau", "tangential_component"]
    if M.is_quadric:
        header.append("height")
    header += ["constraint_residual", "speed_residual"]
    proj = None
    if cfg.projection != "none":
        try:
            proj = project_trajectory(traj, cfg.projection, cfg.pole)
        except ProjectionSingularError as exc:
            raise _Fail(EXIT_PROJECTION, f"projection singular: {exc}") from None
        except PreconditionError as exc:
            raise _Fail(EXIT_CONFIG, f"config error: {exc}") from None
        header += [f"{cfg.projection}_{i}" for i in (1, 2, 3)]

    tc = tangential_component(traj)
    cons = np.atleast_1d(constraint_residual(M, traj.positions)) * np.ones(len(traj))
    speed = np.sqrt(np.abs(inner(traj.velocities, traj.velocities, sig))) - 1.0
    height = None
    if M.is_quadric and cfg.field.a is not None:
        height = inner(traj.positions, np.array(cfg.field.a), sig)
    rows = []
    for i in range(len(traj)):
        row = [traj.s[i], *traj.positions[i], *traj.velocities[i]]
        if series is not None:
            row += [series.kappa[i], series.tau[i]]
        else:
            row += [None, None]
        row.append(tc[i])
        if M.is_quadric:
            row.append(None if height is None else height[i])
        row += [cons[i], speed[i]]
        if proj is not None:
            row += list(proj[i])
        rows.append([_fmt(None if v is None else float(v)) for v in row])
    return header, rows


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_run(args, log):
    cfg, scenario = _prepare(args, log)
    traj = _integrate(scenario, log)
    header, rows = trajectory_rows(cfg, traj)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out = args.output or cfg.output_csv
    _write(out, buf.getvalue())
    speed, cons = drift(traj)
    log(f"{len(rows)} samples, s in [0, {traj.s[-1]:.6g}], speed drift {speed:.2e}, constraint drift {cons:.2e}")
    return EXIT_OK


def cmd_verify(args, log):
    cfg, scenario = _prepare(args, log)
    if not cfg.field.has_oracle:
        raise _Fail(EXIT_NO_ORACLE, f"no closed-form oracle for {cfg.field.label}")
    traj = _integrate(scenario, log)
    try:
        report = compare(traj)
    except ConfTrajError as exc:
        raise _Fail(EXIT_CONFIG, f"config error: {exc}") from None
    _write(args.report or cfg.output_report, report.to_json() + "\n")
    for c in report.checks:
        log(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.residual:.3e} (tol {c.tolerance:.1e})")
    log(f"summary: {'pass' if report.passed else 'fail'}")
    return EXIT_OK if report.passed else EXIT_ORACLE_FAIL


def catalog_text():
    lines = []
    for f in catalog():
        params = "a in R^%d" % f.space_form.dim if f.kind.takes_vector else (
            f"index={f.index}" if f.kind.is_killing else "-")
        name = f"K{f.index}" if f.kind.is_killing else "V"
        lines.append(
            f"{f.kind.value:<22} space={f.space_form.value:<10} params={params:<10} "
            f"{name + '=' + f.components_formula():<26} lambda={f.lambda_formula()}"
        )
    return "\n".join(lines) + "\n"


def cmd_catalog(args, log):
    sys.stdout.write(catalog_text())
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="conftraj", description="Conformal trajectories in 3D space forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, metavar="PATH", help="scenario TOML file")
        p.add_argument("--step", type=float, metavar="H", help="override the integration step")
        p.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")

    run = sub.add_parser("run", help="integrate a scenario and write the trajectory CSV")
    common(run)
    run.add_argument("--projection", choices=PROJECTION_NAMES, help="append projected coordinates")
    run.add_argument("--pole", type=_parse_pole, metavar='"x,y,z,t"', help="stereographic pole")
    run.add_argument("--output", metavar="PATH", help="CSV path (default: output.csv or stdout)")
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser("verify", help="compare a scenario against its closed-form predictions")
    common(verify)
    verify.add_argument("--report", metavar="PATH", help="report path (default: output.report or stdout)")
    verify.set_defaults(func=cmd_verify)

    cat = sub.add_parser("catalog", help="list the vector field catalog")
    cat.add_argument("--quiet", action="store_true")
    cat.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)

    def log(msg):
        if not args.quiet:
            print(msg, file=sys.stderr)

    try:
        return args.func(args, log)
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
