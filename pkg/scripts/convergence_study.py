"""Endpoint error against the closed-form hyperbolic parabola as h shrinks.

    python scripts/convergence_study.py [--s-max 3] [--steps 8e-3 4e-3 2e-3 1e-3 5e-4]

Prints the error at s_max and the ratio to the previous step size; a
fourth-order method gives ratios near 16 until roundoff takes over.
"""

import argparse

import numpy as np

from conftraj.fields import FieldSpec
from conftraj.integrator import Scenario, TrajectoryState, integrate
from conftraj.spaceforms import SpaceForm


def parabola(s, alpha=0.5):
    return np.array([0.0, s, alpha * s * s + alpha - 1 / (4 * alpha), alpha * s * s + alpha + 1 / (4 * alpha)])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s-max", type=float, default=3.0)
    ap.add_argument("--steps", type=float, nargs="+", default=[8e-3, 4e-3, 2e-3, 1e-3, 5e-4])
    args = ap.parse_args(argv)

    field = FieldSpec("conformal_h3", a=(1, 0, 0, 0))
    start = TrajectoryState(0.0, parabola(0.0), np.array([0.0, 1.0, 0.0, 0.0]))
    prev = None
    print(f"{'h':>10} {'s_end':>8} {'error':>12} {'ratio':>8}")
    for h in args.steps:
        traj = integrate(Scenario(SpaceForm.HYPERBOLIC, field, 1.0, start, args.s_max, step=h, sample_stride=1))
        err = float(np.linalg.norm(traj.positions[-1] - parabola(traj.s[-1])))
        ratio = f"{prev / err:8.2f}" if prev else " " * 8
        print(f"{h:10.2e} {traj.s[-1]:8.4f} {err:12.4e} {ratio}")
        prev = err


if __name__ == "__main__":
    main()
