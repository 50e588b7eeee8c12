"""Random on-manifold data and closed-form curves shared by the tests."""

import numpy as np

from conftraj.integrator import Scenario, TrajectoryState
from conftraj.metric import inner
from conftraj.spaceforms import SpaceForm

SQRT2 = np.sqrt(2.0)


def random_point(M, rng, scale=1.0):
    if M is SpaceForm.EUCLIDEAN:
        return scale * rng.normal(size=3)
    if M is SpaceForm.SPHERE:
        p = rng.normal(size=4)
        return p / np.linalg.norm(p)
    x = scale * rng.normal(size=3)
    return np.append(x, np.sqrt(1.0 + x @ x))


def random_tangent(M, p, rng, unit=True):
    v = rng.normal(size=M.dim)
    if M.is_quadric:
        sig = M.signature
        v = v - M.epsilon * inner(v, p, sig) * p
    if unit:
        v = v / np.sqrt(inner(v, v, M.signature))
    return v


def scenario(M, field, q, p, v, s_max, step=1e-3, stride=1):
    return Scenario(M, field, q, TrajectoryState(0.0, np.array(p, float), np.array(v, float)), s_max, step, stride)


# Non-great circle on S^3 for a = (0,0,0,1): eps1 = -e1, eps2 = -e2, eps3 = e3.
CIRCLE_R = 0.6
CIRCLE_Q = -4.0 / 3.0
_E1 = np.array([-1.0, 0, 0, 0])
_E2 = np.array([0, -1.0, 0, 0])
_E3 = np.array([0, 0, 1.0, 0])


def circle(s, R=CIRCLE_R):
    s = np.asarray(s, dtype=float)[..., None]
    return R * (np.cos(s / R) * _E1 + np.sin(s / R) * _E2) + np.sqrt(1 - R * R) * _E3


def circle_velocity(s, R=CIRCLE_R):
    s = np.asarray(s, dtype=float)[..., None]
    return -np.sin(s / R) * _E1 + np.cos(s / R) * _E2


def parabola(s, alpha=0.5):
    """H^3 curve (0, s, alpha s^2 + alpha - 1/(4 alpha), alpha s^2 + alpha + 1/(4 alpha))."""
    s = np.asarray(s, dtype=float)
    return np.stack([0 * s, s, alpha * s**2 + alpha - 1 / (4 * alpha), alpha * s**2 + alpha + 1 / (4 * alpha)], -1)


def parabola_velocity(s, alpha=0.5):
    s = np.asarray(s, dtype=float)
    return np.stack([0 * s, 0 * s + 1, 2 * alpha * s, 2 * alpha * s], -1)


