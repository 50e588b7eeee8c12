"""Numerical Frenet apparatus along integrated trajectories.

T is the sampled velocity, N the normalized covariant acceleration and
B = T x N with the cross product of the space form. Torsion is
<dN/ds, B>, where dN/ds is taken by fourth-order finite differences on
the sample grid; the normal correction of the connection drops out
because B is tangent.
"""

from dataclasses import dataclass

import numpy as np

from .metric import cross, inner
from .spaceforms import covariant_acceleration

GEODESIC_KAPPA = 1e-8


@dataclass(frozen=True)
class FrenetSample:
    s: float
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float

    @property
    def is_geodesic(self):
        return self.N is None


@dataclass(frozen=True)
class FrenetSeries:
    """Frenet data for every sample; N, B, tau are NaN where the curve is
    locally geodesic (kappa < 1e-8)."""

    s: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray

    @property
    def geodesic(self):
        return self.kappa < GEODESIC_KAPPA

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        if self.geodesic[i]:
            return FrenetSample(float(self.s[i]), self.T[i], None, None, float(self.kappa[i]), None)
        return FrenetSample(float(self.s[i]), self.T[i], self.N[i], self.B[i], float(self.kappa[i]), float(self.tau[i]))


def _ambient_acceleration(M, field, q, p, v, V=None):
    sig = M.signature
    if V is None:
        V = field.evaluate(p, check=False)
    a = q * cross(p, V, v, sig, check=False)
    if M.is_quadric:
        a = a - M.epsilon * inner(v, v, sig)[..., None] * p
    return a


def curvature_at(M, field, q, state):
    """kappa = |q| |V x g'|, the norm of nabla_{g'} g'."""
    p = np.asarray(state.position, dtype=float)
    v = np.asarray(state.velocity, dtype=float)
    X = cross(p, field.evaluate(p), v, M.signature)
    return abs(q) * float(np.sqrt(max(inner(X, X, M.signature), 0.0)))


def derivative_5pt(f, h):
    """Fourth-order first derivative along axis 0 (one-sided at the ends)."""
    f = np.asarray(f, dtype=float)
    n = len(f)
    if n < 5:
        raise ValueError("need at least 5 samples for the derivative stencil")
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return d


def _series(M, field, q, s, P, Vel, h, V=None):
    sig = M.signature
    a = _ambient_acceleration(M, field, q, P, Vel, V)
    acc = covariant_acceleration(M, P, Vel, a)
    kappa = np.sqrt(np.maximum(inner(acc, acc, sig), 0.0))
    geo = kappa < GEODESIC_KAPPA
    with np.errstate(invalid="ignore", divide="ignore"):
        N = acc / kappa[:, None]
    N[geo] = np.nan
    B = cross(P, Vel, N, sig, check=False)
    tau = inner(derivative_5pt(N, h), B, sig)
    return FrenetSeries(s, Vel.copy(), N, B, kappa, tau)


def frenet_series(trajectory):
    """Frenet data at every sample of ``trajectory``."""
    return _series(
        trajectory.space_form, trajectory.field, trajectory.q, trajectory.s,
        trajectory.positions, trajectory.velocities, trajectory.spacing, trajectory.field_values,
    )


def frenet_at(trajectory, index):
    """Frenet data at one sample, from a local five-point window."""
    n = len(trajectory)
    if n < 5:
        raise ValueError("trajectory too short for Frenet differencing")
    if index < 0:
        index += n
    lo = min(max(index - 2, 0), n - 5)
    sl = slice(lo, lo + 5)
    series = _series(
        trajectory.space_form, trajectory.field, trajectory.q, trajectory.s[sl],
        trajectory.positions[sl], trajectory.velocities[sl], trajectory.spacing,
    )
    return series[index - lo]


def tangential_component(trajectory, index=None):
    """<V(g(s)), g'(s)>; all samples when ``index`` is None."""
    sig = trajectory.space_form.signature
    vals = inner(trajectory.field_values, trajectory.velocities, sig)
    return vals if index is None else float(vals[index])


def orthonormality_residual(trajectory, series):
    """Max deviation of the (T, N, B) Gram matrix from the identity, together
    with the frame's normal components along the position on quadrics."""
    M = trajectory.space_form
    ok = ~series.geodesic
    if not np.any(ok):
        return 0.0
    frames = np.stack([series.T[ok], series.N[ok], series.B[ok]], axis=1)
    gram = np.einsum("nik,njk->nij", frames * M.signature.diag, frames)
    worst = float(np.max(np.abs(gram - np.eye(3))))
    if M.is_quadric:
        normal = inner(frames, trajectory.positions[ok][:, None, :], M.signature)
        worst = max(worst, float(np.max(np.abs(normal))))
    return worst
