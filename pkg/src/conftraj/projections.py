"""Maps from the embedded models to plot coordinates in R^3.

* stereographic projection of S^3 from a coordinate-axis pole,
* Poincare ball model of H^3: (x, y, z) / (1 + t),
* upper half-space model of H^3: (x, y, 1) / (t + z).

All maps accept a single point or a stack of points.
"""

import numpy as np

from .errors import PreconditionError, ProjectionSingularError
from .metric import Signature, inner

POLE_TOL = 1e-6
HALF_SPACE_TOL = 1e-12
ON_MANIFOLD_TOL = 1e-9


def _first_bad(mask):
    return int(np.flatnonzero(np.atleast_1d(mask))[0])


def _check_pole(pole):
    pole = np.asarray(pole, dtype=float)
    axis = np.flatnonzero(pole)
    if pole.shape != (4,) or len(axis) != 1 or abs(abs(pole[axis[0]]) - 1.0) > 1e-12:
        raise PreconditionError(f"pole must be a unit coordinate axis point, got {pole.tolist()}")
    return pole, int(axis[0])


def stereographic_s3(p, pole=(0.0, 0.0, 0.0, 1.0)):
    """Stereographic projection from ``pole`` onto the complementary 3-plane.

    For the default pole (0,0,0,1) this is (x, y, z) / (1 - t).
    """
    p = np.asarray(p, dtype=float)
    pole, k = _check_pole(pole)
    r = np.abs(np.sum(p * p, axis=-1) - 1.0)
    if np.any(r > ON_MANIFOLD_TOL):
        raise PreconditionError("point is off the unit sphere S^3")
    denom = 1.0 - p[..., k] * pole[k]
    bad = denom < POLE_TOL
    if np.any(bad):
        i = _first_bad(bad)
        raise ProjectionSingularError(f"point {i} is within {POLE_TOL:g} of the projection pole", s=i)
    keep = [j for j in range(4) if j != k]
    return p[..., keep] / denom[..., None]


def _check_hyperbolic(p):
    r = np.abs(inner(p, p, Signature.LORENTZ4) + 1.0)
    scale = np.maximum(1.0, np.sum(p * p, axis=-1))
    if np.any(r > ON_MANIFOLD_TOL * scale) or np.any(p[..., 3] <= 0):
        raise PreconditionError("point is off the hyperboloid sheet H^3")


def poincare_ball(p):
    """Hyperboloid point -> open unit ball, (x, y, z) / (1 + t)."""
    p = np.asarray(p, dtype=float)
    _check_hyperbolic(p)
    return p[..., :3] / (1.0 + p[..., 3:4])


def upper_half_space(p):
    """Hyperboloid point -> upper half-space {w > 0}, (x, y, 1) / (t + z)."""
    p = np.asarray(p, dtype=float)
    _check_hyperbolic(p)
    denom = p[..., 3] + p[..., 2]
    bad = denom <= HALF_SPACE_TOL
    if np.any(bad):
        i = _first_bad(bad)
        raise ProjectionSingularError(f"point {i} has t + z <= {HALF_SPACE_TOL:g}", s=i)
    out = np.stack([p[..., 0], p[..., 1], np.ones_like(denom)], axis=-1)
    return out / denom[..., None]


PROJECTIONS = {
    "stereographic": "sphere",
    "ball": "hyperbolic",
    "half_space": "hyperbolic",
}


def project_trajectory(trajectory, name, pole=(0.0, 0.0, 0.0, 1.0)):
    """Project every sample; singular samples are reported by arc length."""
    M = trajectory.space_form.value
    if name not in PROJECTIONS:
        raise PreconditionError(f"unknown projection {name!r}")
    if PROJECTIONS[name] != M:
        raise PreconditionError(f"projection {name!r} needs a {PROJECTIONS[name]} trajectory, got {M}")
    try:
        if name == "stereographic":
            return stereographic_s3(trajectory.positions, pole)
        if name == "ball":
            return poincare_ball(trajectory.positions)
        return upper_half_space(trajectory.positions)
    except ProjectionSingularError as exc:
        s = float(trajectory.s[exc.s])
        raise ProjectionSingularError(f"{name} projection singular at s={s:.6g}", s=s) from exc


def fit_circle(points):
    """Least-squares circle through 3D points.

    Returns ``(center, radius, normal, residual)`` where residual is the
    largest distance of a point from the fitted circle (in-plane radial
    error and out-of-plane offset combined).
    """
    X = np.asarray(points, dtype=float)
    centroid = X.mean(axis=0)
    Y = X - centroid
    _, _, vt = np.linalg.svd(Y, full_matrices=False)
    e1, e2, normal = vt[0], vt[1], vt[2]
    u = Y @ e1
    v = Y @ e2
    # Algebraic fit: u^2 + v^2 = 2 a u + 2 b v + c.
    A = np.column_stack([2 * u, 2 * v, np.ones_like(u)])
    (a, b, c), *_ = np.linalg.lstsq(A, u * u + v * v, rcond=None)
    radius = float(np.sqrt(c + a * a + b * b))
    center = centroid + a * e1 + b * e2
    d = X - center
    out_of_plane = d @ normal
    in_plane = np.sqrt(np.maximum(np.sum(d * d, axis=1) - out_of_plane ** 2, 0.0))
    residual = float(np.max(np.hypot(in_plane - radius, out_of_plane)))
    return center, radius, normal, residual
