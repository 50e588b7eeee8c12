"""The three model space forms, embedded extrinsically.

R^3 is itself; S^3 is the unit sphere of Euclidean R^4; H^3 is the upper
sheet of <p, p> = -1 in Lorentzian R^4. Levi-Civita connections are the
ambient derivative plus a normal correction along the position vector.
"""

from enum import Enum

import numpy as np

from .errors import ProjectionError, SheetError
from .metric import Signature, cross, inner, norm_sq

GEODESIC_TOL = 1e-8


class SpaceForm(Enum):
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"

    @property
    def signature(self):
        return {
            SpaceForm.EUCLIDEAN: Signature.EUCLIDEAN3,
            SpaceForm.SPHERE: Signature.EUCLIDEAN4,
            SpaceForm.HYPERBOLIC: Signature.LORENTZ4,
        }[self]

    @property
    def dim(self):
        return self.signature.dim

    @property
    def epsilon(self):
        """Quadric sign: <p,p> = epsilon on the model (0 means unconstrained)."""
        return {SpaceForm.EUCLIDEAN: 0, SpaceForm.SPHERE: 1, SpaceForm.HYPERBOLIC: -1}[self]

    @property
    def is_quadric(self):
        return self is not SpaceForm.EUCLIDEAN


def _check_sheet(M, p):
    if M is SpaceForm.HYPERBOLIC and np.any(np.asarray(p)[..., 3] <= 0):
        raise SheetError("hyperbolic point with t <= 0 is off the upper sheet")


def constraint_residual(M, p):
    """<p,p> - epsilon (0 on R^3)."""
    p = np.asarray(p, dtype=float)
    if M is SpaceForm.EUCLIDEAN:
        return np.zeros(p.shape[:-1]) if p.ndim > 1 else 0.0
    _check_sheet(M, p)
    return norm_sq(p, M.signature) - M.epsilon


def project_point(M, p):
    """Rescale p onto the model; identity on R^3."""
    p = np.asarray(p, dtype=float)
    if M is SpaceForm.EUCLIDEAN:
        return p.copy()
    _check_sheet(M, p)
    pp = norm_sq(p, M.signature)
    if np.any(pp * M.epsilon <= 0):
        raise ProjectionError(f"<p,p> = {pp} has the wrong sign for {M.value}")
    return p / np.sqrt(np.abs(pp))[..., None]


def project_tangent(M, p, v):
    """Remove the normal component of v at p (p assumed on the model)."""
    v = np.asarray(v, dtype=float)
    if M is SpaceForm.EUCLIDEAN:
        return v.copy()
    p = np.asarray(p, dtype=float)
    # <p,p> = epsilon, so the normal component is epsilon <v,p> p.
    return v - M.epsilon * inner(v, p, M.signature)[..., None] * p


def covariant_acceleration(M, p, v, a_amb):
    """Tangential acceleration nabla_{v} v from the ambient second derivative."""
    a_amb = np.asarray(a_amb, dtype=float)
    if M is SpaceForm.EUCLIDEAN:
        return a_amb.copy()
    vv = norm_sq(v, M.signature)
    return a_amb + M.epsilon * vv[..., None] * np.asarray(p, dtype=float)


def geodesic_trajectory_test(M, p, v, field):
    """True iff V(p) and v are collinear, i.e. the geodesic through (p, v)
    is a conformal trajectory of ``field`` for every q."""
    V = field.evaluate(p)
    X = cross(p, V, v, M.signature)
    return bool(np.sqrt(abs(norm_sq(X, M.signature))) <= GEODESIC_TOL * (1 + np.sqrt(abs(norm_sq(V, M.signature)))))
