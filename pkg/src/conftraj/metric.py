"""Small-vector algebra for the Euclidean metrics on R^3, R^4 and the
Lorentzian metric dx^2 + dy^2 + dz^2 - dt^2 on R^4.

Vectors are plain numpy arrays whose last axis holds the components; every
function also accepts stacks of vectors (shape ``(..., n)``). The metric is
selected by an explicit :class:`Signature` argument.
"""

from enum import Enum

import numpy as np

from .errors import PreconditionError, UsageError

TANGENCY_TOL = 1e-9
LIGHTLIKE_REL_TOL = 1e-12


class Signature(Enum):
    EUCLIDEAN3 = "euclidean3"
    EUCLIDEAN4 = "euclidean4"
    LORENTZ4 = "lorentz4"

    @property
    def dim(self):
        return 3 if self is Signature.EUCLIDEAN3 else 4

    @property
    def diag(self):
        """Diagonal of the metric tensor."""
        return _DIAGS[self]


_DIAGS = {
    Signature.EUCLIDEAN3: np.ones(3),
    Signature.EUCLIDEAN4: np.ones(4),
    Signature.LORENTZ4: np.array([1.0, 1.0, 1.0, -1.0]),
}
for _d in _DIAGS.values():
    _d.setflags(write=False)


class CausalType(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def _check_dim(sig, *vectors):
    for u in vectors:
        if np.shape(u)[-1] != sig.dim:
            raise UsageError(
                f"vector with {np.shape(u)[-1]} components used with signature {sig.value}"
            )


def inner(u, v, sig):
    """Metric inner product; the t-term is negated under LORENTZ4."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_dim(sig, u, v)
    return np.sum(u * v * sig.diag, axis=-1)


def norm_sq(u, sig):
    return inner(u, u, sig)


def raise_index(c, sig):
    """Turn a covector (in the standard dual basis) into a vector."""
    return np.asarray(c, dtype=float) * sig.diag


def cross3(u, v):
    """Standard cross product on R^3."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_dim(Signature.EUCLIDEAN3, u, v)
    return np.cross(u, v)


# Row index sets obtained by deleting one row of a 4x3 matrix.
_MINOR_ROWS = np.array([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
_COFACTOR_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])


def triple_covector(p, u, v):
    """Covector ``c`` with ``c . w = det(u, v, w, p)`` for every w in R^4.

    Obtained by cofactor expansion along the third column.
    """
    U = u[..., _MINOR_ROWS]
    V = v[..., _MINOR_ROWS]
    P = p[..., _MINOR_ROWS]
    minors = np.sum(P * np.cross(U, V), axis=-1)
    return _COFACTOR_SIGNS * minors


def cross4(p, u, v, sig, check=True):
    """Cross product of tangent vectors u, v at a quadric point p.

    Returns the tangent vector X with <X, w> = det(u, v, w, p) for all w
    tangent at p. The defining relation is solved as a covector and the
    index is raised with the metric, so one code path serves S^3 and H^3.
    """
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if sig is Signature.EUCLIDEAN3:
        raise UsageError("cross4 needs a 4-component signature")
    _check_dim(sig, p, u, v)
    if check:
        for name, w in (("u", u), ("v", v)):
            off = np.max(np.abs(inner(p, w, sig)))
            if off > TANGENCY_TOL:
                raise PreconditionError(f"{name} is not tangent at p (|<p,{name}>| = {off:.3g})")
    return raise_index(triple_covector(p, u, v), sig)


def cross(p, u, v, sig, check=True):
    """Cross product dispatched on signature (p is ignored on R^3)."""
    if sig is Signature.EUCLIDEAN3:
        return cross3(u, v)
    return cross4(p, u, v, sig, check=check)


def causal_norm(u, sig=Signature.LORENTZ4):
    """Return ``(sqrt|<u,u>|, CausalType)`` with a scale-aware lightlike band."""
    u = np.asarray(u, dtype=float)
    q = float(inner(u, u, sig))
    scale = float(np.dot(u, u))
    if abs(q) <= LIGHTLIKE_REL_TOL * scale:
        return 0.0, CausalType.LIGHTLIKE
    kind = CausalType.SPACELIKE if q > 0 else CausalType.TIMELIKE
    return float(np.sqrt(abs(q))), kind


def orthonormal_tangent_basis(p, sig):
    """Oriented orthonormal basis (f1, f2, f3) of the tangent space at p.

    Signature-aware Gram-Schmidt on the coordinate axes after removing the
    normal component; the basis is ordered so that det(f1, f2, f3, p) > 0.
    """
    p = np.asarray(p, dtype=float)
    pp = float(inner(p, p, sig))
    basis = []
    for e in np.eye(4):
        w = e - inner(e, p, sig) / pp * p
        for f in basis:
            w = w - inner(w, f, sig) * f
        n2 = float(inner(w, w, sig))
        if n2 > 1e-8:
            basis.append(w / np.sqrt(n2))
        if len(basis) == 3:
            break
    if np.linalg.det(np.column_stack([*basis, p])) < 0:
        basis[2] = -basis[2]
    return np.array(basis)
