"""Catalog of conformal and Killing vector fields on R^3, S^3 and H^3.

Proper conformal generators:

* ``radial_r3``            V(p) = p                              lambda = 2
* ``special_conformal_r3`` W(p) = |p|^2/2 a - <a,p> p            lambda = -2<a,p>
* ``conformal_s3``         V(p) = a - <a,p> p                    lambda = -2<a,p>
* ``conformal_h3``         V(p) = a + <a,p> p  (Lorentzian <,>)  lambda = +2<a,p>

Killing generators (lambda = 0) are stored as literal component tables.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import PreconditionError, UsageError
from .metric import inner
from .spaceforms import SpaceForm, constraint_residual, project_point, project_tangent

ON_MANIFOLD_TOL = 1e-9


class FieldKind(Enum):
    RADIAL_R3 = "radial_r3"
    SPECIAL_CONFORMAL_R3 = "special_conformal_r3"
    CONFORMAL_S3 = "conformal_s3"
    CONFORMAL_H3 = "conformal_h3"
    KILLING_R3 = "killing_r3"
    KILLING_S3 = "killing_s3"
    KILLING_H3 = "killing_h3"

    @property
    def space_form(self):
        return {
            FieldKind.RADIAL_R3: SpaceForm.EUCLIDEAN,
            FieldKind.SPECIAL_CONFORMAL_R3: SpaceForm.EUCLIDEAN,
            FieldKind.KILLING_R3: SpaceForm.EUCLIDEAN,
            FieldKind.CONFORMAL_S3: SpaceForm.SPHERE,
            FieldKind.KILLING_S3: SpaceForm.SPHERE,
            FieldKind.CONFORMAL_H3: SpaceForm.HYPERBOLIC,
            FieldKind.KILLING_H3: SpaceForm.HYPERBOLIC,
        }[self]

    @property
    def takes_vector(self):
        return self in (FieldKind.SPECIAL_CONFORMAL_R3, FieldKind.CONFORMAL_S3, FieldKind.CONFORMAL_H3)

    @property
    def is_killing(self):
        return self in (FieldKind.KILLING_R3, FieldKind.KILLING_S3, FieldKind.KILLING_H3)


# Killing tables, written component-for-component as (x, y, z[, t]) -> field.
KILLING_R3 = {
    1: ("(1,0,0)", lambda x, y, z: (1.0, 0.0, 0.0)),
    2: ("(0,1,0)", lambda x, y, z: (0.0, 1.0, 0.0)),
    3: ("(0,0,1)", lambda x, y, z: (0.0, 0.0, 1.0)),
    4: ("(-y,x,0)", lambda x, y, z: (-y, x, 0.0)),
    5: ("(-z,0,x)", lambda x, y, z: (-z, 0.0, x)),
    6: ("(0,-z,y)", lambda x, y, z: (0.0, -z, y)),
}

KILLING_S3 = {
    1: ("(-y,x,-t,z)", lambda x, y, z, t: (-y, x, -t, z)),
    2: ("(-y,x,t,-z)", lambda x, y, z, t: (-y, x, t, -z)),
    3: ("(-z,-t,x,y)", lambda x, y, z, t: (-z, -t, x, y)),
    4: ("(-z,t,x,-y)", lambda x, y, z, t: (-z, t, x, -y)),
    5: ("(-t,z,-y,x)", lambda x, y, z, t: (-t, z, -y, x)),
    6: ("(-t,-z,y,x)", lambda x, y, z, t: (-t, -z, y, x)),
}

# Entry 2 is printed with a period in place of the last comma; read as (y,-x,t,z).
KILLING_H3 = {
    1: ("(-y,x,t,z)", lambda x, y, z, t: (-y, x, t, z)),
    2: ("(y,-x,t,z)", lambda x, y, z, t: (y, -x, t, z)),
    3: ("(-z,t,x,y)", lambda x, y, z, t: (-z, t, x, y)),
    4: ("(z,t,-x,y)", lambda x, y, z, t: (z, t, -x, y)),
    5: ("(t,-z,y,x)", lambda x, y, z, t: (t, -z, y, x)),
    6: ("(t,z,-y,x)", lambda x, y, z, t: (t, z, -y, x)),
}

_KILLING_TABLES = {
    FieldKind.KILLING_R3: KILLING_R3,
    FieldKind.KILLING_S3: KILLING_S3,
    FieldKind.KILLING_H3: KILLING_H3,
}

ORACLE_KINDS = (FieldKind.RADIAL_R3, FieldKind.CONFORMAL_S3, FieldKind.CONFORMAL_H3)


@dataclass(frozen=True)
class FieldSpec:
    """A catalog field: ``kind`` plus either a parameter vector ``a`` or a
    Killing ``index`` in 1..6."""

    kind: FieldKind
    a: tuple = None
    index: int = None

    def __post_init__(self):
        kind = FieldKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.takes_vector:
            if self.a is None:
                raise UsageError(f"{kind.value} needs a parameter vector a")
            a = tuple(float(c) for c in self.a)
            if len(a) != kind.space_form.dim:
                raise UsageError(f"{kind.value} needs a with {kind.space_form.dim} components")
            if not any(a):
                raise UsageError("parameter vector a must be non-zero")
            object.__setattr__(self, "a", a)
        elif self.a is not None:
            raise UsageError(f"{kind.value} takes no parameter vector")
        if kind.is_killing:
            if self.index not in range(1, 7):
                raise UsageError("Killing index must be in 1..6")
        elif self.index is not None:
            raise UsageError(f"{kind.value} takes no Killing index")

    @property
    def space_form(self):
        return self.kind.space_form

    @property
    def vector(self):
        return None if self.a is None else np.array(self.a)

    @property
    def has_oracle(self):
        return self.kind in ORACLE_KINDS

    @property
    def label(self):
        if self.kind.is_killing:
            return f"{self.kind.value}[K{self.index}]"
        if self.a is not None:
            return f"{self.kind.value}(a={list(self.a)})"
        return self.kind.value

    def _check(self, p):
        M = self.space_form
        if M.is_quadric:
            r = np.max(np.abs(constraint_residual(M, p)))
            if r > ON_MANIFOLD_TOL * max(1.0, float(np.max(np.abs(p))) ** 2):
                raise PreconditionError(f"point is off {M.value} (residual {r:.3g})")

    def evaluate(self, p, check=True):
        """Ambient components of the field at p (stacks of points allowed)."""
        p = np.asarray(p, dtype=float)
        if p.shape[-1] != self.space_form.dim:
            raise UsageError(f"{self.label} expects {self.space_form.dim}-component points")
        if check:
            self._check(p)
        k = self.kind
        if k is FieldKind.RADIAL_R3:
            return p.copy()
        if k.is_killing:
            fn = _KILLING_TABLES[k][self.index][1]
            comps = fn(*np.moveaxis(p, -1, 0))
            return np.stack(np.broadcast_arrays(*[np.asarray(c, dtype=float) for c in comps]), axis=-1)
        a = np.array(self.a)
        sig = self.space_form.signature
        ap = inner(a, p, sig)[..., None]
        if k is FieldKind.SPECIAL_CONFORMAL_R3:
            return 0.5 * np.sum(p * p, axis=-1)[..., None] * a - ap * p
        if k is FieldKind.CONFORMAL_S3:
            return a - ap * p
        return a + ap * p

    def conformal_factor(self, p, check=True):
        """The function lambda with L_V <,> = lambda <,>."""
        p = np.asarray(p, dtype=float)
        if check:
            self._check(p)
        k = self.kind
        if k.is_killing:
            return np.zeros(p.shape[:-1]) if p.ndim > 1 else 0.0
        if k is FieldKind.RADIAL_R3:
            return np.full(p.shape[:-1], 2.0) if p.ndim > 1 else 2.0
        ap = inner(np.array(self.a), p, self.space_form.signature)
        return 2.0 * ap if k is FieldKind.CONFORMAL_H3 else -2.0 * ap

    def components_formula(self):
        k = self.kind
        if k.is_killing:
            return _KILLING_TABLES[k][self.index][0]
        return {
            FieldKind.RADIAL_R3: "(x,y,z)",
            FieldKind.SPECIAL_CONFORMAL_R3: "|p|^2/2 a - <a,p> p",
            FieldKind.CONFORMAL_S3: "a - <a,p> p",
            FieldKind.CONFORMAL_H3: "a + <a,p> p",
        }[k]

    def lambda_formula(self):
        k = self.kind
        if k.is_killing:
            return "0"
        return {
            FieldKind.RADIAL_R3: "2",
            FieldKind.SPECIAL_CONFORMAL_R3: "-2<a,p>",
            FieldKind.CONFORMAL_S3: "-2<a,p>",
            FieldKind.CONFORMAL_H3: "2<a,p>",
        }[k]


def evaluate(field, p, check=True):
    return field.evaluate(p, check=check)


def conformal_factor(field, p, check=True):
    return field.conformal_factor(p, check=check)


def catalog():
    """Every catalog entry, with a placeholder vector for parametrized kinds."""
    entries = [FieldSpec(FieldKind.RADIAL_R3)]
    entries.append(FieldSpec(FieldKind.SPECIAL_CONFORMAL_R3, a=(1.0, 0.0, 0.0)))
    entries += [FieldSpec(FieldKind.KILLING_R3, index=i) for i in range(1, 7)]
    entries.append(FieldSpec(FieldKind.CONFORMAL_S3, a=(0.0, 0.0, 0.0, 1.0)))
    entries += [FieldSpec(FieldKind.KILLING_S3, index=i) for i in range(1, 7)]
    entries.append(FieldSpec(FieldKind.CONFORMAL_H3, a=(1.0, 0.0, 0.0, 0.0)))
    entries += [FieldSpec(FieldKind.KILLING_H3, index=i) for i in range(1, 7)]
    return entries


def ambient_derivative(field, p, X, h):
    """Central-difference derivative of V along the curve project_point(p + sX)."""
    if h <= 0:
        raise UsageError("finite-difference step h must be positive")
    M = field.space_form
    p = np.asarray(p, dtype=float)
    X = np.asarray(X, dtype=float)
    cp = project_point(M, p + h * X)
    cm = project_point(M, p - h * X)
    vp = project_tangent(M, cp, field.evaluate(cp))
    vm = project_tangent(M, cm, field.evaluate(cm))
    return (vp - vm) / (2 * h)


def covariant_derivative(field, p, X, h):
    """nabla_X V at p: tangential part of the ambient derivative."""
    return project_tangent(field.space_form, p, ambient_derivative(field, p, X, h))


def conformality_residual(field, p, X, Y, h):
    """|<nabla_X V, Y> + <X, nabla_Y V> - lambda <X, Y>| by finite differences."""
    sig = field.space_form.signature
    lhs = inner(ambient_derivative(field, p, X, h), Y, sig) + inner(X, ambient_derivative(field, p, Y, h), sig)
    rhs = field.conformal_factor(p) * inner(X, Y, sig)
    return float(abs(lhs - rhs))


def scalar_functions(field):
    """(V, lambda) as closures on tuples of Python floats, without checks.

    Used in the integrator's inner loop where numpy call overhead on
    3- and 4-vectors dominates.
    """
    k = field.kind
    if k.is_killing:
        fn = _KILLING_TABLES[k][field.index][1]
        return (lambda x: fn(*x)), (lambda x: 0.0)
    if k is FieldKind.RADIAL_R3:
        return (lambda x: x), (lambda x: 2.0)
    a = field.a
    if k is FieldKind.SPECIAL_CONFORMAL_R3:
        a0, a1, a2 = a

        def V(x):
            ap = a0 * x[0] + a1 * x[1] + a2 * x[2]
            h = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])
            return (h * a0 - ap * x[0], h * a1 - ap * x[1], h * a2 - ap * x[2])

        return V, (lambda x: -2.0 * (a0 * x[0] + a1 * x[1] + a2 * x[2]))
    a0, a1, a2, a3 = a
    if k is FieldKind.CONFORMAL_S3:
        def V(x):
            ap = a0 * x[0] + a1 * x[1] + a2 * x[2] + a3 * x[3]
            return (a0 - ap * x[0], a1 - ap * x[1], a2 - ap * x[2], a3 - ap * x[3])

        return V, (lambda x: -2.0 * (a0 * x[0] + a1 * x[1] + a2 * x[2] + a3 * x[3]))

    def V(x):
        ap = a0 * x[0] + a1 * x[1] + a2 * x[2] - a3 * x[3]
        return (a0 + ap * x[0], a1 + ap * x[1], a2 + ap * x[2], a3 + ap * x[3])

    return V, (lambda x: 2.0 * (a0 * x[0] + a1 * x[1] + a2 * x[2] - a3 * x[3]))
