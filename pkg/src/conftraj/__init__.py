"""Conformal trajectories of conformal vector fields in R^3, S^3 and H^3:
projected RK4 integration, numerical Frenet data and closed-form checks."""

from .errors import ConfTrajError
from .fields import FieldKind, FieldSpec, catalog
from .frenet import frenet_at, frenet_series
from .integrator import Scenario, Trajectory, TrajectoryState, integrate
from .metric import Signature
from .oracles import compare, constants_from_initial
from .spaceforms import SpaceForm

__all__ = [
    "ConfTrajError",
    "FieldKind",
    "FieldSpec",
    "Scenario",
    "Signature",
    "SpaceForm",
    "Trajectory",
    "TrajectoryState",
    "catalog",
    "compare",
    "constants_from_initial",
    "frenet_at",
    "frenet_series",
    "integrate",
]
