"""Fixed-step RK4 integration of conformal trajectories.

The trajectory equation nabla_{g'} g' = q V x g' is written in ambient
coordinates as

    g'' = q V(g) x g' - epsilon <g', g'> g,

with epsilon = 0, +1, -1 on R^3, S^3, H^3. The first-order system carries
(position, velocity) plus the running integral of the conformal factor
along the curve, so the monitor <V, g'> - 1/2 int lambda ds comes out of
the same Runge-Kutta stages. After every step the position is pushed back
onto the model and the velocity is made tangent and unit length; state
updates go through compensated summation so that roundoff stays below the
truncation error even at h = 1e-3.
"""

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    DegenerateInputError,
    IntegrationAbort,
    PreconditionError,
    ProjectionError,
    SheetError,
    UsageError,
)
from .fields import FieldSpec, scalar_functions
from .metric import inner
from .spaceforms import SpaceForm, constraint_residual, project_point, project_tangent

CORRECTION_FLAG_TOL = 1e-6


class GeodesicModeWarning(UserWarning):
    """q = 0: the engine integrates geodesics instead of conformal trajectories."""


@dataclass(frozen=True)
class TrajectoryState:
    s: float
    position: np.ndarray
    velocity: np.ndarray


@dataclass(frozen=True)
class Scenario:
    space_form: SpaceForm
    field: FieldSpec
    q: float
    initial: TrajectoryState
    s_max: float
    step: float = 1e-3
    sample_stride: int = 1

    def __post_init__(self):
        if self.field.space_form is not self.space_form:
            raise UsageError(f"field {self.field.label} does not live on {self.space_form.value}")
        if not self.step > 0:
            raise UsageError("step must be positive")
        if not self.s_max > 0:
            raise UsageError("s_max must be positive")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise UsageError("sample_stride must be an integer >= 1")
        d = self.space_form.dim
        if len(self.initial.position) != d or len(self.initial.velocity) != d:
            raise UsageError(f"initial data must have {d} components on {self.space_form.value}")

    @property
    def n_steps(self):
        return int(math.floor(self.s_max / self.step + 1e-9))


@dataclass(frozen=True)
class InitialValidation:
    state: TrajectoryState
    position_shift: float
    velocity_shift: float

    @property
    def corrected(self):
        return max(self.position_shift, self.velocity_shift) > CORRECTION_FLAG_TOL


@dataclass
class Trajectory:
    """Uniformly spaced samples of an integrated trajectory (arrays indexed by sample)."""

    scenario: Scenario
    s: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    field_values: np.ndarray
    lambda_integral: np.ndarray
    validation: InitialValidation = dc_field(default=None)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i):
        return TrajectoryState(float(self.s[i]), self.positions[i], self.velocities[i])

    @property
    def spacing(self):
        return self.scenario.step * self.scenario.sample_stride

    @property
    def space_form(self):
        return self.scenario.space_form

    @property
    def field(self):
        return self.scenario.field

    @property
    def q(self):
        return self.scenario.q


def validate_initial(scenario):
    """Project the initial position onto the model and make the velocity a
    unit tangent vector. Shifts larger than 1e-6 set ``corrected``."""
    M = scenario.space_form
    sig = M.signature
    p0 = np.asarray(scenario.initial.position, dtype=float)
    v0 = np.asarray(scenario.initial.velocity, dtype=float)
    if not (np.all(np.isfinite(p0)) and np.all(np.isfinite(v0))):
        raise DegenerateInputError("non-finite initial data")
    p = project_point(M, p0)
    v = project_tangent(M, p, v0)
    vv = float(inner(v, v, sig))
    if vv <= 1e-24:
        raise DegenerateInputError("initial velocity has no tangential part")
    v = v / math.sqrt(vv)
    state = TrajectoryState(float(scenario.initial.s), p, v)
    return InitialValidation(state, float(np.max(np.abs(p - p0))), float(np.max(np.abs(v - v0))))


def _covector_scalar(p, u, v):
    """Float-tuple version of metric.triple_covector."""
    m01 = u[0] * v[1] - u[1] * v[0]
    m02 = u[0] * v[2] - u[2] * v[0]
    m03 = u[0] * v[3] - u[3] * v[0]
    m12 = u[1] * v[2] - u[2] * v[1]
    m13 = u[1] * v[3] - u[3] * v[1]
    m23 = u[2] * v[3] - u[3] * v[2]
    return (
        p[1] * m23 - p[2] * m13 + p[3] * m12,
        -(p[0] * m23 - p[2] * m03 + p[3] * m02),
        p[0] * m13 - p[1] * m03 + p[3] * m01,
        -(p[0] * m12 - p[1] * m02 + p[2] * m01),
    )


def make_rhs(M, field, q):
    """First-order right-hand side y -> y' for y = (position, velocity, int lambda)."""
    V_of, lam_of = scalar_functions(field)

    if M is SpaceForm.EUCLIDEAN:
        def rhs(y):
            x0, x1, x2, v0, v1, v2, _ = y.tolist()
            V = V_of((x0, x1, x2))
            return np.array((
                v0, v1, v2,
                q * (V[1] * v2 - V[2] * v1),
                q * (V[2] * v0 - V[0] * v2),
                q * (V[0] * v1 - V[1] * v0),
                lam_of((x0, x1, x2)),
            ))
        return rhs

    eps = M.epsilon
    t_sign = -1.0 if M is SpaceForm.HYPERBOLIC else 1.0

    def rhs(y):
        vals = y.tolist()
        x = vals[0:4]
        v = vals[4:8]
        c = _covector_scalar(x, V_of(x), v)
        g = eps * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + t_sign * v[3] * v[3])
        return np.array((
            v[0], v[1], v[2], v[3],
            q * c[0] - g * x[0],
            q * c[1] - g * x[1],
            q * c[2] - g * x[2],
            q * t_sign * c[3] - g * x[3],
            lam_of(x),
        ))

    return rhs


def ode_rhs(M, field, q, state):
    """(d position/ds, d velocity/ds) at a state."""
    d = M.dim
    y = np.concatenate([state.position, state.velocity, [0.0]])
    out = make_rhs(M, field, q)(y)
    return out[:d], out[d:2 * d]


def _rk4_increment(rhs, y, h):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _rescale_factor(r):
    """1/sqrt(1 + r) - 1 without cancellation."""
    if not r > -1.0:
        raise ProjectionError("quadric renormalization of a sign-degenerate point")
    return math.expm1(-0.5 * math.log1p(r))


def _manifold_correction(M, y):
    """Increment that moves y onto the model with a unit tangent velocity.

    Returned as a small correction so it can go through the compensated sum
    instead of overwriting the state.
    """
    d = M.dim
    sig = M.signature
    p = y[:d]
    v = y[d:2 * d]
    out = np.zeros_like(y)
    if M.is_quadric:
        if p[3] <= 0 and M is SpaceForm.HYPERBOLIC:
            raise SheetError("trajectory left the upper sheet t > 0")
        dp = p * _rescale_factor(M.epsilon * float(inner(p, p, sig)) - 1.0)
        p = p + dp
        dv = -M.epsilon * float(inner(v, p, sig)) * p
        v = v + dv
        out[:d] = dp
    else:
        dv = np.zeros(d)
    out[d:2 * d] = dv + v * _rescale_factor(float(inner(v, v, sig)) - 1.0)
    return out


def _compensated_add(hi, lo, inc):
    """Kahan summation; keeps step-to-step roundoff below RK4 truncation error."""
    y = inc + lo
    t = hi + y
    return t, y - (t - hi)


def step(M, field, q, state, h):
    """One RK4 step from ``state`` followed by projection onto the model."""
    if not h > 0:
        raise UsageError("step size must be positive")
    d = M.dim
    y = np.concatenate([state.position, state.velocity, [0.0]])
    y = y + _rk4_increment(make_rhs(M, field, q), y, h)
    if not np.all(np.isfinite(y)):
        raise IntegrationAbort("non-finite state", last_state=state)
    try:
        y = y + _manifold_correction(M, y)
    except PreconditionError as exc:
        raise IntegrationAbort(str(exc), last_state=state) from exc
    return TrajectoryState(state.s + h, y[:d].copy(), y[d:2 * d].copy())


def integrate(scenario):
    """March from s = 0 to the last grid point <= s_max, sampling every
    ``sample_stride`` steps."""
    if scenario.q == 0:
        warnings.warn("q = 0: integrating geodesics", GeodesicModeWarning, stacklevel=2)
    validation = validate_initial(scenario)
    M = scenario.space_form
    field = scenario.field
    d = M.dim
    h = scenario.step
    stride = scenario.sample_stride
    n = scenario.n_steps
    rhs = make_rhs(M, field, scenario.q)

    s0 = validation.state.s
    y = np.concatenate([validation.state.position, validation.state.velocity, [0.0]])
    lo = np.zeros_like(y)
    rows = [y.copy()]
    svals = [s0]
    for k in range(1, n + 1):
        s = s0 + k * h
        last = y
        y, lo = _compensated_add(y, lo, _rk4_increment(rhs, y, h))
        if not np.all(np.isfinite(y)):
            raise IntegrationAbort(f"non-finite state at s={s:.6g}", last_state=_as_state(last, s - h, d))
        try:
            y, lo = _compensated_add(y, lo, _manifold_correction(M, y))
        except PreconditionError as exc:
            raise IntegrationAbort(f"{exc} at s={s:.6g}", last_state=_as_state(last, s - h, d)) from exc
        if k % stride == 0:
            rows.append(y.copy())
            svals.append(s)
    Y = np.array(rows)
    positions = Y[:, :d]
    return Trajectory(
        scenario=scenario,
        s=np.array(svals),
        positions=positions,
        velocities=Y[:, d:2 * d],
        field_values=field.evaluate(positions, check=False),
        lambda_integral=Y[:, 2 * d],
        validation=validation,
    )


def _as_state(y, s, d):
    return TrajectoryState(s, y[:d].copy(), y[d:2 * d].copy())


def drift(trajectory):
    """(max unit-speed defect, max constraint residual) over the samples."""
    M = trajectory.space_form
    speed = np.sqrt(np.abs(inner(trajectory.velocities, trajectory.velocities, M.signature)))
    cons = np.abs(constraint_residual(M, trajectory.positions))
    return float(np.max(np.abs(speed - 1.0))), float(np.max(cons))
