"""Exception hierarchy shared by all conftraj modules."""


class ConfTrajError(Exception):
    """Base class for every error raised by conftraj."""


class UsageError(ConfTrajError, ValueError):
    """Bad arguments: wrong signature, wrong dimension, non-positive step."""


class PreconditionError(ConfTrajError, ValueError):
    """Inputs violate a geometric precondition (off-manifold, non-tangent)."""


class SheetError(PreconditionError):
    """A hyperbolic point left the upper sheet t > 0."""


class ProjectionError(PreconditionError):
    """A point cannot be renormalized onto its quadric."""


class DegenerateInputError(PreconditionError):
    """Zero initial velocity or similar degenerate data."""


class IntegrationAbort(ConfTrajError, RuntimeError):
    """The integrator stopped early; ``last_state`` holds the last good state."""

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class UnsupportedOracleError(ConfTrajError):
    """No closed-form prediction exists for this field."""


class InconsistencyError(ConfTrajError, ValueError):
    """Oracle constants are inconsistent with on-manifold data."""


class ProjectionSingularError(ConfTrajError, ValueError):
    """A model projection hit its singular set (pole, boundary at infinity)."""

    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s


class ConfigError(ConfTrajError, ValueError):
    """Scenario configuration is malformed."""
