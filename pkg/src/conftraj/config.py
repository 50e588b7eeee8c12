"""Scenario configuration files.

A config is a TOML file whose keys, after flattening tables, are exactly
drawn from the dotted names below; anything else is rejected so that a
typo in, say, ``field.a`` cannot silently change the oracle constants::

    space_form = "hyperbolic"
    field.kind = "conformal_h3"
    field.a = [1, 0, 0, 0]
    q = 1.0
    initial.position = [1, 0, 0, 1.4142135623730951]
    initial.velocity = [0, 1, 0, 0]
    s_max = 3.0
"""

import math
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .errors import ConfigError, ConfTrajError
from .fields import FieldKind, FieldSpec
from .integrator import Scenario, TrajectoryState
from .spaceforms import SpaceForm

PROJECTION_NAMES = ("none", "stereographic", "ball", "half_space")

KNOWN_KEYS = {
    "space_form", "field.kind", "field.a", "field.index", "q",
    "initial.position", "initial.velocity", "s_max", "step", "sample_stride",
    "normalize_velocity", "projection", "pole", "output.csv", "output.report",
}
REQUIRED_KEYS = {"space_form", "field.kind", "q", "initial.position", "initial.velocity", "s_max"}


@dataclass(frozen=True)
class ScenarioConfig:
    space_form: SpaceForm
    field: FieldSpec
    q: float
    position: tuple
    velocity: tuple
    s_max: float
    step: float = 1e-3
    sample_stride: int = 10
    normalize_velocity: bool = True
    projection: str = "none"
    pole: tuple = (0.0, 0.0, 0.0, 1.0)
    output_csv: str = None
    output_report: str = None

    def scenario(self):
        return Scenario(
            space_form=self.space_form,
            field=self.field,
            q=self.q,
            initial=TrajectoryState(0.0, np.array(self.position), np.array(self.velocity)),
            s_max=self.s_max,
            step=self.step,
            sample_stride=self.sample_stride,
        )


def _flatten(table, prefix=""):
    out = {}
    for k, v in table.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _number(key, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{key}: expected a finite number, got {v!r}")
    return float(v)


def _vector(key, v, n):
    if not isinstance(v, list) or len(v) != n:
        raise ConfigError(f"{key}: expected a list of {n} numbers, got {v!r}")
    return tuple(_number(key, c) for c in v)


def parse_config(data):
    """Validate a (possibly nested) mapping into a ScenarioConfig."""
    flat = _flatten(data)
    unknown = sorted(set(flat) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")
    missing = sorted(REQUIRED_KEYS - set(flat))
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")

    try:
        M = SpaceForm(flat["space_form"])
    except ValueError:
        raise ConfigError(f"space_form: unknown value {flat['space_form']!r}") from None
    try:
        kind = FieldKind(flat["field.kind"])
    except ValueError:
        raise ConfigError(f"field.kind: unknown value {flat['field.kind']!r}") from None
    if kind.space_form is not M:
        raise ConfigError(f"field.kind: {kind.value} does not live on {M.value}")
    a = _vector("field.a", flat["field.a"], M.dim) if "field.a" in flat else None
    index = flat.get("field.index")
    if index is not None and (isinstance(index, bool) or not isinstance(index, int)):
        raise ConfigError(f"field.index: expected an integer, got {index!r}")
    try:
        field = FieldSpec(kind, a=a, index=index)
    except ConfTrajError as exc:
        raise ConfigError(f"field: {exc}") from None

    kwargs = dict(
        space_form=M,
        field=field,
        q=_number("q", flat["q"]),
        position=_vector("initial.position", flat["initial.position"], M.dim),
        velocity=_vector("initial.velocity", flat["initial.velocity"], M.dim),
        s_max=_number("s_max", flat["s_max"]),
    )
    if kwargs["s_max"] <= 0:
        raise ConfigError("s_max: must be positive")
    if "step" in flat:
        kwargs["step"] = _number("step", flat["step"])
        if kwargs["step"] <= 0:
            raise ConfigError("step: must be positive")
    if "sample_stride" in flat:
        stride = flat["sample_stride"]
        if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
            raise ConfigError(f"sample_stride: expected an integer >= 1, got {stride!r}")
        kwargs["sample_stride"] = stride
    if "normalize_velocity" in flat:
        if not isinstance(flat["normalize_velocity"], bool):
            raise ConfigError("normalize_velocity: expected true or false")
        kwargs["normalize_velocity"] = flat["normalize_velocity"]
    if "projection" in flat:
        if flat["projection"] not in PROJECTION_NAMES:
            raise ConfigError(f"projection: expected one of {', '.join(PROJECTION_NAMES)}")
        kwargs["projection"] = flat["projection"]
    if "pole" in flat:
        kwargs["pole"] = _vector("pole", flat["pole"], 4)
    for key, name in (("output.csv", "output_csv"), ("output.report", "output_report")):
        if key in flat:
            if not isinstance(flat[key], str):
                raise ConfigError(f"{key}: expected a path string")
            kwargs[name] = flat[key]
    return ScenarioConfig(**kwargs)


def load_config(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data)
