import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftraj.errors import PreconditionError, UnsupportedOracleError
from conftraj.fields import FieldSpec
from conftraj.integrator import integrate
from conftraj.oracles import (
    compare,
    constants_from_initial,
    height_residual,
    predicted_height,
    predicted_torsion,
    rectifying_residuals,
    spacelike_zero_torsion_check,
    torsion_shape_residual,
)
from conftraj.spaceforms import SpaceForm

from conftest import run_scenario
from helpers import SQRT2, random_point, random_tangent, scenario

H3, S3, R3 = SpaceForm.HYPERBOLIC, SpaceForm.SPHERE, SpaceForm.EUCLIDEAN


def test_constants_examples():
    c = constants_from_initial(run_scenario(1))
    assert (c.a0, c.c0, c.kappa_pred) == (0, 1, 1)
    c = constants_from_initial(run_scenario(2))
    assert c.a0 == pytest.approx(SQRT2 / 2)
    assert c.kappa_pred == pytest.approx(SQRT2 * 2 / 2)
    c = constants_from_initial(run_scenario(6))
    assert c.a1 == pytest.approx(1, abs=1e-15) and c.a2 == 0
    assert c.kappa_pred == pytest.approx(SQRT2)
    c = constants_from_initial(run_scenario(3))
    assert abs(c.a1) < 1e-15 and abs(c.a2) < 1e-15 and c.torsion_free


def test_constants_negative_q_uses_absolute_value():
    sc = scenario(R3, FieldSpec("radial_r3"), -2.0, (1, 0, 0), (0, 1, 0), 1.0)
    assert constants_from_initial(sc).kappa_pred == 2.0


def test_constants_refuse_non_oracle_fields():
    sc = scenario(S3, FieldSpec("killing_s3", index=1), 1.0, (1, 0, 0, 0), (0, 1, 0, 0), 1.0)
    with pytest.raises(UnsupportedOracleError):
        constants_from_initial(sc)


def test_sphere_radicand_identity(rng):
    """|a|^2 >= a1^2 + a2^2 for on-manifold data; violating data is flagged."""
    for _ in range(100):
        a = rng.normal(size=4)
        p = random_point(S3, rng)
        v = random_tangent(S3, p, rng)
        c = constants_from_initial(scenario(S3, FieldSpec("conformal_s3", a=tuple(a)), 1.0, p, v, 1.0))
        assert a @ a - c.a1**2 - c.a2**2 >= -1e-12


def test_predicted_torsion_examples():
    c = constants_from_initial(run_scenario(2))
    s = np.linspace(0, 10, 11)
    np.testing.assert_allclose(predicted_torsion(c, 2.0, s), 2 * (s + SQRT2 / 2))
    c = constants_from_initial(run_scenario(3))
    assert np.all(predicted_torsion(c, -4 / 3, s) == 0)
    c = constants_from_initial(run_scenario(6))
    np.testing.assert_allclose(predicted_torsion(c, 1.0, s), np.sinh(s))
    c = constants_from_initial(run_scenario(4))
    np.testing.assert_allclose(predicted_torsion(c, 1.0, s), np.cos(s) / SQRT2, atol=1e-15)
    np.testing.assert_allclose(predicted_height(c, s), np.sin(s) / SQRT2, atol=1e-15)


def test_rectifying_residuals(runs):
    for n in (1, 2):
        traj, _ = runs[n]
        r3, r4 = rectifying_residuals(traj, constants_from_initial(traj.scenario))
        assert r3 <= 1e-6 and r4 <= 1e-6
    traj = integrate(scenario(R3, FieldSpec("radial_r3"), 1.0, (1, 0, 0), (1, 0, 0), 0.1))
    with pytest.raises(PreconditionError):
        rectifying_residuals(traj, constants_from_initial(traj.scenario))
    with pytest.raises(UnsupportedOracleError):
        rectifying_residuals(runs[5][0], constants_from_initial(runs[5][0].scenario))


def test_height_residual(runs):
    for n, tol in ((3, 1e-9), (4, 1e-7), (5, 1e-9)):
        traj, _ = runs[n]
        assert height_residual(traj, constants_from_initial(traj.scenario)) <= tol
    with pytest.raises(UnsupportedOracleError):
        height_residual(runs[1][0], constants_from_initial(runs[1][0].scenario))


def test_spacelike_check_examples():
    v = spacelike_zero_torsion_check(run_scenario(5))
    assert v.applicable and v.passed
    v = spacelike_zero_torsion_check(run_scenario(6))
    assert not v.applicable and v.passed
    with pytest.raises(UnsupportedOracleError):
        spacelike_zero_torsion_check(run_scenario(3))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_timelike_a_never_torsion_free(seed):
    rng = np.random.default_rng(seed)
    p = random_point(H3, rng, scale=rng.uniform(0, 5))
    v = random_tangent(H3, p, rng)
    sc = scenario(H3, FieldSpec("conformal_h3", a=(0, 0, 0, 1)), 1.0, p, v, 1.0)
    c = constants_from_initial(sc)
    assert c.a1 == pytest.approx(-p[3])
    assert abs(c.a1) >= 1
    v = spacelike_zero_torsion_check(sc)
    assert v.applicable and v.passed


def test_torsion_shape_residual():
    s = np.linspace(0, 3, 200)
    assert torsion_shape_residual(H3, s, 2 * np.sinh(s) - np.cosh(s))[0] < 1e-12
    assert torsion_shape_residual(S3, s, np.sin(s + 0.3))[0] < 1e-12
    assert torsion_shape_residual(R3, s, 4 - s)[0] < 1e-12
    assert torsion_shape_residual(R3, s, s**2)[0] > 1e-2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_compare_reference_runs_pass(runs, n):
    traj, series = runs[n]
    report = compare(traj, series)
    failed = [c.name for c in report.checks if not c.passed]
    assert report.passed, failed
    names = {c.name for c in report.checks}
    assert {"unit_speed_drift", "constraint_drift", "curvature_vs_prediction", "curvature_constancy",
            "torsion_vs_prediction", "tangential_integral_identity", "torsion_vs_tangential_component"} <= names


def test_compare_euclidean_lists_identities(runs):
    report = compare(*runs[1])
    names = {c.name for c in report.checks}
    assert {"rectifying_position_identity", "rectifying_norm_identity", "torsion_shape_fit"} <= names


def test_compare_notes_constant_binormal(runs):
    report = compare(*runs[5])
    assert any(n.startswith("torsion identically zero; binormal constant B = (1, ") for n in report.notes)
    assert report.passed


def test_compare_killing_field_has_generic_checks_only():
    sc = scenario(S3, FieldSpec("killing_s3", index=1), 1.0, (1, 0, 0, 0), (0, 0, 1, 0), 1.0)
    report = compare(integrate(sc))
    assert not report.oracle_applicable
    assert report.passed
    assert {c.name for c in report.checks} <= {"unit_speed_drift", "constraint_drift", "tangential_integral_identity",
                                                 "frenet_orthonormality"}
    d = json.loads(report.to_json())
    assert d["oracle"] == "not applicable"
    assert all(set(c) == {"name", "residual", "tolerance", "verdict"} for c in d["checks"])


def test_compare_detects_wrong_constants(runs):
    """A trajectory from different initial data must fail the prediction."""
    traj, series = runs[1]
    from dataclasses import replace

    fake = replace(traj, scenario=run_scenario(2))
    report = compare(fake, series)
    assert not report.passed
