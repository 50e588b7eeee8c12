import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftraj.errors import PreconditionError, UsageError
from conftraj.metric import (
    CausalType,
    Signature,
    causal_norm,
    cross3,
    cross4,
    inner,
    orthonormal_tangent_basis,
)
from conftraj.spaceforms import SpaceForm

from helpers import random_point, random_tangent

L4 = Signature.LORENTZ4
E4 = Signature.EUCLIDEAN4
r2 = np.sqrt(2.0)
e = np.eye(4)

vec3 = arrays(np.float64, 3, elements=st.floats(-10, 10))


def test_inner_lorentz_examples():
    assert inner([1, 0, 0, 0], [1, 0, 0, 0], L4) == 1
    assert inner([0, 0, 0, 1], [0, 0, 0, 1], L4) == -1
    assert inner([0, 0, 0, r2], [1, 0, 0, r2], L4) == pytest.approx(-2)


def test_inner_signature_mismatch():
    with pytest.raises(UsageError):
        inner([1, 0, 0], [1, 0, 0], L4)


@given(vec3, vec3)
def test_inner_symmetric(u, v):
    assert inner(u, v, Signature.EUCLIDEAN3) == inner(v, u, Signature.EUCLIDEAN3)


def test_cross3_examples():
    np.testing.assert_array_equal(cross3([1, 0, 0], [0, 1, 0]), [0, 0, 1])
    np.testing.assert_array_equal(cross3([1, 0, 0], [1, 0, 0]), [0, 0, 0])
    np.testing.assert_allclose(cross3([1, 0, 0], [0, 1 / r2, 1 / r2]), [0, -1 / r2, 1 / r2], atol=1e-15)


def test_cross3_wrong_signature():
    with pytest.raises(UsageError):
        cross3([1, 0, 0, 0], [0, 1, 0, 0])


@given(vec3, vec3)
def test_lagrange_identity(u, v):
    w = cross3(u, v)
    lhs = w @ w
    rhs = (u @ u) * (v @ v) - (u @ v) ** 2
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, (u @ u) * (v @ v))
    assert abs(w @ u) <= 1e-12 * max(1.0, (u @ u) * np.sqrt(v @ v))


def test_cross4_canonical():
    p = np.array([0, 0, 0, 1.0])
    np.testing.assert_array_equal(cross4(p, e[0], e[1], E4), e[2])
    np.testing.assert_array_equal(cross4(p, e[0], e[1], L4), e[2])


def test_cross4_rejects_non_tangent():
    p = np.array([0, 0, 0, 1.0])
    with pytest.raises(PreconditionError):
        cross4(p, e[3], e[0], E4)
    with pytest.raises(UsageError):
        cross4(p[:3], e[0, :3], e[1, :3], Signature.EUCLIDEAN3)


@pytest.mark.parametrize("M", [SpaceForm.SPHERE, SpaceForm.HYPERBOLIC])
@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_cross4_triple_product(M, seed):
    rng = np.random.default_rng(seed)
    sig = M.signature
    p = random_point(M, rng)
    u = random_tangent(M, p, rng, unit=False)
    v = random_tangent(M, p, rng, unit=False)
    X = cross4(p, u, v, sig)
    # Oracle: the defining relation, against an orthonormal tangent basis.
    basis = orthonormal_tangent_basis(p, sig)
    for w in basis:
        assert abs(inner(X, w, sig) - np.linalg.det(np.column_stack([u, v, w, p]))) <= 1e-12 * (1 + np.abs(p).max()) ** 3
    expected = sum(np.linalg.det(np.column_stack([u, v, f, p])) * f for f in basis)
    np.testing.assert_allclose(X, expected, atol=1e-11 * (1 + np.abs(p).max()) ** 3)
    assert abs(inner(X, p, sig)) <= 1e-12 * (1 + np.abs(p).max()) ** 3
    assert abs(inner(X, u, sig)) <= 1e-10 * (1 + np.abs(p).max()) ** 3
    assert abs(inner(X, v, sig)) <= 1e-10 * (1 + np.abs(p).max()) ** 3
    np.testing.assert_array_equal(cross4(p, u, v, sig), -cross4(p, v, u, sig))


def test_orthonormal_tangent_basis_orientation():
    rng = np.random.default_rng(3)
    for M in (SpaceForm.SPHERE, SpaceForm.HYPERBOLIC):
        p = random_point(M, rng)
        B = orthonormal_tangent_basis(p, M.signature)
        G = B * M.signature.diag @ B.T
        np.testing.assert_allclose(G, np.eye(3), atol=1e-12)
        assert np.linalg.det(np.column_stack([*B, p])) > 0


def test_causal_norm():
    assert causal_norm([0, 0, 0, 1]) == (1.0, CausalType.TIMELIKE)
    assert causal_norm([1, 0, 0, 0]) == (1.0, CausalType.SPACELIKE)
    assert causal_norm([1, 0, 0, 1]) == (0.0, CausalType.LIGHTLIKE)
    # scale-aware band
    assert causal_norm([1e8, 0, 0, 1e8])[1] is CausalType.LIGHTLIKE
    assert causal_norm([1e-8, 0, 0, 0])[1] is CausalType.SPACELIKE
