import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ginibre, psd
from opineq.errors import DomainError, UsageError
from opineq.linalg import lambda_min, op_norm, psd_power
from opineq.means import MeanSpec, geometric_mean, mean_apply, weighted_geometric_mean


def riccati_residual(A, B, G):
    # A # B is the positive solution of G A^{-1} G = B
    return op_norm(G @ np.linalg.solve(A, G) - B) / max(1.0, op_norm(B))


def test_geometric_mean_known_value():
    A = np.array([[2, 1], [1, 1]], dtype=float)
    G = geometric_mean(A, np.eye(2))
    assert np.allclose(G * np.sqrt(5), [[3, 1], [1, 2]], atol=1e-12)


def test_geometric_mean_riccati_oracle(rng):
    for n in (2, 3, 5):
        A, B = psd(rng, n) + 0.1 * np.eye(n), psd(rng, n) + 0.1 * np.eye(n)
        G = geometric_mean(A, B)
        assert riccati_residual(A, B, G) < 1e-9
        assert lambda_min(G) > 0


def test_commuting_case_is_scalar_power():
    A, B = np.diag([4.0, 9.0]), np.diag([1.0, 4.0])
    for t in (0.0, 0.3, 0.5, 1.0):
        expected = np.diag([4 ** (1 - t) * 1 ** t, 9 ** (1 - t) * 4 ** t])
        assert np.allclose(weighted_geometric_mean(A, B, t), expected, atol=1e-12)


def test_singular_one_side_is_exact():
    G, info = geometric_mean(np.diag([1.0, 0.0]), np.eye(2), full_output=True)
    assert np.array_equal(np.round(G.real, 14), np.diag([1.0, 0.0]))
    assert info["shift"] == 0.0 and info["side"] == "B"


def test_both_singular_shift_reported():
    _, info = geometric_mean(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), full_output=True)
    assert info["shift"] == pytest.approx(1e-10)


@given(st.floats(0, 1), st.integers(0, 10_000))
def test_symmetry_and_transpose(t, seed):
    rng = np.random.default_rng(seed)
    A, B = psd(rng, 3) + 0.5 * np.eye(3), psd(rng, 3) + 0.5 * np.eye(3)
    lhs = weighted_geometric_mean(A, B, t)
    rhs = weighted_geometric_mean(B, A, 1 - t)
    assert np.allclose(lhs, rhs, atol=1e-8 * max(1.0, op_norm(lhs)))


@given(st.integers(0, 10_000))
def test_monotone_and_amgm(seed):
    rng = np.random.default_rng(seed)
    A, B = psd(rng, 3) + 0.1 * np.eye(3), psd(rng, 3) + 0.1 * np.eye(3)
    G = geometric_mean(A, B)
    scale = max(1.0, op_norm(A), op_norm(B))
    assert lambda_min((A + B) / 2 - G) >= -1e-9 * scale
    G2 = geometric_mean(A + psd(rng, 3), B)
    assert lambda_min(G2 - G) >= -1e-9 * scale


def test_self_mean_and_homogeneity(rng):
    A = psd(rng, 4) + np.eye(4)
    assert np.allclose(geometric_mean(A, A), A, atol=1e-10)
    B = psd(rng, 4) + np.eye(4)
    assert np.allclose(weighted_geometric_mean(2 * A, 8 * B, 0.25),
                       2 ** 0.75 * 8 ** 0.25 * weighted_geometric_mean(A, B, 0.25), atol=1e-9)


def test_mean_spec_functions(rng):
    A, B = psd(rng, 3) + np.eye(3), psd(rng, 3) + np.eye(3)
    assert np.allclose(mean_apply(MeanSpec.from_registry("arith"), A, B), (A + B) / 2, atol=1e-10)
    assert np.allclose(mean_apply(MeanSpec.from_registry("sqrt"), A, B), geometric_mean(A, B), atol=1e-10)
    assert np.allclose(mean_apply(MeanSpec.from_registry("power:0.3"), A, B),
                       weighted_geometric_mean(A, B, 0.3), atol=1e-10)
    Ah = psd_power(A, 0.5)
    assert np.allclose(mean_apply(MeanSpec.weighted(0.5), A, np.eye(3)), Ah, atol=1e-10)


def test_mean_spec_validation_and_json():
    with pytest.raises(UsageError):
        MeanSpec.weighted(1.5)
    with pytest.raises(UsageError):
        MeanSpec.from_function(lambda x: 2 * x)
    with pytest.raises(UsageError):
        MeanSpec.from_registry("harmonic-ish")
    spec = MeanSpec.from_registry("power:0.25")
    assert MeanSpec.from_json(spec.to_json()) == spec
    assert MeanSpec.from_json(MeanSpec.weighted(0.5).to_json()).t == 0.5


def test_non_psd_argument_rejected():
    with pytest.raises(DomainError):
        geometric_mean(np.diag([1.0, -1.0]), np.eye(2))
