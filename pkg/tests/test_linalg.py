import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given

from conftest import complex_matrices, ginibre, psd
from opineq import linalg
from opineq.errors import DomainError, NotHermitianError, NotSquareError, SingularError, UsageError

NIL = np.array([[0, 1], [0, 0]], dtype=complex)


def test_abs_of_nilpotent():
    assert np.allclose(linalg.abs_op(NIL), np.diag([0, 1]), atol=1e-15)
    assert np.allclose(linalg.abs_adj(NIL), np.diag([1, 0]), atol=1e-15)


def test_abs_matches_sqrtm_oracle(rng):
    for n in (2, 3, 6):
        T = ginibre(rng, n)
        oracle = sla.sqrtm(T.conj().T @ T)
        assert np.allclose(linalg.abs_op(T), oracle, atol=1e-10)
        oracle_adj = sla.sqrtm(T @ T.conj().T)
        assert np.allclose(linalg.abs_adj(T), oracle_adj, atol=1e-10)


@given(complex_matrices())
def test_abs_squares_back(T):
    A = linalg.abs_op(T)
    scale = max(1.0, linalg.op_norm(T)) ** 2
    assert np.allclose(A @ A, T.conj().T @ T, atol=1e-10 * scale)
    assert linalg.lambda_min(A) >= -1e-12 * scale
    assert np.array_equal(A, A.conj().T)


@given(complex_matrices())
def test_cartesian_decomposition(T):
    R, J = linalg.real_part(T), linalg.imag_part(T)
    assert np.allclose(R + 1j * J, T, atol=1e-12)
    assert np.allclose(R, R.conj().T) and np.allclose(J, J.conj().T)


def test_singular_values_descending_and_rectangular(rng):
    s = linalg.singular_values(ginibre(rng, 5))
    assert np.all(np.diff(s) <= 0)
    assert linalg.singular_values(np.ones((2, 3))).shape == (2,)


def test_psd_power_conventions():
    P = np.diag([4.0, 0.0])
    assert np.allclose(linalg.psd_power(P, 0), np.eye(2))
    assert np.allclose(linalg.psd_power(P, 0.5), np.diag([2.0, 0.0]))
    with pytest.raises(DomainError):
        linalg.psd_power(P, -1)
    with pytest.raises(DomainError):
        linalg.psd_power(np.diag([1.0, -1.0]), 0.5)


def test_psd_power_clips_rounding_negatives():
    P = np.diag([1.0, -1e-13])
    assert np.allclose(linalg.psd_power(P, 0.5), np.diag([1.0, 0.0]))


def test_abs_power_zero_is_identity():
    assert np.allclose(linalg.abs_power(NIL, 0), np.eye(2))
    assert np.allclose(linalg.abs_power(NIL, 0, adjoint=True), np.eye(2))


def test_matrix_function_domain_error():
    with pytest.raises(DomainError):
        linalg.matrix_function(np.diag([1.0, 0.0]), lambda x: 1 / x)


def test_psd_check_and_loewner():
    v = linalg.psd_check(np.diag([1.0, -1e-12]))
    assert v.is_psd and v.min_eig == pytest.approx(-1e-12)
    assert not linalg.psd_check(np.diag([1.0, -1e-3])).is_psd
    assert linalg.loewner_leq(np.eye(2), 2 * np.eye(2)).margin == pytest.approx(1.0)
    assert not linalg.loewner_leq(2 * np.eye(2), np.eye(2)).is_psd


def test_loewner_margin_scales_linearly(rng):
    A, B = psd(rng, 4), psd(rng, 4)
    m = linalg.loewner_leq(A, B).margin
    for c in (0.5, 2.0):
        assert linalg.loewner_leq(c * A, c * B).margin == pytest.approx(c * m, rel=1e-9, abs=1e-12)


def test_validation_errors():
    with pytest.raises(NotSquareError):
        linalg.as_matrix(np.ones((2, 3)))
    with pytest.raises(UsageError):
        linalg.as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(NotHermitianError):
        linalg.hermitian(NIL)
    with pytest.raises(SingularError):
        linalg.inv(np.zeros((2, 2)))


def test_default_tol_env(monkeypatch):
    monkeypatch.setenv("OPINEQ_DEFAULT_TOL", "1e-6")
    assert linalg.default_tol() == 1e-6
    assert linalg.widened_tol() == pytest.approx(1e-4)
    monkeypatch.setenv("OPINEQ_DEFAULT_TOL", "abc")
    with pytest.raises(UsageError):
        linalg.default_tol()


def test_direct_sum_and_norm():
    D = linalg.direct_sum(np.eye(1), 2 * np.eye(2))
    assert D.shape == (3, 3) and linalg.op_norm(D) == pytest.approx(2.0)
    assert linalg.op_norm(np.zeros((2, 2))) == 0.0
