"""Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  Any
function documented as returning a Hermitian matrix returns an array that
is exactly Hermitian (it has been symmetrized as ``(M + M*) / 2``).

Singular values follow the descending convention: ``s_1`` is the largest.
"""

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NotHermitianError,
    NotSquareError,
    NumericalFailure,
    SingularError,
    UsageError,
)

BASE_TOL = 1e-9
WIDEN_FACTOR = 100.0
HERMITIAN_CHECK = 1e-8


def default_tol():
    """Relative PSD tolerance; ``OPINEQ_DEFAULT_TOL`` overrides ``1e-9``."""
    raw = os.environ.get("OPINEQ_DEFAULT_TOL")
    if raw:
        try:
            value = float(raw)
        except ValueError:
            raise UsageError(f"OPINEQ_DEFAULT_TOL={raw!r} is not a number") from None
        if not value > 0:
            raise UsageError("OPINEQ_DEFAULT_TOL must be positive")
        return value
    return BASE_TOL


def widened_tol():
    """Relative tolerance for checks whose bound involves a mean or a root."""
    return WIDEN_FACTOR * default_tol()


def as_matrix(M):
    """Validate a square, finite complex matrix and return it as complex128."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise NotSquareError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise UsageError("matrix has non-finite entries")
    return A


def sym(M):
    return (M + M.conj().T) / 2


def hermitian(M):
    """Validate near-Hermitian input and symmetrize it.

    Inputs further than ``1e-8 * max(1, ||M||)`` from Hermitian are rejected,
    since silently symmetrizing a non-Hermitian matrix would change the question.
    """
    A = as_matrix(M)
    gap = op_norm(A - A.conj().T)
    if gap > HERMITIAN_CHECK * max(1.0, op_norm(A)):
        raise NotHermitianError(f"matrix is not Hermitian (||M - M*|| = {gap:.3g})")
    return sym(A)


def _same_shape(A, B):
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray  # ascending
    vectors: np.ndarray  # columns are eigenvectors


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    min_eig: float
    tol: float

    @property
    def margin(self):
        return self.min_eig


def hermitian_eig(H):
    H = sym(as_matrix(H))
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"Hermitian eigensolver failed: {exc}") from exc
    return EigenSystem(w, V)


def eigvalsh(H):
    try:
        return np.linalg.eigvalsh(sym(H))
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"Hermitian eigensolver failed: {exc}") from exc


def lambda_min(H):
    return float(eigvalsh(H)[0])


def lambda_max(H):
    return float(eigvalsh(H)[-1])


def matrix_function(H, phi):
    """``V diag(phi(lambda)) V*`` for Hermitian ``H``; ``phi`` is vectorized.

    Raises DomainError when ``phi`` is not finite on some eigenvalue.
    """
    es = hermitian_eig(H)
    with np.errstate(all="ignore"):
        vals = np.asarray(phi(es.eigenvalues), dtype=np.float64)
    if vals.shape != es.eigenvalues.shape:
        vals = np.broadcast_to(vals, es.eigenvalues.shape)
    if not np.all(np.isfinite(vals)):
        bad = es.eigenvalues[~np.isfinite(vals)]
        raise DomainError(f"function undefined at eigenvalue(s) {bad}")
    return sym((es.vectors * vals) @ es.vectors.conj().T)


def _clip_nonneg(w, scale, tol=None):
    tol = default_tol() * max(1.0, scale) if tol is None else tol
    if w.size and w[0] < -tol:
        raise DomainError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3g})")
    return np.clip(w, 0.0, None)


def psd_power(H, p, tol=None):
    """``H^p`` for PSD ``H``, with ``x^0 = 1`` (so ``H^0 = I``).

    Eigenvalues in ``[-tol, 0)`` are treated as rounding and clipped to zero.
    Negative ``p`` requires ``H`` to be invertible.
    """
    es = hermitian_eig(H)
    w = _clip_nonneg(es.eigenvalues, float(np.max(np.abs(es.eigenvalues), initial=0.0)), tol)
    if p == 0:
        vals = np.ones_like(w)
    else:
        if p < 0 and np.any(w == 0):
            raise DomainError("negative power of a singular matrix")
        vals = w**p
    return sym((es.vectors * vals) @ es.vectors.conj().T)


def psd_apply(H, phi, tol=None):
    """Like :func:`matrix_function` but first clips rounding negatives of a PSD input."""
    es = hermitian_eig(H)
    w = _clip_nonneg(es.eigenvalues, float(np.max(np.abs(es.eigenvalues), initial=0.0)), tol)
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(np.asarray(phi(w), dtype=np.float64), w.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"function undefined at eigenvalue(s) {w[~np.isfinite(vals)]}")
    return sym((es.vectors * vals) @ es.vectors.conj().T)


def _svd(T):
    try:
        return np.linalg.svd(T)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD failed: {exc}") from exc


def abs_op(T):
    """``|T| = (T*T)^{1/2}``, computed from the SVD ``T = U diag(s) V*`` as ``V diag(s) V*``."""
    T = as_matrix(T)
    _, s, Vh = _svd(T)
    return sym((Vh.conj().T * s) @ Vh)


def abs_adj(T):
    """``|T*| = (TT*)^{1/2} = U diag(s) U*``."""
    T = as_matrix(T)
    U, s, _ = _svd(T)
    return sym((U * s) @ U.conj().T)


def abs_power(T, p, adjoint=False):
    """``|T|^p`` (or ``|T*|^p``) with the ``x^0 = 1`` convention."""
    T = as_matrix(T)
    U, s, Vh = _svd(T)
    if p == 0:
        vals = np.ones_like(s)
    else:
        if p < 0 and np.any(s == 0):
            raise DomainError("negative power of a singular |T|")
        vals = s**p
    W = U if adjoint else Vh.conj().T
    return sym((W * vals) @ W.conj().T)


def abs_apply(T, phi, adjoint=False):
    """``phi(|T|)`` (or ``phi(|T*|)``), with ``phi`` evaluated on the singular values."""
    T = as_matrix(T)
    U, s, Vh = _svd(T)
    with np.errstate(all="ignore"):
        vals = np.broadcast_to(np.asarray(phi(s), dtype=np.float64), s.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"function undefined at singular value(s) {s[~np.isfinite(vals)]}")
    W = U if adjoint else Vh.conj().T
    return sym((W * vals) @ W.conj().T)


def abs_hermitian(H):
    """``|H|`` for Hermitian ``H``: ``V diag(|lambda|) V*``."""
    return matrix_function(H, np.abs)


def real_part(T):
    T = as_matrix(T)
    return (T + T.conj().T) / 2


def imag_part(T):
    T = as_matrix(T)
    return (T - T.conj().T) / 2j


def psd_check(H, tol=None):
    """Decide ``H >= O``; ``tol`` is absolute, default ``1e-9 max(1, ||H||)``."""
    H = sym(as_matrix(H))
    if tol is None:
        tol = default_tol() * max(1.0, op_norm(H))
    if tol < 0:
        raise UsageError("tol must be non-negative")
    m = lambda_min(H)
    return PsdVerdict(bool(m >= -tol), m, float(tol))


def loewner_leq(A, B, tol=None):
    """Decide ``A <= B`` in the Loewner order; margin is ``lambda_min(B - A)``."""
    A = as_matrix(A)
    B = as_matrix(B)
    _same_shape(A, B)
    if tol is None:
        tol = default_tol() * max(1.0, op_norm(A), op_norm(B))
    return psd_check(B - A, tol)


def singular_values(T):
    """Singular values in descending order; rectangular input is allowed."""
    T = np.asarray(T, dtype=np.complex128)
    if T.ndim != 2:
        raise UsageError("expected a 2-d array")
    if T.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.svd(T, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD failed: {exc}") from exc


def direct_sum(A, B):
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    B = np.atleast_2d(np.asarray(B, dtype=np.complex128))
    out = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=np.complex128)
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0]:, A.shape[1]:] = B
    return out


def op_norm(T):
    """Operator norm, the largest singular value (0 for the zero matrix)."""
    T = np.asarray(T, dtype=np.complex128)
    if T.size == 0:
        return 0.0
    return float(singular_values(T)[0])


def inv(A):
    try:
        return np.linalg.inv(A)
    except np.linalg.LinAlgError as exc:
        raise SingularError(str(exc)) from exc
