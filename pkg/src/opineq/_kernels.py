"""Hot inner loops, each in a numba and a pure-numpy flavour.

The backend is chosen once at import time from ``OPINEQ_DISABLE_NUMBA``
(any non-empty value other than ``0`` selects numpy) and can be switched
at runtime with :func:`use_backend`.  Both flavours compute the same
quantities; results agree to rounding.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("OPINEQ_DISABLE_NUMBA", "") not in ("", "0")


# ---------------------------------------------------------------- numpy path

def _lambda_max_grid_np(R, J, thetas):
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    H = c * R[None] - s * J[None]
    return np.linalg.eigvalsh(H)[:, -1]


def _quad_forms_np(H, X):
    # Re <Hx, x> for every row x of X
    return np.einsum("ki,ij,kj->k", X.conj(), H, X).real


def _abs_quad_forms_np(T, X):
    return np.abs(np.einsum("ki,ij,kj->k", X.conj(), T, X))


def _schwarz_slack_np(A, B, C, X, Y):
    ax = np.einsum("ki,ij,kj->k", X.conj(), A, X).real
    by = np.einsum("ki,ij,kj->k", Y.conj(), B, Y).real
    cxy = np.einsum("ki,ij,kj->k", Y.conj(), C, X)
    return ax * by - np.abs(cxy) ** 2


# ---------------------------------------------------------------- numba path

if numba is not None:

    @numba.njit(cache=True)
    def _lambda_max_grid_nb(R, J, thetas):
        m = thetas.shape[0]
        out = np.empty(m)
        for k in range(m):
            H = np.cos(thetas[k]) * R - np.sin(thetas[k]) * J
            out[k] = np.linalg.eigvalsh(H)[-1]
        return out

    @numba.njit(cache=True)
    def _quad_forms_nb(H, X):
        m, n = X.shape
        out = np.empty(m)
        for k in range(m):
            acc = 0.0 + 0.0j
            for i in range(n):
                row = 0.0 + 0.0j
                for j in range(n):
                    row += H[i, j] * X[k, j]
                acc += np.conj(X[k, i]) * row
            out[k] = acc.real
        return out

    @numba.njit(cache=True)
    def _abs_quad_forms_nb(T, X):
        m, n = X.shape
        out = np.empty(m)
        for k in range(m):
            acc = 0.0 + 0.0j
            for i in range(n):
                row = 0.0 + 0.0j
                for j in range(n):
                    row += T[i, j] * X[k, j]
                acc += np.conj(X[k, i]) * row
            out[k] = abs(acc)
        return out

    @numba.njit(cache=True)
    def _schwarz_slack_nb(A, B, C, X, Y):
        m, n = X.shape
        out = np.empty(m)
        for k in range(m):
            ax = 0.0 + 0.0j
            by = 0.0 + 0.0j
            cxy = 0.0 + 0.0j
            for i in range(n):
                ra = 0.0 + 0.0j
                rb = 0.0 + 0.0j
                rc = 0.0 + 0.0j
                for j in range(n):
                    ra += A[i, j] * X[k, j]
                    rb += B[i, j] * Y[k, j]
                    rc += C[i, j] * X[k, j]
                ax += np.conj(X[k, i]) * ra
                by += np.conj(Y[k, i]) * rb
                cxy += np.conj(Y[k, i]) * rc
            out[k] = ax.real * by.real - abs(cxy) ** 2
        return out


_NUMPY = {
    "lambda_max_grid": _lambda_max_grid_np,
    "quad_forms": _quad_forms_np,
    "abs_quad_forms": _abs_quad_forms_np,
    "schwarz_slack": _schwarz_slack_np,
}

if numba is not None:
    _NUMBA = {
        "lambda_max_grid": _lambda_max_grid_nb,
        "quad_forms": _quad_forms_nb,
        "abs_quad_forms": _abs_quad_forms_nb,
        "schwarz_slack": _schwarz_slack_nb,
    }
else:  # pragma: no cover
    _NUMBA = None

_active = _NUMPY if (_DISABLED or _NUMBA is None) else _NUMBA


def backend():
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if _active is _NUMBA else "numpy"


def use_backend(name):
    """Select ``"numba"`` or ``"numpy"`` kernels; returns the previous name."""
    global _active
    previous = backend()
    if name == "numba":
        if _NUMBA is None:  # pragma: no cover
            raise RuntimeError("numba is not importable")
        _active = _NUMBA
    elif name == "numpy":
        _active = _NUMPY
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    return previous


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def lambda_max_grid(R, J, thetas):
    """Largest eigenvalue of ``cos(t) R - sin(t) J`` for every ``t`` in ``thetas``."""
    return _active["lambda_max_grid"](_c(R), _c(J), np.ascontiguousarray(thetas, dtype=np.float64))


def quad_forms(H, X):
    """``Re <H x_k, x_k>`` for each row ``x_k`` of ``X``."""
    return _active["quad_forms"](_c(H), _c(X))


def abs_quad_forms(T, X):
    """``|<T x_k, x_k>|`` for each row ``x_k`` of ``X``."""
    return _active["abs_quad_forms"](_c(T), _c(X))


def schwarz_slack(A, B, C, X, Y):
    """``<A x,x><B y,y> - |<C x,y>|^2`` over paired rows of ``X`` and ``Y``."""
    return _active["schwarz_slack"](_c(A), _c(B), _c(C), _c(X), _c(Y))


def random_unit_vectors(rng, count, n):
    """``count`` complex unit vectors in C^n, uniform on the sphere."""
    X = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return X
