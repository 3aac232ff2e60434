"""Operator classes: normal, semi-hyponormal, hyponormal, (alpha, beta)-normal.

In finite dimensions semi-hyponormal and hyponormal matrices are normal
(``|T|`` and ``|T*|`` have the same trace, so ``|T| - |T*| >= O`` forces
equality).  Random corpora for those classes are therefore normal corpora.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure, SingularError, UsageError
from .linalg import (
    abs_adj,
    abs_op,
    as_matrix,
    default_tol,
    eigvalsh,
    lambda_min,
    op_norm,
    singular_values,
    sym,
)

PROFILE_COND_CAP = 1e8
INVERTIBLE_COND_CAP = 1e4

CLASS_NAMES = ("normal", "semi-hyponormal", "hyponormal", "alpha-beta-normal", "none")
CORPUS_KINDS = ("ginibre", "normal", "psd", "unitary", "invertible")
CORPUS_ALIASES = {"semi-hyponormal": "normal", "hyponormal": "normal"}


@dataclass(frozen=True)
class ClassVerdict:
    class_name: str
    margin: float
    member: bool


@dataclass(frozen=True)
class AlphaBetaProfile:
    """Tightest ``alpha^2 |T|^2 <= |T*|^2 <= beta^2 |T|^2``."""

    alpha: float
    beta: float
    cond_abs: float

    @property
    def alpha2(self):
        return self.alpha**2

    @property
    def beta2(self):
        return self.beta**2


def _rel(tol):
    return default_tol() if tol is None else tol


def is_normal(T, tol=None):
    T = as_matrix(T)
    gap = op_norm(T.conj().T @ T - T @ T.conj().T)
    ok = gap <= _rel(tol) * max(1.0, op_norm(T) ** 2)
    return ClassVerdict("normal" if ok else "none", -gap, bool(ok))


def is_semi_hyponormal(T, tol=None):
    T = as_matrix(T)
    margin = lambda_min(abs_op(T) - abs_adj(T))
    ok = margin >= -_rel(tol) * max(1.0, op_norm(T))
    return ClassVerdict("semi-hyponormal" if ok else "none", margin, bool(ok))


def is_hyponormal(T, tol=None):
    T = as_matrix(T)
    margin = lambda_min(T @ T.conj().T - T.conj().T @ T)
    ok = margin >= -_rel(tol) * max(1.0, op_norm(T) ** 2)
    return ClassVerdict("hyponormal" if ok else "none", margin, bool(ok))


def alpha_beta_profile(T):
    """Extreme eigenvalues of ``M = |T|^{-1} |T*|^2 |T|^{-1}`` give ``alpha^2`` and ``beta^2``."""
    T = as_matrix(T)
    s = singular_values(T)
    if s[-1] == 0 or s[0] / s[-1] > PROFILE_COND_CAP:
        cond = np.inf if s[-1] == 0 else s[0] / s[-1]
        raise SingularError(f"profile needs invertible T with cond <= {PROFILE_COND_CAP:g}, got {cond:.3g}")
    _, _, Vh = np.linalg.svd(T)
    V = Vh.conj().T
    inv_abs = (V / s) @ Vh
    M = sym(inv_abs @ (T @ T.conj().T) @ inv_abs)
    w = eigvalsh(M)
    alpha = min(1.0, float(np.sqrt(max(w[0], 0.0))))
    beta = max(1.0, float(np.sqrt(w[-1])))
    return AlphaBetaProfile(alpha, beta, float(s[0] / s[-1]))


def profile_margins(T, alpha, beta):
    """Loewner margins of ``alpha^2|T|^2 <= |T*|^2`` and ``|T*|^2 <= beta^2|T|^2``."""
    T = as_matrix(T)
    P = T.conj().T @ T
    Q = T @ T.conj().T
    return lambda_min(Q - alpha**2 * P), lambda_min(beta**2 * P - Q)


def classify(T, tol=None):
    """Most specific class among normal, (alpha, beta)-normal, none, plus all margins."""
    T = as_matrix(T)
    nv = is_normal(T, tol)
    sv = is_semi_hyponormal(T, tol)
    hv = is_hyponormal(T, tol)
    try:
        prof = alpha_beta_profile(T)
    except SingularError:
        prof = None
    if nv.member:
        name, margin = "normal", nv.margin
    elif sv.member:
        name, margin = "semi-hyponormal", sv.margin
    elif hv.member:
        name, margin = "hyponormal", hv.margin
    elif prof is not None:
        name = "alpha-beta-normal"
        margin = min(profile_margins(T, prof.alpha, prof.beta))
    else:
        name = "none"
        margin = min(nv.margin, sv.margin, hv.margin)
    return {
        "class": name,
        "margin": float(margin),
        "alpha": None if prof is None else prof.alpha,
        "beta": None if prof is None else prof.beta,
        "margins": {"normal": nv.margin, "semi-hyponormal": sv.margin, "hyponormal": hv.margin},
    }


# ------------------------------------------------------------- generators

def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def _haar_unitary(rng, n):
    Q, R = np.linalg.qr(_ginibre(rng, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def gen_matrix(kind, n, seed):
    """Seeded random matrix of a given corpus kind; deterministic in ``(kind, n, seed)``."""
    kind = CORPUS_ALIASES.get(kind, kind)
    if kind not in CORPUS_KINDS:
        raise UsageError(f"unknown corpus kind {kind!r}; known: {', '.join(CORPUS_KINDS)}")
    if n < 1:
        raise UsageError("n must be >= 1")
    rng = _rng(seed)
    if kind == "ginibre":
        return _ginibre(rng, n)
    if kind == "unitary":
        return _haar_unitary(rng, n)
    if kind == "normal":
        U = _haar_unitary(rng, n)
        d = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
        return (U * d) @ U.conj().T
    if kind == "psd":
        X = _ginibre(rng, n)
        P = X.conj().T @ X
        return sym(P + 1e-6 * op_norm(P) * np.eye(n))
    for _ in range(1000):
        X = _ginibre(rng, n)
        s = singular_values(X)
        if s[-1] > 0 and s[0] / s[-1] <= INVERTIBLE_COND_CAP:
            return X
    raise NumericalFailure("could not draw an invertible matrix within the condition cap")
