"""2x2 operator block matrices and the block-positivity lemmas.

A :class:`BlockForm` ``(A, B, C)`` stands for the Hermitian matrix

    [[A, C*],
     [C, B ]]

with ``A`` and ``B`` Hermitian and ``C`` arbitrary, all ``n x n``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, FgMismatchError, PreconditionUnmet, SingularError, UsageError
from .io import matrix_from_json, matrix_to_json
from .linalg import (
    abs_apply,
    as_matrix,
    default_tol,
    direct_sum,
    hermitian,
    hermitian_eig,
    lambda_min,
    loewner_leq,
    op_norm,
    psd_check,
    singular_values,
    sym,
    widened_tol,
)
from .means import geometric_mean
from .report import make_report


@dataclass(frozen=True, eq=False)
class BlockForm:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        A = hermitian(self.A)
        B = hermitian(self.B)
        C = as_matrix(self.C)
        if not A.shape == B.shape == C.shape:
            raise DimensionMismatch(f"block shapes {A.shape}, {B.shape}, {C.shape} differ")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @property
    def n(self):
        return self.A.shape[0]

    def scale(self):
        return max(1.0, op_norm(self.A), op_norm(self.B), op_norm(self.C))

    def inputs(self):
        return {"A": self.A, "B": self.B, "C": self.C}

    def to_json(self):
        return {k: matrix_to_json(v) for k, v in self.inputs().items()}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(*(matrix_from_json(obj[k]) for k in ("A", "B", "C")))
        except KeyError as exc:
            raise UsageError(f"BlockForm JSON is missing key {exc}") from None


def assemble(bf):
    return sym(np.block([[bf.A, bf.C.conj().T], [bf.C, bf.B]]))


def block_psd(bf, tol=None):
    """PSD verdict for the assembled ``2n x 2n`` matrix (absolute ``tol``)."""
    M = assemble(bf)
    if tol is None:
        tol = default_tol() * max(1.0, op_norm(M))
    return psd_check(M, tol)


def swapped(bf):
    """``[[B, C], [C*, A]]`` as a BlockForm (bottom-left block ``C*``)."""
    return BlockForm(bf.B, bf.A, bf.C.conj().T)


def swap_check(bf, tol=None):
    """True iff ``[[A, C*], [C, B]]`` and ``[[B, C], [C*, A]]`` get the same PSD verdict."""
    return block_psd(bf, tol).is_psd == block_psd(swapped(bf), tol).is_psd


def schur_test(bf, tol=None):
    """PSD verdict through the Schur complement: ``C* B^{-1} C <= A``.

    With ``C`` in the bottom-left corner, the complement of the strictly
    positive ``B`` is ``A - C* B^{-1} C``.
    """
    lb = lambda_min(bf.B)
    if not lb > 1e-8 * op_norm(bf.B):
        raise SingularError("Schur test needs B strictly positive")
    X = sym(bf.C.conj().T @ np.linalg.solve(bf.B, bf.C))
    if tol is None:
        tol = default_tol() * max(1.0, op_norm(bf.A), op_norm(X))
    return loewner_leq(X, bf.A, tol)


def _require_psd(bf, what):
    verdict = block_psd(bf)
    if not verdict.is_psd:
        raise PreconditionUnmet(f"{what}: block is not PSD (min eigenvalue {verdict.min_eig:.3g})")
    return verdict


def lemma4_consequence(bf, tol=None):
    """For Hermitian ``C`` and a PSD block: ``+-C <= A # B``."""
    if op_norm(bf.C - bf.C.conj().T) > 1e-10 * bf.scale():
        raise PreconditionUnmet("lemma4: C must be Hermitian")
    _require_psd(bf, "lemma4")
    C = sym(bf.C)
    G, info = geometric_mean(bf.A, bf.B, full_output=True)
    if tol is None:
        tol = widened_tol() * bf.scale()
    margins = {"upper": lambda_min(G - C), "lower": lambda_min(G + C)}
    return make_report("lemma4", bf.inputs(), margins, tol, details={"mean_shift": info["shift"]})


def lemma16_block(bf1, bf2):
    """``[[A1 # A2, C*], [C, B1 # B2]]`` from two blocks sharing ``C``."""
    if bf1.n != bf2.n:
        raise DimensionMismatch("blocks have different sizes")
    if op_norm(bf1.C - bf2.C) > 1e-12 * max(bf1.scale(), bf2.scale()):
        raise PreconditionUnmet("lemma16: the two blocks must share C")
    A = geometric_mean(bf1.A, bf2.A)
    B = geometric_mean(bf1.B, bf2.B)
    return BlockForm(A, B, bf1.C)


def lemma16_check(bf1, bf2, tol=None):
    _require_psd(bf1, "lemma16 (first block)")
    _require_psd(bf2, "lemma16 (second block)")
    combined = lemma16_block(bf1, bf2)
    M = assemble(combined)
    if tol is None:
        tol = widened_tol() * max(1.0, op_norm(M))
    margins = {"mean_block": lambda_min(M)}
    inputs = {"A1": bf1.A, "B1": bf1.B, "A2": bf2.A, "B2": bf2.B, "C": bf1.C}
    return make_report("lemma16", inputs, margins, tol)


def _split_unit(v, n):
    x, y = v[:n], v[n:]
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    x = x / nx if nx > 0 else x
    y = y / ny if ny > 0 else y
    return x, y


def _vec_json(v):
    return [[float(z.real), float(z.imag)] for z in v]


def lemma20_spot(bf, trials=10_000, seed=0, tol=None):
    """Scalar form of block positivity: ``|<Cx, y>|^2 <= <Ax, x><By, y>``.

    If the block is PSD, the inequality is sampled on ``trials`` random unit
    pairs.  Otherwise the most negative eigenvector of the block, split into
    its halves, is offered as a violating pair.
    """
    for label, M in (("A", bf.A), ("B", bf.B)):
        if not psd_check(M).is_psd:
            raise PreconditionUnmet(f"lemma20: {label} must be PSD")
    scale = max(1.0, op_norm(bf.A) * op_norm(bf.B), op_norm(bf.C) ** 2)
    if tol is None:
        tol = default_tol() * scale
    verdict = block_psd(bf)
    n = bf.n
    if verdict.is_psd:
        rng = np.random.default_rng(seed)
        X = _kernels.random_unit_vectors(rng, trials, n)
        Y = _kernels.random_unit_vectors(rng, trials, n)
        slack = _kernels.schwarz_slack(bf.A, bf.B, bf.C, X, Y)
        k = int(np.argmin(slack))
        report = make_report(
            "lemma20", bf.inputs(), {"sampled": slack[k]}, tol, seed=seed,
            details={"block_psd": True, "trials": trials, "violations": int(np.sum(slack < -tol))},
        )
        if not report.passed:
            report.witness.update({"x": _vec_json(X[k]), "y": _vec_json(Y[k])})
        return report
    es = hermitian_eig(assemble(bf))
    x, y = _split_unit(es.vectors[:, 0], n)
    slack = float(_kernels.schwarz_slack(bf.A, bf.B, bf.C, x[None], y[None])[0])
    report = make_report(
        "lemma20", bf.inputs(), {"eigvec_split": slack}, tol, seed=seed,
        details={"block_psd": False, "block_min_eig": verdict.min_eig},
    )
    if report.witness is not None:
        report.witness.update({"x": _vec_json(x), "y": _vec_json(y)})
    return report


def lemma0_check(bf, tol=None):
    """``s_j(C) <= s_j(A (+) B)`` for ``j = 1..n`` on a PSD block."""
    _require_psd(bf, "lemma0")
    n = bf.n
    sc = singular_values(bf.C)
    sab = singular_values(direct_sum(bf.A, bf.B))[:n]
    if tol is None:
        tol = default_tol() * bf.scale()
    slack = sab - sc
    return make_report("lemma0", bf.inputs(), {"sv_slack": slack.min()}, tol, details={"slack": slack})


def tao_check(bf, tol=None):
    """``2 s_j(C) <= s_j([[A, C*], [C, B]])`` for ``j = 1..n`` on a PSD block."""
    _require_psd(bf, "tao")
    n = bf.n
    sc = singular_values(bf.C)
    sm = singular_values(assemble(bf))[:n]
    if tol is None:
        tol = default_tol() * max(1.0, sm[0])
    slack = sm - 2 * sc
    return make_report("tao", bf.inputs(), {"sv_slack": slack.min()}, tol, details={"slack": slack})


# ------------------------------------------------------------- f, g pairs

def check_fg(f, g, spectrum, rtol=1e-10):
    """Validate ``f(t) g(t) = t`` and ``f, g >= 0`` pointwise on ``spectrum``."""
    s = np.asarray(spectrum, dtype=np.float64)
    with np.errstate(all="ignore"):
        fs = np.broadcast_to(np.asarray(f(s), dtype=np.float64), s.shape)
        gs = np.broadcast_to(np.asarray(g(s), dtype=np.float64), s.shape)
    if not (np.all(np.isfinite(fs)) and np.all(np.isfinite(gs))):
        raise FgMismatchError("f or g is not finite on the spectrum")
    if np.any(fs < 0) or np.any(gs < 0):
        raise FgMismatchError("f and g must be non-negative")
    err = np.max(np.abs(fs * gs - s), initial=0.0)
    bound = rtol * max(1.0, float(np.max(s, initial=0.0)))
    if err > bound:
        raise FgMismatchError(f"f(t) g(t) = t fails on the spectrum (error {err:.3g})")


def power_pair(t):
    """``f(x) = x^t``, ``g(x) = x^{1-t}`` (``x^0 = 1``)."""
    if not 0.0 <= t <= 1.0:
        raise UsageError(f"t must lie in [0, 1], got {t}")
    return (lambda x: np.power(x, t)), (lambda x: np.power(x, 1.0 - t))


def fg_pair(name):
    """Named ``(f, g)`` pairs: ``sqrt``, ``power:<t>``, ``one-id`` (f=1, g=x), ``id-one``."""
    if name == "sqrt":
        return np.sqrt, np.sqrt
    if name == "one-id":
        return (lambda x: np.ones_like(x)), (lambda x: x)
    if name == "id-one":
        return (lambda x: x), (lambda x: np.ones_like(x))
    if name.startswith("power:"):
        try:
            t = float(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad f,g id {name!r}") from None
        return power_pair(t)
    raise UsageError(f"unknown f,g pair {name!r}; known: sqrt, power:<t>, one-id, id-one")


def lemma6_block(S, T, f=np.sqrt, g=np.sqrt):
    """``[[f^2(|T|), (ST)*], [ST, S g^2(|T*|) S*]]`` as a BlockForm."""
    S = as_matrix(S)
    T = as_matrix(T)
    if S.shape != T.shape:
        raise DimensionMismatch(f"shapes {S.shape} and {T.shape} differ")
    check_fg(f, g, singular_values(T))
    A = abs_apply(T, lambda x: f(x) ** 2)
    B = sym(S @ abs_apply(T, lambda x: g(x) ** 2, adjoint=True) @ S.conj().T)
    return BlockForm(A, B, S @ T)
