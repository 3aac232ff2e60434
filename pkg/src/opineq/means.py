"""Operator means of positive semidefinite matrices.

A mean with representing function ``phi`` (``phi(1) = 1``) is

    A sigma B = A^{1/2} phi(A^{-1/2} B A^{-1/2}) A^{1/2},

and the weighted geometric mean is the case ``phi(x) = x**t``.

Singular inputs: when ``A`` is (numerically) singular but ``B`` is not, the
mean is evaluated from the ``B`` side through the transposed function
``x phi(1/x)`` (for ``#_t`` this is ``B #_{1-t} A``), which is exact.  Only
when both are singular are ``A`` and ``B`` shifted by ``eps * max(1, ||A||, ||B||) * I``.
The shift is reported through ``full_output=True``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatch, DomainError, UsageError
from .linalg import as_matrix, lambda_min, op_norm, psd_apply, psd_check, psd_power, sym

DEFAULT_EPS = 1e-10

WEIGHTED = "weighted-geometric"
FUNCTION = "function"


@dataclass(frozen=True)
class MeanSpec:
    """Description of an operator mean.

    Either ``kind="weighted-geometric"`` with parameter ``t`` in [0, 1], or
    ``kind="function"`` with a representing function ``func``.  Functions are
    trusted to be operator monotone; only ``func(1) == 1`` is checked.
    """

    kind: str
    t: Optional[float] = None
    func: Optional[Callable] = field(default=None, compare=False)
    transpose: Optional[Callable] = field(default=None, compare=False)
    name: Optional[str] = None
    epsilon: float = DEFAULT_EPS

    def __post_init__(self):
        if self.epsilon < 0:
            raise UsageError("epsilon must be non-negative")
        if self.kind == WEIGHTED:
            if self.t is None or not 0.0 <= self.t <= 1.0:
                raise UsageError(f"weighted geometric mean needs t in [0, 1], got {self.t}")
        elif self.kind == FUNCTION:
            if self.func is None:
                raise UsageError("function mean needs a representing function")
            at_one = float(np.asarray(self.func(np.array([1.0])))[0])
            if abs(at_one - 1.0) > 1e-12:
                raise UsageError(f"representing function must satisfy phi(1) = 1, got {at_one}")
        else:
            raise UsageError(f"unknown mean kind {self.kind!r}")

    @classmethod
    def weighted(cls, t):
        return cls(WEIGHTED, t=float(t))

    @classmethod
    def from_function(cls, func, name=None, transpose=None):
        return cls(FUNCTION, func=func, name=name, transpose=transpose)

    @classmethod
    def from_registry(cls, name):
        func, transpose = _lookup(name)
        return cls(FUNCTION, func=func, transpose=transpose, name=name)

    def to_json(self):
        if self.kind == WEIGHTED:
            return {"kind": WEIGHTED, "t": self.t}
        if self.name is None:
            raise UsageError("only registry functions can be serialized")
        return {"kind": FUNCTION, "name": self.name}

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == WEIGHTED:
            return cls.weighted(obj["t"])
        if kind == FUNCTION:
            return cls.from_registry(obj["name"])
        raise UsageError(f"unknown mean kind {kind!r}")


def _power_fn(t):
    return lambda x: np.power(x, t)


def _lookup(name):
    if name == "sqrt":
        return np.sqrt, np.sqrt
    if name == "arith":
        f = lambda x: (1.0 + x) / 2.0  # noqa: E731
        return f, f
    if name.startswith("power:"):
        try:
            t = float(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad power mean id {name!r}") from None
        if not 0.0 <= t <= 1.0:
            raise UsageError(f"power mean exponent must lie in [0, 1], got {t}")
        return _power_fn(t), _power_fn(1.0 - t)
    raise UsageError(f"unknown mean function {name!r}; known: sqrt, arith, power:<t>")


REGISTRY = ("sqrt", "arith", "power:<t>")


def _validated_pair(A, B):
    A = sym(as_matrix(A))
    B = sym(as_matrix(B))
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    for label, M in (("A", A), ("B", B)):
        if not psd_check(M).is_psd:
            raise DomainError(f"mean argument {label} is not positive semidefinite")
    return A, B


def _kernel(A, B, phi):
    # A^{1/2} phi(A^{-1/2} B A^{-1/2}) A^{1/2}, A invertible
    Ah = psd_power(A, 0.5)
    Aih = psd_power(A, -0.5)
    X = sym(Aih @ B @ Aih)
    return sym(Ah @ psd_apply(X, phi) @ Ah)


def _choose_side(A, B, eps, can_transpose):
    e0 = eps * max(1.0, op_norm(A), op_norm(B))
    la, lb = lambda_min(A), lambda_min(B)
    a_ok = la >= e0
    b_ok = can_transpose and lb >= e0
    if a_ok and b_ok:
        # evaluate from the better conditioned side
        return ("A" if la / op_norm(A) >= lb / op_norm(B) else "B"), 0.0
    if a_ok:
        return "A", 0.0
    if b_ok:
        return "B", 0.0
    return "A", e0


def _evaluate(A, B, phi, phi_transpose, eps, full_output):
    side, shift = _choose_side(A, B, eps, phi_transpose is not None)
    if shift:
        eye = np.eye(A.shape[0])
        A = A + shift * eye
        B = B + shift * eye
    result = _kernel(A, B, phi) if side == "A" else _kernel(B, A, phi_transpose)
    if full_output:
        return result, {"shift": float(shift), "side": side}
    return result


def weighted_geometric_mean(A, B, t, *, eps=DEFAULT_EPS, full_output=False):
    """``A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`` for PSD ``A``, ``B``."""
    if not 0.0 <= t <= 1.0:
        raise UsageError(f"t must lie in [0, 1], got {t}")
    A, B = _validated_pair(A, B)
    if t == 0.0 or t == 1.0:
        result = A if t == 0.0 else B
        return (result, {"shift": 0.0, "side": "exact"}) if full_output else result
    return _evaluate(A, B, _power_fn(t), _power_fn(1.0 - t), eps, full_output)


def geometric_mean(A, B, *, eps=DEFAULT_EPS, full_output=False):
    """``A # B``, the weighted geometric mean at ``t = 1/2``."""
    return weighted_geometric_mean(A, B, 0.5, eps=eps, full_output=full_output)


def mean_apply(spec, A, B, *, full_output=False):
    if spec.kind == WEIGHTED:
        return weighted_geometric_mean(A, B, spec.t, eps=spec.epsilon, full_output=full_output)
    A, B = _validated_pair(A, B)
    return _evaluate(A, B, spec.func, spec.transpose, spec.epsilon, full_output)
