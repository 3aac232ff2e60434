"""CheckReport: the outcome of evaluating one named inequality."""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .io import matrix_to_json


def _encode(value):
    if isinstance(value, np.ndarray) and value.ndim == 2 and value.shape[0] == value.shape[1]:
        return matrix_to_json(value)
    if isinstance(value, np.ndarray):
        return [_encode(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def encode_inputs(inputs):
    return {k: _encode(v) for k, v in inputs.items()}


def digest(inputs, seed=None):
    payload = json.dumps({"inputs": encode_inputs(inputs), "seed": seed}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class CheckReport:
    """``passed`` iff ``margin >= -tol``; ``witness`` is set iff the check failed.

    ``margin`` is the minimum slack over every sub-inequality (a Loewner
    margin is a smallest eigenvalue, a singular-value margin the smallest
    ``s_j`` slack).  ``details`` holds the individual sub-margins.
    """

    check_id: str
    inputs_digest: str
    margin: float
    passed: bool
    tol: float
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "check_id": self.check_id,
            "inputs_digest": self.inputs_digest,
            "margin": self.margin,
            "passed": self.passed,
            "tol": self.tol,
            "witness": self.witness,
            "details": _encode(self.details),
        }


def make_report(check_id, inputs, margins, tol, *, seed=None, details=None):
    """Aggregate named sub-margins into a report (minimum wins)."""
    margins = {k: float(v) for k, v in margins.items()}
    margin = min(margins.values()) if margins else 0.0
    passed = bool(margin >= -tol)
    info = {"margins": margins}
    if details:
        info.update(details)
    return CheckReport(
        check_id=check_id,
        inputs_digest=digest(inputs, seed),
        margin=margin,
        passed=passed,
        tol=float(tol),
        witness=None if passed else encode_inputs(inputs),
        details=info,
    )
