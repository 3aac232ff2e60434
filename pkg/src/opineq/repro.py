"""Fixed-instance regression table.

Each row computes one value from a fixed input and compares it with the
reference number at a stated tolerance.
"""

import math
from dataclasses import dataclass

import numpy as np

from .classes import alpha_beta_profile
from .linalg import abs_adj, abs_hermitian, abs_op, eigvalsh, lambda_min, op_norm, real_part, singular_values
from .numrange import bound_eq12, check_lower_eq22, omega
from .theorems import check_counterexample_svamgm, check_sing_remarks, check_thm3, falsify, thm15_bounds

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)

NILPOTENT = np.array([[0, 1], [0, 0]], dtype=complex)
SHIFT3 = np.diag([1.0, 1.0], 1).astype(complex)
AB_EXAMPLE = np.array([[1, 0], [1, 1]], dtype=complex)
FIXED_S = np.array([[1, 2j], [0.5, -1]], dtype=complex)
FIXED_T = np.array([[0.3, -1], [1j, 2]], dtype=complex)


@dataclass
class Row:
    instance: str
    value: float
    expected: float
    tol: float

    @property
    def error(self):
        return abs(self.value - self.expected)

    @property
    def passed(self):
        return bool(self.error <= self.tol)

    def to_json(self):
        return {"instance": self.instance, "value": self.value, "expected": self.expected,
                "tol": self.tol, "error": self.error, "passed": self.passed}


def _rows():
    out = []

    w = eigvalsh(abs_op(NILPOTENT) - real_part(NILPOTENT))
    out.append(Row("nilpotent |T|-ReT eig 1", w[0], (1 - SQRT2) / 2, 1e-12))
    out.append(Row("nilpotent |T|-ReT eig 2", w[1], (1 + SQRT2) / 2, 1e-12))
    out.append(Row("nilpotent thm3 margin", check_thm3(NILPOTENT).margin, (1 - SQRT2) / 2, 1e-12))
    out.append(Row("diag(i,2) thm3 passes", float(check_thm3(np.diag([1j, 2])).passed), 1.0, 0.0))

    rep = check_counterexample_svamgm()
    out.append(Row("[[i,i],[0,0]] s2(ReT)", rep.details["s2_re"], 0.5, 1e-12))
    out.append(Row("[[i,i],[0,0]] sum reading", rep.details["sum_reading"], (SQRT2 - 1) / 2, 1e-10))
    out.append(Row("[[i,i],[0,0]] direct-sum reading", rep.details["direct_sum_reading"], SQRT2 / 2, 1e-10))

    prof = alpha_beta_profile(AB_EXAMPLE)
    out.append(Row("[[1,0],[1,1]] alpha^2", prof.alpha2, (3 - SQRT5) / 2, 1e-10))
    out.append(Row("[[1,0],[1,1]] beta^2", prof.beta2, (3 + SQRT5) / 2, 1e-10))
    absR = abs_hermitian(real_part(AB_EXAMPLE))
    out.append(Row("[[1,0],[1,1]] |ReT| vs [[1,.5],[.5,1]]",
                   float(np.max(np.abs(absR - np.array([[1, 0.5], [0.5, 1]])))), 0.0, 1e-12))
    first, second = thm15_bounds(AB_EXAMPLE, prof)
    rounded_abs = np.array([[1.8043, 0.6014], [0.6014, 1.2028]])
    rounded_adj = np.array([[1.2028, 0.6014], [0.6014, 1.8043]])
    out.append(Row("[[1,0],[1,1]] bound on |T| (4 dp)", float(np.max(np.abs(second - rounded_abs))), 0.0, 5e-4))
    out.append(Row("[[1,0],[1,1]] bound on |T*| (4 dp)", float(np.max(np.abs(first - rounded_adj))), 0.0, 5e-4))
    out.append(Row("[[1,0],[1,1]] lower eq22 holds", float(check_lower_eq22(AB_EXAMPLE).passed), 1.0, 0.0))

    M = abs_op(SHIFT3) + abs_adj(SHIFT3) - 2 * abs_hermitian(real_part(SHIFT3))
    out.append(Row("3x3 shift min eig of |T|+|T*|-2|ReT|", lambda_min(M), 1 - SQRT2, 1e-12))

    out.append(Row("omega([[0,1],[0,0]])", omega(NILPOTENT).value, 0.5, 1e-8))
    eye = np.eye(2, dtype=complex)
    out.append(Row("eq12 at t=1 equals (1/2)|| |S*|^2+|T|^2 ||", bound_eq12(FIXED_S, FIXED_T, 1.0),
                   0.5 * op_norm(FIXED_S @ FIXED_S.conj().T + FIXED_T.conj().T @ FIXED_T), 1e-10))
    out.append(Row("eq12 at S=I, t=0 equals (1/2)|| |T|+|T*| ||", bound_eq12(eye, FIXED_T, 0.0),
                   0.5 * op_norm(abs_op(FIXED_T) + abs_adj(FIXED_T)), 1e-10))

    sr = check_sing_remarks(NILPOTENT, np.zeros((2, 2)))
    out.append(Row("s_j(Re S) vs diag-sum at S=nilpotent", float(sr.details["margins"]["re_S"]), 0.0, 1e-12))
    out.append(Row("s_1(Re S) at S=nilpotent", singular_values(real_part(NILPOTENT))[0], 0.5, 1e-12))

    res = falsify("thm3", [2], 100, 0, "ginibre")
    out.append(Row("thm3 falsified on ginibre dim 2", float(res.n_violations >= 1), 1.0, 0.0))
    return out


def run(tol=None):
    """All rows; a non-None ``tol`` overrides every per-row tolerance."""
    rows = _rows()
    if tol is not None:
        for r in rows:
            r.tol = float(tol)
    return rows


def format_table(rows):
    lines = [f"{'instance':48s} {'value':>22s} {'expected':>22s} {'tol':>8s}  result"]
    for r in rows:
        lines.append(f"{r.instance:48s} {r.value:22.15g} {r.expected:22.15g} {r.tol:8.1e}  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)
