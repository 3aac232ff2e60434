"""Numerical radius and the bounds on it.

``omega(T) = sup_theta lambda_max(Re(e^{i theta} T))``.  The function
``h(theta) = lambda_max(cos(theta) Re T - sin(theta) Im T)`` is the support
function of the numerical range, so every evaluation is a lower bound for
``omega`` and ``|h(a) - h(b)| <= ||T|| |a - b|``.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .blocks import check_fg, power_pair
from .classes import alpha_beta_profile, is_hyponormal
from .errors import NumericalFailure, PreconditionUnmet, UsageError
from .linalg import (
    abs_apply,
    abs_power,
    as_matrix,
    imag_part,
    op_norm,
    real_part,
    singular_values,
    sym,
    widened_tol,
)
from .means import geometric_mean
from .report import make_report

GRID_POINTS = 720
MAX_REFINE = 10_000
EIG_SLACK = 1e-11
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class NumericalRadiusEstimate:
    value: float
    theta_star: float
    grid_points: int
    refine_iters: int
    error_bound: float

    @property
    def lower(self):
        return self.value - self.error_bound

    @property
    def upper(self):
        return self.value + self.error_bound


def _h(R, J, theta):
    return float(np.linalg.eigvalsh(math.cos(theta) * R - math.sin(theta) * J)[-1])


def _golden(R, J, a, b, width, budget):
    """Maximize h on [a, b] until the bracket is narrower than ``width``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    hc, hd = _h(R, J, c), _h(R, J, d)
    best_t, best_h = (c, hc) if hc >= hd else (d, hd)
    iters = 0
    while b - a > width:
        if iters >= budget:
            raise NumericalFailure("golden-section refinement did not converge")
        iters += 1
        if hc >= hd:
            b, d, hd = d, c, hc
            c = b - _INVPHI * (b - a)
            hc = _h(R, J, c)
            if hc > best_h:
                best_t, best_h = c, hc
        else:
            a, c, hc = c, d, hd
            d = a + _INVPHI * (b - a)
            hd = _h(R, J, d)
            if hd > best_h:
                best_t, best_h = d, hd
    return best_t, best_h, b - a, iters


def _candidates(h, screen, noise):
    """Indices of grid local maxima within ``screen`` of the best; plateaus count once.

    Neighbours closer than ``noise`` count as ties, so a flat ``h`` (circular
    numerical range) yields a single run instead of hundreds of rounding peaks.
    """
    m = h.size
    best = h.max()
    is_peak = (h >= np.roll(h, 1) - noise) & (h >= np.roll(h, -1) - noise) & (h >= best - screen)
    if is_peak.all():
        return [int(np.argmax(h))]
    out = []
    k = int(np.argmin(is_peak))  # start scanning from a non-peak so runs do not wrap
    run = []
    for step in range(1, m + 1):
        i = (k + step) % m
        if is_peak[i]:
            run.append(i)
        elif run:
            out.append(max(run, key=lambda j: h[j]))
            run = []
    if run:
        out.append(max(run, key=lambda j: h[j]))
    return out


def omega(T, tol=None):
    """Numerical radius with an error bound.

    Grid of 720 angles, then golden-section refinement of every grid peak
    that could still hold the maximum, until ``||T|| * width <= tol``.
    """
    T = as_matrix(T)
    L = op_norm(T)
    if tol is None:
        tol = 1e-8 * max(1.0, L)
    if not tol > 0:
        raise UsageError("tol must be positive")
    if L == 0.0:
        return NumericalRadiusEstimate(0.0, 0.0, GRID_POINTS, 0, 0.0)
    slack = EIG_SLACK * L
    if tol <= 2 * slack:
        raise UsageError(f"tol {tol:g} is below the eigensolver resolution {2 * slack:g}")
    R, J = real_part(T), imag_part(T)
    step = 2 * math.pi / GRID_POINTS
    thetas = step * np.arange(GRID_POINTS)
    h = _kernels.lambda_max_grid(R, J, thetas)
    k0 = int(np.argmax(h))
    best_t, best_h = float(thetas[k0]), float(h[k0])
    width = (tol - slack) / L
    total_iters = 0
    delta = 0.0
    for k in _candidates(h, L * step, slack):
        a = thetas[k] - step
        t, val, final_width, iters = _golden(R, J, a, a + 2 * step, width, MAX_REFINE - total_iters)
        total_iters += iters
        delta = max(delta, final_width)
        if val > best_h:
            best_t, best_h = t, val
    return NumericalRadiusEstimate(
        value=max(best_h, 0.0),
        theta_star=float(best_t % (2 * math.pi)),
        grid_points=GRID_POINTS,
        refine_iters=total_iters,
        error_bound=float(L * delta + slack),
    )


def omega_lower_sample(T, trials=10_000, seed=0):
    """Max of ``|<Tx, x>|`` over seeded random unit vectors (a lower bound for omega)."""
    T = as_matrix(T)
    if trials < 1:
        raise UsageError("trials must be >= 1")
    X = _kernels.random_unit_vectors(np.random.default_rng(seed), trials, T.shape[0])
    return float(np.max(_kernels.abs_quad_forms(T, X)))


# ------------------------------------------------------------------ bounds

def _mean_term(S, T, g):
    # S g^2(|T*|) S*  #  |S*|^2
    X = sym(S @ abs_apply(T, lambda x: g(x) ** 2, adjoint=True) @ S.conj().T)
    return geometric_mean(X, sym(S @ S.conj().T))


def bound_cor10(S, T, f=np.sqrt, g=np.sqrt):
    """``1/2 || S g^2(|T*|) S* # |S*|^2 + f(|T|)|T| ||``, an upper bound for omega(ST)."""
    S = as_matrix(S)
    T = as_matrix(T)
    check_fg(f, g, singular_values(T))
    P = abs_apply(T, lambda x: f(x) * x)
    return 0.5 * op_norm(_mean_term(S, T, g) + P)


def bound_eq12(S, T, t):
    """The power case ``f = x^t``, ``g = x^{1-t}``."""
    if not 0.0 <= t <= 1.0:
        raise UsageError(f"t must lie in [0, 1], got {t}")
    f, g = power_pair(t)
    return bound_cor10(S, T, f, g)


def _kittaneh_terms(S, T, t):
    X = sym(S @ abs_power(T, 2 * (1 - t), adjoint=True) @ S.conj().T)
    P = abs_power(T, 2 * t)
    Q = sym(S @ S.conj().T)
    R2 = sym(T.conj().T @ T)
    return X, P, Q, R2


def bound_kittaneh(S, T, t):
    """The two specializations of the six-operator bound and their average.

    Returns ``(eq24, eq25, eq31)`` where ``eq24 = 1/2 ||S|T*|^{2(1-t)}S* + |T|^{2t}||``,
    ``eq25 = 1/2 || |S*|^2 + |T|^2 ||`` and ``eq31 = (eq24 + eq25) / 2``.
    """
    if not 0.0 <= t <= 1.0:
        raise UsageError(f"t must lie in [0, 1], got {t}")
    S = as_matrix(S)
    T = as_matrix(T)
    X, P, Q, R2 = _kittaneh_terms(S, T, t)
    eq24 = 0.5 * op_norm(X + P)
    eq25 = 0.5 * op_norm(Q + R2)
    return eq24, eq25, (eq24 + eq25) / 2


def check_refinement_chain(S, T, t, tol=None):
    """``omega(ST) <= eq12 <= eq31`` with every intermediate step checked."""
    S = as_matrix(S)
    T = as_matrix(T)
    X, P, Q, R2 = _kittaneh_terms(S, T, t)
    w = omega(S @ T)
    eq12 = bound_eq12(S, T, t)
    step_a = 0.5 * op_norm(geometric_mean(X, Q) + geometric_mean(P, R2))
    step_b = 0.5 * op_norm(geometric_mean(X + P, Q + R2))
    step_c = 0.25 * op_norm(X + P + Q + R2)
    eq24, eq25, eq31 = bound_kittaneh(S, T, t)
    if tol is None:
        tol = widened_tol()
    tol_abs = tol * max(1.0, eq31)
    margins = {
        "omega_le_eq12": eq12 - w.upper,
        "power_identity": -abs(eq12 - step_a),
        "superadditivity": step_b - step_a,
        "amgm": step_c - step_b,
        "triangle": eq31 - step_c,
        "eq12_le_eq31": eq31 - eq12,
    }
    details = {"omega": w.value, "error_bound": w.error_bound, "eq12": eq12,
               "eq24": eq24, "eq25": eq25, "eq31": eq31, "t": t}
    return make_report("refinement_chain", {"S": S, "T": T, "t": t}, margins, tol_abs, details=details)


def eq22_factor(profile):
    return max(math.sqrt(1.0 + 1.0 / profile.beta2), math.sqrt(1.0 + profile.alpha2))


def check_lower_eq22(T, tol=None):
    """``max{sqrt(1 + 1/beta^2), sqrt(1 + alpha^2)} ||T|| / 2 <= omega(T)``."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    factor = eq22_factor(prof)
    w = omega(T)
    lower = factor * 0.5 * op_norm(T)
    if tol is None:
        tol = widened_tol()
    margins = {"bound": w.lower - lower, "factor_ge_1": factor - 1.0}
    details = {"omega": w.value, "error_bound": w.error_bound, "lower": lower, "factor": factor,
               "alpha": prof.alpha, "beta": prof.beta}
    return make_report("lower_eq22", {"T": T}, margins, tol * max(1.0, op_norm(T)), details=details)


def check_hypo_lower(T, tol=None):
    """``||T|| / sqrt(2) <= omega(T)`` for hyponormal ``T``."""
    T = as_matrix(T)
    if not is_hyponormal(T).member:
        raise PreconditionUnmet("hypo_lower needs a hyponormal T")
    w = omega(T)
    lower = op_norm(T) / math.sqrt(2.0)
    if tol is None:
        tol = widened_tol()
    return make_report("hypo_lower", {"T": T}, {"bound": w.lower - lower},
                       tol * max(1.0, op_norm(T)), details={"omega": w.value, "lower": lower})


def check_corrected_remark(T, tol=None):
    """``(1 + alpha^2) ||T||^2 <= (||T + T*||^2 + ||T - T*||^2) / 2``."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    n2 = op_norm(T) ** 2
    left = (1.0 + prof.alpha2) * n2
    right = 0.5 * (op_norm(T + T.conj().T) ** 2 + op_norm(T - T.conj().T) ** 2)
    if tol is None:
        tol = widened_tol()
    return make_report("corrected_remark", {"T": T}, {"bound": right - left}, tol * max(1.0, n2),
                       details={"left": left, "right": right, "alpha": prof.alpha})


def check_sandwich(T, tol=None):
    """``||T|| / 2 <= omega(T) <= ||T||`` up to the certified error."""
    T = as_matrix(T)
    w = omega(T)
    L = op_norm(T)
    if tol is None:
        tol = widened_tol()
    margins = {"lower": w.upper - L / 2, "upper": L - w.lower}
    return make_report("sandwich", {"T": T}, margins, tol * max(1.0, L), details={"omega": w.value})


def wnum_report(T, S=None, t=0.5):
    """Payload of the ``wnum`` command: omega of ``ST`` (``S = I`` by default) and its bounds."""
    T = as_matrix(T)
    S = np.eye(T.shape[0], dtype=np.complex128) if S is None else as_matrix(S)
    A = S @ T
    w = omega(A)
    eq24, eq25, eq31 = bound_kittaneh(S, T, t)
    try:
        eq22 = eq22_factor(alpha_beta_profile(A)) * 0.5 * op_norm(A)
    except NumericalFailure:
        eq22 = None
    return {
        "omega": w.value,
        "theta": w.theta_star,
        "error_bound": w.error_bound,
        "bounds": {"eq12": bound_eq12(S, T, t), "eq24": eq24, "eq25": eq25, "eq31": eq31,
                   "eq22_lower": eq22},
    }
