"""Named inequality checks and the randomized falsification engine.

Every ``check_*`` function returns a :class:`~opineq.report.CheckReport`.
Checks never gate on class membership: the corpus decides whether the
hypotheses hold, so running a check on the wrong corpus shows why the
hypothesis is needed.

``tol`` arguments are relative; the report stores the absolute value
``tol * scale`` that was actually used.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .blocks import BlockForm, assemble, check_fg, fg_pair, lemma16_block, lemma6_block, schur_test, swapped
from .classes import CORPUS_ALIASES, CORPUS_KINDS, alpha_beta_profile, gen_matrix
from .errors import NumericalFailure, PreconditionUnmet, UnknownCheckError, UsageError
from .linalg import (
    abs_adj,
    abs_apply,
    abs_hermitian,
    abs_op,
    abs_power,
    as_matrix,
    default_tol,
    direct_sum,
    imag_part,
    lambda_min,
    op_norm,
    psd_check,
    real_part,
    singular_values,
    sym,
    widened_tol,
)
from .means import MeanSpec, geometric_mean, mean_apply, weighted_geometric_mean
from .report import make_report
from . import numrange

SQRT2 = math.sqrt(2.0)


def _tol(tol, widened=False):
    if tol is None:
        return widened_tol() if widened else default_tol()
    if not tol >= 0:
        raise UsageError("tol must be non-negative")
    return float(tol)


def _scale(*mats):
    return max([1.0] + [op_norm(M) for M in mats])


def _pm_margins(bound, H, prefix=""):
    """Margins of ``+H <= bound`` and ``-H <= bound``."""
    return {prefix + "upper": lambda_min(bound - H), prefix + "lower": lambda_min(bound + H)}


def _resolve_fg(f, g, fg):
    if fg is not None:
        f, g = fg_pair(fg)
        return f, g, fg
    if f is None and g is None:
        return np.sqrt, np.sqrt, "sqrt"
    if f is None or g is None:
        raise UsageError("pass both f and g, or neither")
    name = "sqrt" if (f is np.sqrt and g is np.sqrt) else None
    return f, g, name


def _sv_slack(lhs, rhs):
    n = lhs.size
    return rhs[:n] - lhs


def _block_min(bf):
    return lambda_min(assemble(bf))


# ---------------------------------------------------------------- one operator

def check_thm3(T, tol=None):
    """``+-Re T <= |T|``; true for semi-hyponormal ``T``."""
    T = as_matrix(T)
    R = real_part(T)
    margins = _pm_margins(abs_op(T), R)
    return make_report("thm3", {"T": T}, margins, _tol(tol) * _scale(T))


def check_abs_re_amgm(T, tol=None):
    """``2|Re T| <= |T| + |T*|``, which fails in general (3x3 shift)."""
    T = as_matrix(T)
    M = abs_op(T) + abs_adj(T) - 2 * abs_hermitian(real_part(T))
    return make_report("abs_re_amgm", {"T": T}, {"amgm": lambda_min(M)}, _tol(tol, True) * _scale(T))


def check_prop03(T, tol=None):
    """``[[|T|, T*], [T, |T|]] >= O``, its swap, and ``[[|T|, Re T], [Re T, |T|]] >= O``."""
    T = as_matrix(T)
    A = abs_op(T)
    eq7 = BlockForm(A, A, T)
    eq30 = BlockForm(A, A, real_part(T))
    margins = {"eq7": _block_min(eq7), "eq7_swap": _block_min(swapped(eq7)), "eq30": _block_min(eq30)}
    return make_report("prop03", {"T": T}, margins, _tol(tol) * _scale(T))


def check_sv_semihypo(T, tol=None):
    """``s_j(T) <= s_j(|T| (+) |T|)`` and ``s_j(Re T) <= s_j(|T| (+) |T|)``."""
    T = as_matrix(T)
    A = abs_op(T)
    rhs = singular_values(direct_sum(A, A))
    s1 = _sv_slack(singular_values(T), rhs)
    s2 = _sv_slack(singular_values(real_part(T)), rhs)
    margins = {"sv_T": s1.min(), "sv_ReT": s2.min()}
    return make_report("sv_semihypo", {"T": T}, margins, _tol(tol) * _scale(T),
                       details={"slack_T": s1, "slack_ReT": s2})


SVAMGM_T = np.array([[1j, 1j], [0, 0]])


def check_counterexample_svamgm(tol=None):
    """The fixed ``T = [[i, i], [0, 0]]`` where ``s_2(Re T) = 1/2`` beats ``(sqrt2 - 1)/2``.

    The right side is computed under two readings.  With the sum
    ``|T| + |T*|`` the value is ``(sqrt2 - 1)/2``; with the direct sum
    ``|T| (+) |T*|`` it is ``sqrt2/2``, which ``1/2`` does not exceed.  The
    sum reading is the one checked; the other is reported as a discrepancy.
    """
    T = SVAMGM_T
    s2_re = singular_values(real_part(T))[1]
    A, Aa = abs_op(T), abs_adj(T)
    sum_reading = 0.5 * singular_values(A + Aa)[1]
    dsum_reading = 0.5 * singular_values(direct_sum(A, Aa))[1]
    expected = (SQRT2 - 1) / 2
    tol = 1e-10 if tol is None else _tol(tol)
    margins = {
        "s2_re_value": -abs(s2_re - 0.5),
        "sum_reading_value": -abs(sum_reading - expected),
        "counterexample_gap": s2_re - sum_reading,
    }
    details = {
        "s2_re": s2_re,
        "sum_reading": sum_reading,
        "direct_sum_reading": dsum_reading,
        "discrepancy": {
            "flag": True,
            "note": "direct-sum reading gives sqrt(2)/2, which 1/2 does not exceed; "
                    "the sum reading |T|+|T*| gives (sqrt(2)-1)/2 and is the one used",
        },
    }
    return make_report("counterexample_svamgm", {"T": T}, margins, tol, details=details)


# ------------------------------------------------------------- (alpha, beta)

def ab_blocks(T, alpha, beta):
    """The two equivalence blocks for given constants.

    ``[[|T*|^2/alpha^2, |T|^2], [|T|^2, |T*|^2/alpha^2]]`` and
    ``[[beta^2 |T|^2, |T*|^2], [|T*|^2, beta^2 |T|^2]]``.
    """
    P = sym(T.conj().T @ T)
    Q = sym(T @ T.conj().T)
    a = BlockForm(Q / alpha**2, Q / alpha**2, P)
    b = BlockForm(beta**2 * P, beta**2 * P, Q)
    return a, b


def check_ab_equiv(T, tol=None):
    """Both equivalence blocks at the tightest profile, cross-checked through Schur complements."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    a, b = ab_blocks(T, prof.alpha, prof.beta)
    P = sym(T.conj().T @ T)
    Q = sym(T @ T.conj().T)
    scale = max(a.scale(), b.scale())
    rel = _tol(tol, True)
    margins = {
        "alpha_block": _block_min(a),
        "beta_block": _block_min(b),
        "alpha_schur": schur_test(a, rel * scale).min_eig,
        "beta_schur": schur_test(b, rel * scale).min_eig,
        "alpha_ineq": lambda_min(Q - prof.alpha2 * P),
        "beta_ineq": lambda_min(prof.beta2 * P - Q),
    }
    return make_report("ab_equiv", {"T": T}, margins, rel * scale,
                       details={"alpha": prof.alpha, "beta": prof.beta})


def ab_tightness(T, rel_change=0.01, tol=1e-12):
    """Perturb the tightest constants (shrink beta, grow alpha) and evaluate the blocks.

    Returns margins of the perturbed blocks and whether each one fails,
    i.e. has a smallest eigenvalue below ``-tol * scale``.
    """
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    a, b = ab_blocks(T, prof.alpha * (1 + rel_change), prof.beta * (1 - rel_change))
    scale = max(a.scale(), b.scale())
    ma, mb = _block_min(a), _block_min(b)
    P = sym(T.conj().T @ T)
    Q = sym(T @ T.conj().T)
    ia = lambda_min(Q - (prof.alpha * (1 + rel_change)) ** 2 * P)
    ib = lambda_min((prof.beta * (1 - rel_change)) ** 2 * P - Q)
    cut = -tol * scale
    return {
        "alpha_block_margin": ma,
        "beta_block_margin": mb,
        "alpha_ineq_margin": ia,
        "beta_ineq_margin": ib,
        "alpha_block_fails": bool(ma < cut),
        "beta_block_fails": bool(mb < cut),
        "alpha_ineq_fails": bool(ia < -tol * max(1.0, op_norm(Q))),
        "beta_ineq_fails": bool(ib < -tol * max(1.0, op_norm(Q))),
    }


def check_thm28(T, tol=None):
    """``+-Re T <= (beta/alpha)^{1/4} |T| # |T*|`` and the blocks behind it."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    A, Aa = abs_op(T), abs_adj(T)
    k = (prof.beta / prof.alpha) ** 0.25
    G = geometric_mean(A, Aa)
    eq17a = BlockForm(Aa / math.sqrt(prof.alpha), Aa / math.sqrt(prof.alpha), T)
    eq17b = BlockForm(math.sqrt(prof.beta) * A, math.sqrt(prof.beta) * A, T)
    eq27 = lemma16_block(eq17a, eq17b)
    margins = _pm_margins(k * G, real_part(T))
    margins.update({"eq17_alpha": _block_min(eq17a), "eq17_beta": _block_min(eq17b),
                    "eq27": _block_min(eq27)})
    scale = max(eq17a.scale(), eq17b.scale(), eq27.scale())
    return make_report("thm28", {"T": T}, margins, _tol(tol, True) * scale,
                       details={"alpha": prof.alpha, "beta": prof.beta, "factor": k})


def check_mean_sigma(T, spec=None, tol=None):
    """``+-Re T <= (sqrt(beta)|T|) sigma (|T*|/sqrt(alpha))`` for an operator mean ``sigma``.

    For ``#_t`` the bound is written as ``alpha^{-t/2} beta^{(1-t)/2} (|T| #_t |T*|)``.
    The two endpoint bounds ``sqrt(beta)|T|`` and ``|T*|/sqrt(alpha)`` are
    checked as well.
    """
    T = as_matrix(T)
    spec = MeanSpec.weighted(0.5) if spec is None else spec
    prof = alpha_beta_profile(T)
    A, Aa = abs_op(T), abs_adj(T)
    R = real_part(T)
    left = math.sqrt(prof.beta) * A
    right = Aa / math.sqrt(prof.alpha)
    if spec.kind == "weighted-geometric":
        t = spec.t
        k = prof.alpha ** (-t / 2) * prof.beta ** ((1 - t) / 2)
        bound = k * weighted_geometric_mean(A, Aa, t)
    else:
        bound = mean_apply(spec, left, right)
    margins = _pm_margins(bound, R)
    margins.update(_pm_margins(left, R, "beta_side_"))
    margins.update(_pm_margins(right, R, "alpha_side_"))
    scale = _scale(left, right, bound)
    return make_report("mean_sigma", {"T": T, "mean": spec.to_json()}, margins,
                       _tol(tol, True) * scale, details={"alpha": prof.alpha, "beta": prof.beta})


def thm15_bounds(T, prof=None):
    """``(sqrt((1+alpha^2)/(2 alpha^2)) |T*|, sqrt((1+beta^2)/2) |T|)``."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T) if prof is None else prof
    first = math.sqrt((1 + prof.alpha2) / (2 * prof.alpha2)) * abs_adj(T)
    second = math.sqrt((1 + prof.beta2) / 2) * abs_op(T)
    return first, second


def check_thm15(T, tol=None):
    """``|Re T|`` below both scaled absolute values."""
    T = as_matrix(T)
    prof = alpha_beta_profile(T)
    first, second = thm15_bounds(T, prof)
    absR = abs_hermitian(real_part(T))
    margins = {"adjoint_bound": lambda_min(first - absR), "abs_bound": lambda_min(second - absR)}
    return make_report("thm15", {"T": T}, margins, _tol(tol, True) * _scale(first, second),
                       details={"adjoint_bound_matrix": first, "abs_bound_matrix": second, "abs_re": absR})


# ---------------------------------------------------------------- two operators

def thm23_bound(S, T, f, g):
    """``(S g^2(|T*|) S* # |S*|^2 + f(|T|)|T|) / 2``."""
    X = sym(S @ abs_apply(T, lambda x: g(x) ** 2, adjoint=True) @ S.conj().T)
    return 0.5 * (geometric_mean(X, sym(S @ S.conj().T)) + abs_apply(T, lambda x: f(x) * x))


def eq9_block(S, T):
    """``[[|S*|^2, ST], [T*S*, |T|^2]]``: with ``ST`` top right, the BlockForm's ``C`` is ``(ST)*``."""
    S = as_matrix(S)
    T = as_matrix(T)
    return BlockForm(sym(S @ S.conj().T), sym(T.conj().T @ T), (S @ T).conj().T)


def eq8_block(S, T, f, g):
    """``[[S g^2(|T*|) S*, ST], [T*S*, f^2(|T|)]]``, the swap of the mixed block."""
    return swapped(lemma6_block(S, T, f, g))


def eq13_block(S, T, f, g):
    return lemma16_block(eq8_block(S, T, f, g), eq9_block(S, T))


def check_eq9_block(S, T, tol=None):
    """Cauchy-Schwarz block, PSD for every ``S``, ``T``."""
    S = as_matrix(S)
    T = as_matrix(T)
    bf = eq9_block(S, T)
    return make_report("eq9_block", {"S": S, "T": T}, {"eq9": _block_min(bf)},
                       _tol(tol) * bf.scale())


def check_thm23(S, T, f=None, g=None, tol=None, fg=None):
    """``+-Re(ST) <= (S g^2(|T*|) S* # |S*|^2 + f(|T|)|T|) / 2`` and its three blocks."""
    S = as_matrix(S)
    T = as_matrix(T)
    f, g, name = _resolve_fg(f, g, fg)
    b9 = eq9_block(S, T)
    b8 = eq8_block(S, T, f, g)
    b13 = lemma16_block(b8, b9)
    bound = thm23_bound(S, T, f, g)
    margins = _pm_margins(bound, real_part(S @ T))
    margins.update({"eq9": _block_min(b9), "eq8": _block_min(b8), "eq13": _block_min(b13)})
    scale = max(b9.scale(), b8.scale(), b13.scale())
    return make_report("thm23", {"S": S, "T": T, "fg": name}, margins, _tol(tol, True) * scale)


def check_remark18(S, T, f=None, g=None, tol=None, fg=None):
    """Imaginary-part companion of the product bound and the corollaries drawn from it.

    * ``+-Im(T*S) <= (S* g^2(|T*|) S # |S|^2 + f(|T|)|T|) / 2`` (substitute ``S -> iS*``),
    * ``S = I``: ``+-Re T <= (g(|T*|) + f(|T|)|T|) / 2``,
    * ``+-(Re(ST*) + Im(TS*)) <= S g^2(|T|) S* # |S*|^2 + f(|T*|)|T*|``,
    * ``+-(Re T + Im T) <= g(|T|) + f(|T*|)|T*|``.

    The one-operator form with ``g^2(|T*|)`` in place of ``g(|T*|)`` is false
    in general; its margin is reported under ``details`` only.
    """
    S = as_matrix(S)
    T = as_matrix(T)
    f, g, name = _resolve_fg(f, g, fg)
    check_fg(f, g, singular_values(T))
    Sa = S.conj().T
    fT = abs_apply(T, lambda x: f(x) * x)
    g2_adj = abs_apply(T, lambda x: g(x) ** 2, adjoint=True)

    # imaginary-part form, written out directly
    X = sym(Sa @ g2_adj @ S)
    im_bound = 0.5 * (geometric_mean(X, sym(Sa @ S)) + fT)
    im_lhs = imag_part(T.conj().T @ S)
    margins = _pm_margins(im_bound, im_lhs, "im_")
    # the substitution S -> iS* in the real-part bound gives the same operator
    margins["substitution"] = -op_norm(real_part(1j * Sa @ T) - im_lhs)

    # S = I
    re_bound = 0.5 * (abs_apply(T, g, adjoint=True) + fT)
    margins.update(_pm_margins(re_bound, real_part(T), "re_"))

    # two-operator form
    g2 = abs_apply(T, lambda x: g(x) ** 2)
    Y = sym(S @ g2 @ Sa)
    two_bound = geometric_mean(Y, sym(S @ Sa)) + abs_apply(T, lambda x: f(x) * x, adjoint=True)
    two_lhs = real_part(S @ T.conj().T) + imag_part(T @ Sa)
    margins.update(_pm_margins(two_bound, two_lhs, "two_"))

    # one-operator form
    one_bound = abs_apply(T, g) + abs_apply(T, lambda x: f(x) * x, adjoint=True)
    margins.update(_pm_margins(one_bound, real_part(T) + imag_part(T), "one_"))

    sq_form = 0.5 * (g2_adj + fT)
    sq_margin = min(_pm_margins(sq_form, real_part(T)).values())
    scale = _scale(S, T) ** 2 + _scale(im_bound, two_bound, one_bound)
    return make_report("remark18", {"S": S, "T": T, "fg": name}, margins, _tol(tol, True) * scale,
                       details={"squared_g_form_margin": sq_margin})


def check_cor_sum(T1, T2, T3, T4, f=None, g=None, sign=1, tol=None, fg=None):
    """``+-Re(T1 T2 +- T3 T4)`` below the sum of the two product bounds."""
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    T1, T2, T3, T4 = (as_matrix(M) for M in (T1, T2, T3, T4))
    f, g, name = _resolve_fg(f, g, fg)
    check_fg(f, g, singular_values(T2))
    check_fg(f, g, singular_values(T4))
    bound = thm23_bound(T1, T2, f, g) + thm23_bound(T3, T4, f, g)
    lhs = real_part(T1 @ T2 + sign * (T3 @ T4))
    margins = _pm_margins(bound, lhs)
    if name == "sqrt":
        def term(A, B):
            X = sym(A @ abs_adj(B) @ A.conj().T)
            return geometric_mean(X, sym(A @ A.conj().T))
        eq5 = 0.5 * (term(T1, T2) + term(T3, T4) + abs_power(T2, 1.5) + abs_power(T4, 1.5))
        margins.update(_pm_margins(eq5, lhs, "eq5_"))
    scale = _scale(T1, T2, T3, T4) ** 2 + _scale(bound)
    inputs = {"T1": T1, "T2": T2, "T3": T3, "T4": T4, "fg": name, "sign": sign}
    return make_report("cor_sum", inputs, margins, _tol(tol, True) * scale)


COR19_MAX = 1.5


def cor19_bound(S, T, tp, vp):
    """``(|S|^t' + |S*|^{2-t'} + |T|^v' + |T*|^{2-v'}) / 2`` with ``|X|^0 = I``."""
    return 0.5 * (abs_power(S, tp) + abs_power(S, 2 - tp, adjoint=True)
                  + abs_power(T, vp) + abs_power(T, 2 - vp, adjoint=True))


def check_cor19(S, T, t_prime=1.0, v_prime=1.0, sign=1, tol=None, cartesian=True):
    """``+-Re(S +- T)`` and ``+-Re(S +- iT)`` below the four-power bound.

    With ``cartesian=True`` the form with ``S -> Re S``, ``T -> Im S`` is
    checked too: ``+-Re S <= (|Re S|^t' + |Re S|^{2-t'} + |Im S|^v' + |Im S|^{2-v'}) / 2``.
    """
    for label, p in (("t_prime", t_prime), ("v_prime", v_prime)):
        if not 0.0 <= p <= COR19_MAX:
            raise UsageError(f"{label} must lie in [0, 3/2], got {p}")
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    S = as_matrix(S)
    T = as_matrix(T)
    bound = cor19_bound(S, T, t_prime, v_prime)
    margins = _pm_margins(bound, real_part(S + sign * T))
    margins.update(_pm_margins(bound, real_part(S + sign * 1j * T), "i_"))
    scales = [bound]
    if cartesian:
        R, J = real_part(S), imag_part(S)
        cb = cor19_bound(R, J, t_prime, v_prime)
        margins.update(_pm_margins(cb, R, "cartesian_"))
        scales.append(cb)
    scale = _scale(S, T) + _scale(*scales)
    inputs = {"S": S, "T": T, "t_prime": t_prime, "v_prime": v_prime, "sign": sign}
    return make_report("cor19", inputs, margins, _tol(tol, True) * scale)


def _kyfan(s, k):
    return float(np.sum(s[:k]))


def check_sing_remarks(S, T, f=None, g=None, tol=None, fg=None):
    """Singular-value consequences of the block bounds.

    * ``s_j(Re S) <= s_j((|S| + |S*|) (+) (|S| + |S*|)) / 2``,
    * ``s_j(Re(S +- T)) <= s_j(X (+) X) / 2`` with ``X`` the four-term bound at ``t' = v' = 1``,
    * ``2 s_j(ST) <= s_j(M)`` for the mean block ``M``, and the norm form
      ``||ST||_u <= ||M||_u / 2`` for Ky Fan k-norms and Schatten 1, 2 norms.
    """
    S = as_matrix(S)
    T = as_matrix(T)
    f, g, name = _resolve_fg(f, g, fg)
    n = S.shape[0]
    X1 = abs_op(S) + abs_adj(S)
    slack_re = _sv_slack(singular_values(real_part(S)), 0.5 * singular_values(direct_sum(X1, X1)))
    X4 = 2 * cor19_bound(S, T, 1.0, 1.0)
    slack_sum = np.minimum(
        _sv_slack(singular_values(real_part(S + T)), 0.5 * singular_values(direct_sum(X4, X4))),
        _sv_slack(singular_values(real_part(S - T)), 0.5 * singular_values(direct_sum(X4, X4))),
    )
    b13 = eq13_block(S, T, f, g)
    M = assemble(b13)
    sM = singular_values(M)
    sST = singular_values(S @ T)
    slack_tao = sM[:n] - 2 * sST
    norm_slack = [0.5 * _kyfan(sM, k) - _kyfan(sST, k) for k in range(1, n + 1)]
    for p in (1, 2):
        norm_slack.append(0.5 * np.sum(sM**p) ** (1 / p) - np.sum(sST**p) ** (1 / p))
    margins = {"re_S": slack_re.min(), "re_sum": slack_sum.min(), "tao": slack_tao.min(),
               "norms": min(norm_slack)}
    scale = max(_scale(S, T) ** 2, sM[0], 1.0) + _scale(X4)
    return make_report("sing_remarks", {"S": S, "T": T, "fg": name}, margins, _tol(tol, True) * scale,
                       details={"slack_re_S": slack_re, "slack_tao": slack_tao})


def check_cor_sing_ST(S, T, f=None, g=None, sign=1, tol=None, fg=None):
    """``s_j(S +- iT) <= s_j((g(|S*|) + g(|T*|)) (+) (f(|S|)|S| + f(|T|)|T|))``.

    The particular case ``s_j(S +- iT) <= s_j((|S*| + |T*|) (+) (|S| + |T|))``
    is always checked.  For PSD ``S``, ``T`` the margin of
    ``s_j(S + iT) <= sqrt(2) s_j(S + T)`` is added; the unscaled form fails
    pointwise (``S = diag(1, 0)``, ``T = [[1, 1], [1, 1]] / 2``) and is only
    reported in ``details``.
    """
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    S = as_matrix(S)
    T = as_matrix(T)
    f, g, name = _resolve_fg(f, g, fg)
    check_fg(f, g, singular_values(S))
    check_fg(f, g, singular_values(T))
    lhs = singular_values(S + sign * 1j * T)
    top = abs_apply(S, g, adjoint=True) + abs_apply(T, g, adjoint=True)
    bottom = abs_apply(S, lambda x: f(x) * x) + abs_apply(T, lambda x: f(x) * x)
    slack = _sv_slack(lhs, singular_values(direct_sum(top, bottom)))
    part = _sv_slack(lhs, singular_values(direct_sum(abs_adj(S) + abs_adj(T), abs_op(S) + abs_op(T))))
    margins = {"general": slack.min(), "particular": part.min()}
    details = {"slack": slack}
    both_psd = all(
        op_norm(M - M.conj().T) <= 1e-12 * max(1.0, op_norm(M)) and psd_check(sym(M)).is_psd
        for M in (S, T)
    )
    if both_psd:
        lhs_psd = singular_values(S + 1j * T)
        rhs_psd = singular_values(S + T)
        margins["psd_remark_sqrt2"] = _sv_slack(lhs_psd, np.sqrt(2.0) * rhs_psd).min()
        details["psd_remark_unscaled_margin"] = float(_sv_slack(lhs_psd, rhs_psd).min())
    details["psd_remark_checked"] = both_psd
    scale = _scale(S, T, top, bottom)
    return make_report("cor_sing_ST", {"S": S, "T": T, "fg": name, "sign": sign}, margins,
                       _tol(tol, True) * scale, details=details)


# ------------------------------------------------------------------ registry

FG_CHOICES = ("sqrt", "power:0.25", "power:0.4", "power:0.75", "one-id", "id-one")
T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
COR19_GRID = (0.0, 0.5, 1.0, 1.5)


def _m(rng, n, corpus):
    return gen_matrix(corpus, n, rng)


def _pick(rng, options):
    return options[int(rng.integers(len(options)))]


def _sign(rng):
    return 1 if rng.integers(2) == 0 else -1


def _s_one(rng, n, corpus):
    return {"T": _m(rng, n, corpus)}


def _s_two(rng, n, corpus):
    return {"S": _m(rng, n, corpus), "T": _m(rng, n, corpus)}


def _s_two_fg(rng, n, corpus):
    return {"S": _m(rng, n, corpus), "T": _m(rng, n, corpus), "fg": _pick(rng, FG_CHOICES)}


def _s_mean(rng, n, corpus):
    return {"T": _m(rng, n, corpus), "spec": MeanSpec.weighted(_pick(rng, T_GRID))}


def _s_cor_sum(rng, n, corpus):
    mats = {f"T{i}": _m(rng, n, corpus) for i in range(1, 5)}
    mats.update(fg=_pick(rng, FG_CHOICES), sign=_sign(rng))
    return mats


def _s_cor19(rng, n, corpus):
    return {"S": _m(rng, n, corpus), "T": _m(rng, n, corpus), "t_prime": _pick(rng, COR19_GRID),
            "v_prime": _pick(rng, COR19_GRID), "sign": _sign(rng)}


def _s_sing_st(rng, n, corpus):
    out = _s_two_fg(rng, n, corpus)
    out["sign"] = _sign(rng)
    return out


def _s_chain(rng, n, corpus):
    return {"S": _m(rng, n, corpus), "T": _m(rng, n, corpus), "t": _pick(rng, T_GRID)}


def _s_none(rng, n, corpus):
    return {}


@dataclass(frozen=True)
class CheckEntry:
    check_id: str
    func: Callable
    sampler: Callable
    corpus: str
    summary: str
    inputs: tuple = field(default=("T",))


REGISTRY = {
    e.check_id: e
    for e in (
        CheckEntry("thm3", check_thm3, _s_one, "normal", "+-Re T <= |T|"),
        CheckEntry("prop03", check_prop03, _s_one, "normal", "[[|T|, T*], [T, |T|]] >= O"),
        CheckEntry("sv_semihypo", check_sv_semihypo, _s_one, "normal", "s_j(T), s_j(Re T) <= s_j(|T| (+) |T|)"),
        CheckEntry("counterexample_svamgm", check_counterexample_svamgm, _s_none, "ginibre",
                   "s_2(Re T) = 1/2 beats (sqrt2-1)/2 at T=[[i,i],[0,0]]", ()),
        CheckEntry("abs_re_amgm", check_abs_re_amgm, _s_one, "ginibre", "2|Re T| <= |T| + |T*| (false in general)"),
        CheckEntry("ab_equiv", check_ab_equiv, _s_one, "invertible", "(alpha, beta) block equivalence"),
        CheckEntry("thm28", check_thm28, _s_one, "invertible", "+-Re T <= (beta/alpha)^{1/4} |T| # |T*|"),
        CheckEntry("mean_sigma", check_mean_sigma, _s_mean, "invertible", "+-Re T <= (sqrt(b)|T|) sigma (|T*|/sqrt(a))",
                   ("T", "spec")),
        CheckEntry("thm15", check_thm15, _s_one, "invertible", "|Re T| below scaled |T| and |T*|"),
        CheckEntry("eq9_block", check_eq9_block, _s_two, "ginibre", "[[|S*|^2, ST], [T*S*, |T|^2]] >= O", ("S", "T")),
        CheckEntry("thm23", check_thm23, _s_two_fg, "ginibre", "+-Re(ST) <= product mean bound", ("S", "T")),
        CheckEntry("remark18", check_remark18, _s_two_fg, "ginibre", "imaginary-part and one-operator forms", ("S", "T")),
        CheckEntry("cor_sum", check_cor_sum, _s_cor_sum, "ginibre", "+-Re(T1T2 +- T3T4) bound",
                   ("T1", "T2", "T3", "T4")),
        CheckEntry("cor19", check_cor19, _s_cor19, "ginibre", "+-Re(S +- T) four-power bound", ("S", "T")),
        CheckEntry("sing_remarks", check_sing_remarks, _s_two_fg, "ginibre", "singular-value consequences", ("S", "T")),
        CheckEntry("cor_sing_ST", check_cor_sing_ST, _s_sing_st, "ginibre", "s_j(S +- iT) direct-sum bound", ("S", "T")),
        CheckEntry("refinement_chain", numrange.check_refinement_chain, _s_chain, "ginibre",
                   "omega(ST) <= eq12 <= eq31", ("S", "T")),
        CheckEntry("lower_eq22", numrange.check_lower_eq22, _s_one, "invertible", "profile lower bound on omega"),
        CheckEntry("hypo_lower", numrange.check_hypo_lower, _s_one, "hyponormal", "omega >= ||T|| / sqrt2"),
        CheckEntry("corrected_remark", numrange.check_corrected_remark, _s_one, "invertible",
                   "(1+alpha^2)||T||^2 <= (||T+T*||^2 + ||T-T*||^2)/2"),
        CheckEntry("sandwich", numrange.check_sandwich, _s_one, "ginibre", "||T||/2 <= omega <= ||T||"),
    )
}

ALIASES = {
    "theorem3": "thm3",
    "prop3": "prop03",
    "theorem15": "thm15",
    "theorem23": "thm23",
    "theorem28": "thm28",
    "svamgm": "counterexample_svamgm",
    "eq9": "eq9_block",
    "eq14": "thm23",
    "eq2": "cor_sum",
    "o1": "cor_sing_ST",
    "eq12_chain": "refinement_chain",
    "eq22": "lower_eq22",
}


def resolve(check_id):
    cid = ALIASES.get(check_id, check_id)
    if cid not in REGISTRY:
        raise UnknownCheckError(f"unknown check {check_id!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[cid]


def run_check(check_id, tol=None, **kwargs):
    entry = resolve(check_id)
    return entry.func(tol=tol, **kwargs)


# --------------------------------------------------------------- falsify

MAX_KEPT = 20


@dataclass
class FalsificationResult:
    """Violations sorted by ``(margin, trial)``; only the worst ``MAX_KEPT`` keep witnesses."""

    check_id: str
    corpus: str
    dims: list
    seed: int
    trials: int
    violations: list
    n_violations: int
    skipped: int
    best_margin: float

    @property
    def found(self):
        return self.n_violations > 0

    def to_json(self):
        return {
            "check_id": self.check_id,
            "corpus": self.corpus,
            "dims": list(self.dims),
            "seed": self.seed,
            "trials": self.trials,
            "n_violations": self.n_violations,
            "skipped": self.skipped,
            "best_margin": self.best_margin,
            "violations": self.violations,
        }


def trial_rng(seed, trial):
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def trial_inputs(check_id, corpus, dims, seed, trial):
    """Inputs of one falsification trial (a pure function of its arguments)."""
    entry = resolve(check_id)
    rng = trial_rng(seed, trial)
    n = dims[trial % len(dims)]
    return n, entry.sampler(rng, n, corpus)


def _run_range(check_id, corpus, dims, seed, tol, start, stop):
    entry = resolve(check_id)
    rows = []
    for trial in range(start, stop):
        n, kwargs = trial_inputs(check_id, corpus, dims, seed, trial)
        try:
            rep = entry.func(tol=tol, **kwargs)
        except (PreconditionUnmet, NumericalFailure):
            rows.append((trial, n, None, True, None))
            continue
        rows.append((trial, n, rep.margin, rep.passed, None if rep.passed else rep.witness))
    return rows


def _normalize_corpus(corpus, entry):
    corpus = entry.corpus if corpus is None else corpus
    kind = CORPUS_ALIASES.get(corpus, corpus)
    if kind not in CORPUS_KINDS:
        raise UsageError(f"unknown corpus {corpus!r}; known: {', '.join(CORPUS_KINDS + tuple(CORPUS_ALIASES))}")
    return corpus


def scan(check_id, dims, trials, seed, corpus=None, tol=None, workers=1):
    """Per-trial rows ``(trial, dim, margin, passed, witness)`` in trial order."""
    entry = resolve(check_id)
    corpus = _normalize_corpus(corpus, entry)
    dims = [int(d) for d in dims]
    if trials < 1:
        raise UsageError("trials must be >= 1")
    if not dims or min(dims) < 1:
        raise UsageError("dims must be a non-empty list of positive integers")
    if seed is None or seed < 0:
        raise UsageError("an explicit non-negative seed is required")
    workers = max(1, int(workers))
    cid = entry.check_id
    if workers == 1 or trials < 2 * workers:
        rows = _run_range(cid, corpus, dims, seed, tol, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_run_range, cid, corpus, dims, seed, tol, int(a), int(b))
                    for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
            rows = [r for fut in futs for r in fut.result()]
    rows.sort(key=lambda r: r[0])
    return cid, corpus, dims, rows


def falsify(check_id, dims, trials, seed, corpus=None, tol=None, workers=1):
    """Search a seeded corpus for violations of a registered check.

    Trial ``k`` draws its inputs from ``SeedSequence([seed, k])`` with
    dimension ``dims[k % len(dims)]``, so the result does not depend on
    ``workers``.  Trials whose preconditions fail (for instance a singular
    draw for a profile-based check) are counted as skipped.
    """
    cid, corpus, dims, rows = scan(check_id, dims, trials, seed, corpus, tol, workers)
    bad = sorted(((r[2], r[0], r[1], r[4]) for r in rows if r[2] is not None and not r[3]),
                 key=lambda v: (v[0], v[1]))
    margins = [r[2] for r in rows if r[2] is not None]
    violations = [{"margin": m, "trial": t, "dim": n, "witness": w} for m, t, n, w in bad[:MAX_KEPT]]
    return FalsificationResult(
        check_id=cid,
        corpus=corpus,
        dims=dims,
        seed=int(seed),
        trials=int(trials),
        violations=violations,
        n_violations=len(bad),
        skipped=sum(1 for r in rows if r[2] is None),
        best_margin=min(margins) if margins else None,
    )

