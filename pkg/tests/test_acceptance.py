"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
under output capture.
"""

import itertools
import math

import numpy as np
import pytest

from opineq import blocks as bk
from opineq import theorems as th
from opineq.classes import alpha_beta_profile, gen_matrix
from opineq.io import dumps
from opineq.linalg import abs_adj, abs_hermitian, abs_op, lambda_min
from opineq.means import MeanSpec
from opineq.numrange import (
    check_corrected_remark,
    check_hypo_lower,
    check_lower_eq22,
    check_refinement_chain,
    check_sandwich,
    omega,
)

TRIALS = 500
DIMS = list(range(2, 9))
SQ2 = math.sqrt(2.0)
SQ5 = math.sqrt(5.0)


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def _trial_mats(kind, seed, count=1):
    """Yield ``(dim, [matrices])`` for TRIALS seeded trials cycling through DIMS."""
    for i in range(TRIALS):
        rng = np.random.default_rng([seed, i])
        n = DIMS[i % len(DIMS)]
        yield n, [gen_matrix(kind, n, rng) for _ in range(count)]


def _sweep(check_id, corpus, seed, tol=None):
    res = th.falsify(check_id, DIMS, TRIALS, seed, corpus, tol)
    return res.n_violations, res.skipped, res.best_margin


def test_criterion_01_nilpotent_eigenvalues(report):
    T = np.array([[0, 1], [0, 0]], dtype=complex)
    # |T| = diag(0, 1) and Re T = [[0, 1/2], [1/2, 0]] by hand
    w = np.linalg.eigvalsh(abs_op(T) - (T + T.conj().T) / 2)
    err = max(abs(w[0] - (1 - SQ2) / 2), abs(w[1] - (1 + SQ2) / 2))
    report(1, err <= 1e-12, f"eigs {w[0]:.15f} {w[1]:.15f}  max err {err:.1e}")


def test_criterion_02_svamgm_counterexample(report):
    d = th.check_counterexample_svamgm().details
    e1 = abs(d["s2_re"] - 0.5)
    e2 = abs(d["sum_reading"] - (SQ2 - 1) / 2)
    e3 = abs(d["direct_sum_reading"] - SQ2 / 2)
    ok = e1 <= 1e-12 and e2 <= 1e-10 and e3 <= 1e-10 and d["discrepancy"]["flag"] is True
    report(2, ok, f"s2(ReT) err {e1:.1e}, sum reading err {e2:.1e}, direct-sum reading {d['direct_sum_reading']:.12f}"
                  f" flagged={d['discrepancy']['flag']}")


def test_criterion_03_alpha_beta_example(report):
    T = np.array([[1, 0], [1, 1]], dtype=complex)
    p = alpha_beta_profile(T)
    ea = abs(p.alpha2 - (3 - SQ5) / 2)
    eb = abs(p.beta2 - (3 + SQ5) / 2)
    first, second = th.thm15_bounds(T, p)
    e_abs = np.max(np.abs(second - np.array([[1.8043, 0.6014], [0.6014, 1.2028]])))
    e_adj = np.max(np.abs(first - np.array([[1.2028, 0.6014], [0.6014, 1.8043]])))
    ok = ea <= 1e-10 and eb <= 1e-10 and e_abs <= 5e-4 and e_adj <= 5e-4
    report(3, ok, f"alpha^2 err {ea:.1e}, beta^2 err {eb:.1e}, bound matrices err {e_abs:.1e} / {e_adj:.1e}")


def test_criterion_04_shift_counterexample(report):
    T = np.diag([1.0, 1.0], 1).astype(complex)
    M = abs_op(T) + abs_adj(T) - 2 * abs_hermitian((T + T.conj().T) / 2)
    lam = lambda_min(M)
    # oracle built without the package: |T| = diag(0,1,1), |T*| = diag(1,1,0), |Re T| from eigh
    w, V = np.linalg.eigh((T + T.conj().T) / 2)
    M_ref = np.diag([1.0, 2.0, 1.0]) - 2 * (V * np.abs(w)) @ V.conj().T
    rng = np.random.default_rng(2024)
    X = rng.standard_normal((10_000, 3)) + 1j * rng.standard_normal((10_000, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    q = np.einsum("ki,ij,kj->k", X.conj(), M_ref, X).real
    ok = lam < -0.05 and q.min() < -0.05 and q.min() >= lam - 1e-12
    report(4, ok, f"lambda_min {lam:.12f} (1-sqrt2 = {1 - SQ2:.12f}), sampled min <Mx,x> {q.min():.6f}")


def test_criterion_05_normal_corpus(report):
    parts = []
    ok = True
    for i, cid in enumerate(("prop03", "thm3", "sv_semihypo")):
        nv, sk, best = _sweep(cid, "normal", 500 + i, tol=1e-8)
        ok &= nv == 0 and sk == 0
        parts.append(f"{cid} viol={nv} worst={best:.1e}")
    res = th.falsify("thm3", [2], 10_000, 12345, "ginibre")
    ok &= res.n_violations >= 1
    parts.append(f"falsify thm3 ginibre dim2: {res.n_violations} violations, worst {res.best_margin:.3f}")
    report(5, ok, "; ".join(parts))


def test_criterion_06_invertible_corpus(report):
    parts = []
    ok = True
    for i, cid in enumerate(("ab_equiv", "thm28", "thm15")):
        nv, sk, best = _sweep(cid, "invertible", 600 + i, tol=1e-7)
        ok &= nv == 0 and sk == 0
        parts.append(f"{cid} viol={nv}")
    bad = 0
    for _, (T,) in _trial_mats("invertible", 610):
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            bad += not th.check_mean_sigma(T, MeanSpec.weighted(t), tol=1e-7).passed
    ok &= bad == 0
    parts.append(f"mean_sigma x5 viol={bad}")
    not_tight = 0
    for _, (T,) in _trial_mats("invertible", 620):
        cert = th.ab_tightness(T)
        not_tight += not (cert["alpha_block_fails"] and cert["beta_block_fails"])
    ok &= not_tight == 0
    parts.append(f"tightness misses={not_tight}")
    report(6, ok, "; ".join(parts))


def _psd_block(rng, n):
    G = rng.standard_normal((2 * n, 2 * n)) + 1j * rng.standard_normal((2 * n, 2 * n))
    P = G @ G.conj().T
    return bk.BlockForm(P[:n, :n], P[n:, n:], P[n:, :n])


def _hermitian_c_block(rng, n):
    H = gen_matrix("ginibre", n, rng)
    H = (H + H.conj().T) / 2
    absH = abs_hermitian(H)
    Q1, Q2 = gen_matrix("psd", n, rng), gen_matrix("psd", n, rng)
    return bk.BlockForm(absH + 0.1 * Q1, absH + 0.1 * Q2, H)


def _shared_c_blocks(rng, n):
    C = gen_matrix("ginibre", n, rng)
    out = []
    for _ in range(2):
        B = gen_matrix("psd", n, rng) + np.eye(n)
        A = C.conj().T @ np.linalg.solve(B, C) + 0.05 * gen_matrix("psd", n, rng)
        out.append(bk.BlockForm((A + A.conj().T) / 2, B, C))
    return out


def _lemma_failures(seed):
    fails = dict.fromkeys(("swap", "schur", "lemma4", "lemma16", "lemma0", "tao", "lemma20"), 0)
    for i in range(TRIALS):
        rng = np.random.default_rng([seed, i])
        n = DIMS[i % len(DIMS)]
        bf = _psd_block(rng, n)
        # a non-PSD variant: push A below the Schur complement
        X = bf.C.conj().T @ np.linalg.solve(bf.B, bf.C)
        sign = 1.0 if i % 2 else -1.0
        bf2 = bk.BlockForm((X + X.conj().T) / 2 + sign * 0.2 * np.eye(n), bf.B, bf.C)
        fails["swap"] += not (bk.swap_check(bf) and bk.swap_check(bf2))
        fails["schur"] += bk.schur_test(bf2).is_psd != bk.block_psd(bf2).is_psd
        fails["lemma4"] += not bk.lemma4_consequence(_hermitian_c_block(rng, n)).passed
        fails["lemma16"] += not bk.lemma16_check(*_shared_c_blocks(rng, n)).passed
        fails["lemma0"] += not bk.lemma0_check(bf).passed
        fails["tao"] += not bk.tao_check(bf).passed
        fails["lemma20"] += not bk.lemma20_spot(bf, trials=200, seed=i).passed
    return fails


def test_criterion_07_unrestricted_corpus(report):
    parts = []
    ok = True
    for i, cid in enumerate(("thm23", "remark18", "cor_sum", "cor_sing_ST", "sing_remarks")):
        nv, sk, best = _sweep(cid, "ginibre", 700 + i)
        ok &= nv == 0 and sk == 0
        parts.append(f"{cid} viol={nv}")
    bad = 0
    grid = list(itertools.product(th.COR19_GRID, th.COR19_GRID))
    for k, (_, (S, T)) in enumerate(_trial_mats("ginibre", 710, 2)):
        for tp, vp in grid:
            bad += not th.check_cor19(S, T, tp, vp, sign=1 if k % 2 else -1).passed
    ok &= bad == 0
    parts.append(f"cor19 x16 viol={bad}")
    fails = _lemma_failures(720)
    ok &= not any(fails.values())
    parts.append("lemmas " + " ".join(f"{k}={v}" for k, v in fails.items()))
    report(7, ok, "; ".join(parts))


def _dense_omega_2x2(T, points=1_000_000):
    R = (T + T.conj().T) / 2
    J = (T - T.conj().T) / 2j
    t = np.linspace(0, 2 * np.pi, points, endpoint=False)
    a = np.cos(t) * R[0, 0].real - np.sin(t) * J[0, 0].real
    d = np.cos(t) * R[1, 1].real - np.sin(t) * J[1, 1].real
    b = np.cos(t) * R[0, 1] - np.sin(t) * J[0, 1]
    return float(np.max((a + d) / 2 + np.sqrt(((a - d) / 2) ** 2 + np.abs(b) ** 2)))


def test_criterion_08_omega_engine(report):
    nil = np.array([[0, 1], [0, 0]], dtype=complex)
    w = omega(nil).value
    dense = _dense_omega_2x2(nil)
    ok = abs(w - 0.5) <= 1e-8 and abs(w - dense) <= 1e-8
    worst_rho = 0.0
    for s in range(200):
        T = gen_matrix("normal", DIMS[s % len(DIMS)], [800, s])
        rho = float(np.max(np.abs(np.linalg.eigvals(T))))
        worst_rho = max(worst_rho, abs(omega(T).value - rho))
    ok &= worst_rho <= 1e-8
    sandwich_bad = sum(not check_sandwich(T).passed for _, (T,) in _trial_mats("ginibre", 810))
    ok &= sandwich_bad == 0
    report(8, ok, f"omega(nil) {w:.12f} dense {dense:.12f}; normal |omega-rho| max {worst_rho:.1e}; "
                  f"sandwich viol={sandwich_bad}")


def test_criterion_09_numerical_radius_bounds(report):
    chain_bad = 0
    for k, (_, (S, T)) in enumerate(_trial_mats("ginibre", 900, 2)):
        chain_bad += not check_refinement_chain(S, T, th.T_GRID[k % len(th.T_GRID)]).passed
    eq22_bad = 0
    factor_min = math.inf
    remark_bad = 0
    for _, (T,) in _trial_mats("invertible", 910):
        rep = check_lower_eq22(T)
        eq22_bad += not rep.passed
        factor_min = min(factor_min, rep.details["factor"])
        remark_bad += not check_corrected_remark(T).passed
    hypo_bad = sum(not check_hypo_lower(T).passed for _, (T,) in _trial_mats("hyponormal", 920))
    ok = chain_bad == 0 and eq22_bad == 0 and factor_min >= 1 and hypo_bad == 0 and remark_bad == 0
    report(9, ok, f"chain viol={chain_bad}; eq22 viol={eq22_bad} min factor {factor_min:.4f}; "
                  f"hyponormal viol={hypo_bad}; corrected remark viol={remark_bad}")


def test_criterion_10_determinism(report):
    a = dumps(th.falsify("thm3", DIMS, TRIALS, 1010, "ginibre", workers=1).to_json())
    b = dumps(th.falsify("thm3", DIMS, TRIALS, 1010, "ginibre", workers=4).to_json())
    report(10, a == b, f"workers 1 vs 4: {len(a)} bytes, identical={a == b}")
