"""Exit criteria for the package, one test per criterion.

Each test records a one-line PASS/FAIL verdict that is printed in the pytest
terminal summary (and when this file is run directly as a script).
"""
import time

import numpy as np
import pytest

from traceineq import checkers, lemmas, sampling, search, suite
from traceineq.spectral import fractional_power, hermitian_eig, max_norm

RESULTS = {}
SEED = 20260417


def record(number, title, ok, detail):
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
    assert ok, RESULTS[number]


def rel(x, y):
    return abs(x - y) / max(abs(x), abs(y), 1.0)


def test_01_counterexample_golden():
    start = time.perf_counter()
    value = search.reproduce_counterexample()
    elapsed = time.perf_counter() - start
    ok = abs(value.real - 116.037) <= 5e-3 and abs(value.imag - 0.00260306) <= 5e-8 and elapsed < 1.0
    record(1, "3x3 chain trace golden", ok, f"{value.real:.9f}{value.imag:+.11f}i in {elapsed * 1e3:.1f} ms")


def test_02_theorem_2x2_suite():
    start = time.perf_counter()
    fails = 0
    worst_slack = np.inf
    worst_imag = 0.0
    for j in range(10_000):
        rng = sampling.generator(SEED, sampling.KIND_MISC, 2, j)
        m = int(rng.integers(2, 9))
        T = sampling.sample_psd(2, SEED, 2 * j)
        A = sampling.sample_psd(2, SEED, 2 * j + 1)
        w = sampling.sample_weights(m, SEED, j)
        low, up = checkers.check_thm_2x2(T, A, w)
        fails += (low.verdict == checkers.FAIL) + (up.verdict == checkers.FAIL)
        for r in (low, up):
            worst_slack = min(worst_slack, r.slack / max(abs(r.lhs), abs(r.rhs), 1.0))
        chain = low.rhs
        worst_imag = max(worst_imag, abs(chain.imag) / max(abs(chain), 1.0))
    elapsed = time.perf_counter() - start
    ok = fails == 0 and worst_slack >= -1e-9 and worst_imag <= 1e-10 and elapsed < 30
    record(2, "2x2 theorem, 10^4 instances", ok,
           f"fails={fails} min_rel_slack={worst_slack:.3e} max_rel_imag={worst_imag:.3e} {elapsed:.1f}s")


def test_03_equality_characterization():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    w = (1 / 3, 2 / 3)
    scalar = checkers.check_thm_2x2(2 * np.eye(2), A, w)
    general = checkers.check_thm_2x2(np.diag([1.0, 2.0]), A, w)
    ok = (all(abs(r.slack) < 1e-10 for r in scalar) and any(r.slack > 1e-6 for r in general)
          and abs(general[0].slack - 0.018894977116882927) <= 1e-12
          and abs(general[1].slack - 0.15267789813692723) <= 1e-12)
    record(3, "equality iff T = kI", ok,
           f"T=2I slacks {[f'{r.slack:.1e}' for r in scalar]}, "
           f"T=diag(1,2) slacks {[f'{r.slack:.6f}' for r in general]}")


def test_04_parity_exhaustive():
    start = time.perf_counter()
    odd = 0
    count = 0
    for m in range(1, 17):
        for c in lemmas.all_cycles(m):
            odd += lemmas.arc_parity(c).diff_count % 2
            count += 1
    elapsed = time.perf_counter() - start
    record(4, "arc parity, all cycles m <= 16", odd == 0 and elapsed < 10,
           f"{count} cycles, {odd} odd, {elapsed:.1f}s")


def test_05_phase_product():
    worst_imag = worst_neg = worst_fact = 0.0
    for j in range(100):
        A = sampling.sample_psd(2, SEED, j)
        U = sampling.sample_unitary(2, SEED, j)
        scale = max_norm(A)
        for m in range(1, 9):
            for c in lemmas.all_cycles(m):
                v = lemmas.chain_phase_product(A, U, c)
                worst_imag = max(worst_imag, abs(v.imag) / scale**m)
                worst_neg = max(worst_neg, -v.real / scale**m)
                worst_fact = max(worst_fact, rel(v, lemmas.factorized_phase_product(A, U, c)))
    ok = worst_imag <= 1e-12 and worst_neg <= 1e-10 and worst_fact <= 1e-10
    record(5, "phase products real, nonnegative, factorized", ok,
           f"imag/scale={worst_imag:.1e} neg/scale={max(worst_neg, 0):.1e} factor_rel={worst_fact:.1e}")


def test_06_proof_replay():
    worst = 0.0
    for j in range(1000):
        rng = sampling.generator(SEED + 6, sampling.KIND_MISC, 2, j)
        m = int(rng.integers(1, 9))
        T = sampling.sample_psd(2, SEED + 6, 2 * j)
        A = sampling.sample_psd(2, SEED + 6, 2 * j + 1)
        w = sampling.sample_weights(m, SEED + 6, j)
        worst = max(worst, rel(checkers.trace_chain(T, A, w), lemmas.proof_expansion(T, A, w).chain))
    record(6, "matrix chain == {0,1}^m spectral sum", worst <= 1e-10, f"max rel diff {worst:.2e} over 1000")


def test_07_araki_and_power_suites():
    fails = {}
    for name in ("check_power_chain_m", "check_alpha_interp", "check_araki"):
        recs = []
        for n in (2, 3, 4):
            recs += suite.run_checker(name, n, 1000, SEED)
        fails[name] = sum(r.report.verdict == checkers.FAIL for r in recs)
    worst = 0.0
    # split by cond(A)^m: X = A^m only keeps its small eigenvalues while that stays below 1/eps
    worst_ok = worst_ill = 0.0
    n_ill = 0
    for j in range(1000):
        n = 2 + j % 3
        rng = sampling.generator(SEED + 7, sampling.KIND_MISC, n, j)
        m = int(rng.integers(1, 7))
        T = sampling.sample_psd(n, SEED + 7, 2 * j)
        A = sampling.sample_psd(n, SEED + 7, 2 * j + 1)
        pc = checkers.check_power_chain_m(T, A, m)
        ar = checkers.check_araki(np.linalg.matrix_power(A, m), T, 1.0 / m, m)
        d = max(rel(pc.lhs, ar.lhs), rel(pc.rhs, ar.rhs))
        ev = np.linalg.eigvalsh(A)
        if (ev[-1] / ev[0]) ** m > 1e8:
            n_ill += 1
            worst_ill = max(worst_ill, d)
        else:
            worst_ok = max(worst_ok, d)
        worst = max(worst, d)
    ok = not any(fails.values()) and worst <= 1e-10
    record(7, "power chain / alpha interpolation / Araki", ok,
           f"fails={fails} power_chain vs Araki max rel {worst:.1e} "
           f"(cond(A)^m <= 1e8: {worst_ok:.1e}; {n_ill} instances above: {worst_ill:.1e})")


def test_08_function_pair_suites():
    names = ("check_p1", "check_p2", "check_rhs_order", "check_ordered_fg", "check_bourin_fujii")
    fails = {}
    degenerate = {}
    for name in names:
        recs = []
        for n in (2, 3, 4):
            recs += suite.run_checker(name, n, 1000, SEED)
        fails[name] = sum(r.report.verdict == checkers.FAIL for r in recs)
        degenerate[name] = sum(r.report.verdict == checkers.DEGENERATE for r in recs)
    record(8, "p1, p2, RHS order, ordered f,g, Bourin-Fujii", not any(fails.values()),
           f"fails={fails} degenerate={degenerate}")


def test_09_conjecture_searches():
    start = time.perf_counter()
    summary = []
    ok = True
    for which in ("i", "ii"):
        for m in (3, 4):
            a = search.run_search(which, 3, m, 10_000, SEED)
            b = search.run_search(which, 3, m, 10_000, SEED)
            same = a.to_json(timing=False) == b.to_json(timing=False)
            ok &= same and a.violations == 0 and a.errors == 0
            summary.append(f"({which}) m={m}: viol={a.violations} min_slack={a.min_slack:.3e}"
                           f"{'' if same else ' NONDETERMINISTIC'}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    record(9, "conjecture searches n=3", ok, "; ".join(summary) + f" ({elapsed:.1f}s incl. rerun)")


def test_10_spectral_core():
    worst_rec = 0.0
    for n in range(2, 9):
        for j in range(200):
            M = sampling.sample_hermitian(n, SEED + 10, j)
            worst_rec = max(worst_rec, max_norm(hermitian_eig(M).reconstruct() - M) / max_norm(M))
    worst_sqrt = 0.0
    for j in range(1000):
        T = sampling.sample_psd(2 + j % 7, SEED + 10, j)
        H = fractional_power(T, 0.5)
        worst_sqrt = max(worst_sqrt, max_norm(H @ H - T) / max_norm(T))
    ok = worst_rec <= 1e-11 and worst_sqrt <= 1e-10
    record(10, "eigendecomposition and square roots", ok,
           f"reconstruction {worst_rec:.1e}, (T^1/2)^2 {worst_sqrt:.1e}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    for key in sorted(RESULTS):
        print(RESULTS[key])
