"""Randomized property suite behind ``traceineq verify``.

Each entry of :data:`CHECKS` maps a checker name to a function
``(n, seed, index, rtol) -> list[InequalityReport]`` that draws one random
instance and evaluates it. Instances depend only on (checker, n, seed, index).
"""
from dataclasses import dataclass

import numpy as np

from . import checkers, lemmas, sampling
from .checkers import DEFAULT_RTOL, FAIL, DEGENERATE, make_report

_SALTS = {}


def _seed_for(name, seed):
    """Per-checker seed so different checkers do not reuse the same matrices."""
    if name not in _SALTS:
        _SALTS[name] = sum((i + 1) * ord(ch) for i, ch in enumerate(name))
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, _SALTS[name]])
    return int(ss.generate_state(1, np.uint64)[0])


def _rng(name, n, seed, index):
    return sampling.generator(_seed_for(name, seed), sampling.KIND_MISC, n, index)


def _fg_pair(rng, psd_spectrum):
    kinds = ("identity", "power2", "sqrt", "affine") if psd_spectrum else ("identity", "power2", "affine")
    pick = lambda: sampling.make_function(kinds[int(rng.integers(len(kinds)))], rng)  # noqa: E731
    return pick(), pick()


def _f_g_l_a(name, n, seed, index, psd_l):
    s = _seed_for(name, seed)
    rng = _rng(name, n, seed, index)
    psd_a = bool(rng.random() < 0.5)
    f, g = _fg_pair(rng, psd_a)
    A = sampling.sample_psd(n, s, 2 * index) if psd_a else sampling.sample_hermitian(n, s, index)
    L = sampling.sample_psd(n, s, 2 * index + 1) if psd_l else sampling.sample_hermitian(n, s, 10**9 + index)
    return f, g, L, A


def _p1(n, seed, index, rtol):
    f, g, L, A = _f_g_l_a("check_p1", n, seed, index, psd_l=True)
    return [checkers.check_p1(f, g, L, A, rtol)]


def _p2(n, seed, index, rtol):
    f, g, L, A = _f_g_l_a("check_p2", n, seed, index, psd_l=False)
    return [checkers.check_p2(f, g, L, A, rtol)]


def _rhs_order(n, seed, index, rtol):
    f, g, L, A = _f_g_l_a("check_rhs_order", n, seed, index, psd_l=False)
    return [checkers.check_rhs_order(f, g, L, A, rtol)]


def _ordered_fg(n, seed, index, rtol):
    f, _, L, A = _f_g_l_a("check_ordered_fg", n, seed, index, psd_l=False)
    rng = _rng("check_ordered_fg.shift", n, seed, index)
    g = sampling.shifted(f, 4.0 * rng.random() - 2.0)
    return [checkers.check_ordered_fg(f, g, L, A, rtol)]


def _araki(n, seed, index, rtol):
    s = _seed_for("check_araki", seed)
    rng = _rng("check_araki", n, seed, index)
    X = sampling.sample_psd(n, s, 2 * index)
    Y = sampling.sample_psd(n, s, 2 * index + 1)
    r = float(rng.random())
    p = float(rng.integers(1, 5)) if rng.random() < 0.5 else 0.25 + 3.75 * float(rng.random())
    return [checkers.check_araki(X, Y, r, p, rtol)]


def _power_chain(n, seed, index, rtol):
    s = _seed_for("check_power_chain_m", seed)
    rng = _rng("check_power_chain_m", n, seed, index)
    T = sampling.sample_psd(n, s, 2 * index)
    A = sampling.sample_psd(n, s, 2 * index + 1)
    return [checkers.check_power_chain_m(T, A, int(rng.integers(1, 7)), rtol)]


def _alpha(n, seed, index, rtol):
    s = _seed_for("check_alpha_interp", seed)
    rng = _rng("check_alpha_interp", n, seed, index)
    T = sampling.sample_psd(n, s, index)
    A = sampling.sample_hermitian(n, s, index)
    return list(checkers.check_alpha_interp(T, A, float(rng.random()), rtol))


def _bourin(n, seed, index, rtol):
    s = _seed_for("check_bourin_fujii", seed)
    rng = _rng("check_bourin_fujii", n, seed, index)
    A = sampling.sample_psd(n, s, index)
    X = sampling.sample_hermitian(n, s, index)
    aligned = bool(rng.random() < 0.5)
    inc = sampling.INCREASING_ON_PSD
    f = sampling.make_function(inc[int(rng.integers(len(inc)))], rng)
    g = sampling.make_function(inc[int(rng.integers(len(inc)))] if aligned else "affine-", rng)
    return [checkers.check_bourin_fujii(f, g, A, X, aligned, rtol)]


def _thm_2x2(n, seed, index, rtol):
    s = _seed_for("check_thm_2x2", seed)
    rng = _rng("check_thm_2x2", 2, seed, index)
    T = sampling.sample_psd(2, s, 2 * index)
    A = sampling.sample_psd(2, s, 2 * index + 1)
    w = sampling.sample_weights(int(rng.integers(2, 9)), s, index)
    return list(checkers.check_thm_2x2(T, A, w, rtol))


def _amgm(n, seed, index, rtol):
    s = _seed_for("amgm_weighted", seed)
    rng = _rng("amgm_weighted", 0, seed, index)
    m = int(rng.integers(1, 9))
    a = np.exp(4.0 * rng.random(m) - 2.0)
    return [checkers.amgm_report(a, sampling.sample_weights(m, s, index), rtol)]


def _arc_parity(n, seed, index, rtol):
    rng = _rng("arc_parity", 0, seed, index)
    m = int(rng.integers(1, 17))
    cycle = tuple(int(b) for b in rng.integers(0, 2, m))
    arcs = lemmas.arc_parity(cycle)
    # lhs is the parity bit of the unequal-arc count; it must be 0
    return [make_report("arc_parity", arcs.diff_count % 2, 0.0, rtol)]


def _phase_product(n, seed, index, rtol):
    s = _seed_for("chain_phase_product", seed)
    rng = _rng("chain_phase_product", 2, seed, index)
    A = sampling.sample_psd(2, s, index)
    U = sampling.sample_unitary(2, s, index)
    cycle = tuple(int(b) for b in rng.integers(0, 2, int(rng.integers(1, 9))))
    value = lemmas.chain_phase_product(A, U, cycle)
    return [make_report("chain_phase_product", 0.0, value, rtol)]


@dataclass(frozen=True)
class Check:
    func: object
    sized: bool  # runs once per requested dimension
    fixed_dim: int = 0


CHECKS = {
    "amgm_weighted": Check(_amgm, sized=False),
    "arc_parity": Check(_arc_parity, sized=False),
    "chain_phase_product": Check(_phase_product, sized=False, fixed_dim=2),
    "check_alpha_interp": Check(_alpha, sized=True),
    "check_araki": Check(_araki, sized=True),
    "check_bourin_fujii": Check(_bourin, sized=True),
    "check_ordered_fg": Check(_ordered_fg, sized=True),
    "check_p1": Check(_p1, sized=True),
    "check_p2": Check(_p2, sized=True),
    "check_power_chain_m": Check(_power_chain, sized=True),
    "check_rhs_order": Check(_rhs_order, sized=True),
    "check_thm_2x2": Check(_thm_2x2, sized=False, fixed_dim=2),
}

LEMMA_CHECKS = ("arc_parity", "chain_phase_product")


@dataclass(frozen=True)
class SuiteRecord:
    checker: str
    dim: int
    index: int
    report: checkers.InequalityReport


def run_checker(name, n, samples, seed, rtol=DEFAULT_RTOL):
    func = CHECKS[name].func
    out = []
    for j in range(samples):
        for rep in func(n, seed, j, rtol):
            out.append(SuiteRecord(name, n, j, rep))
    return out


def run_suite(dims, samples, seed, rtol=DEFAULT_RTOL, names=None):
    """All checkers at the given sizes, in canonical (checker, dim, index) order."""
    records = []
    for name in sorted(names or CHECKS):
        spec = CHECKS[name]
        sizes = sorted(set(dims)) if spec.sized else [spec.fixed_dim]
        for n in sizes:
            records.extend(run_checker(name, n, samples, seed, rtol))
    return records


@dataclass(frozen=True)
class SummaryRow:
    name: str
    samples: int
    min_slack: float
    max_imag_residual: float
    fails: int
    degenerate: int


def summarize(records):
    rows = {}
    for rec in records:
        rows.setdefault(rec.checker, []).append(rec)
    out = []
    for name in sorted(rows):
        recs = rows[name]
        reps = [r.report for r in recs]
        out.append(SummaryRow(
            name=name,
            samples=len({(r.dim, r.index) for r in recs}),
            min_slack=min(r.slack for r in reps),
            max_imag_residual=max(r.imag_residual for r in reps),
            fails=sum(r.verdict == FAIL for r in reps),
            degenerate=sum(r.verdict == DEGENERATE for r in reps),
        ))
    return out
