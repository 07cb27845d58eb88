"""Randomized search for violations of the two open chain conjectures.

Conjecture (i):  Tr[(T^{1/m} A)^m] <= Re Tr[T^{p_1} A ... T^{p_m} A]
Conjecture (ii): |Tr[T^{p_1} A ... T^{p_m} A]| <= Tr[T A^m]

for PSD ``T``, ``A`` of any size. Both hold for 2x2 matrices; beyond that the
chain can be complex and no proof is known. A violation is a finding, so the
harness records the worst instance for replay instead of raising.
"""
import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import sampling
from .checkers import (
    DEFAULT_RTOL,
    WeightVector,
    t_a_power_trace,
    uniform_chain_trace,
    as_weights,
    trace_chain,
)
from .errors import GoldenMismatch, TraceIneqError
from .spectral import as_hermitian, as_psd, matrix_from_json, matrix_to_json, psd_decomposition

CONJECTURES = ("i", "ii")
MODES = ("ginibre", "stress")

COMPLEX_T = np.diag([1.0, 2.0, 3.0]).astype(complex)
COMPLEX_A = np.array([[2, 1j, 1j], [-1j, 2, 1j], [-1j, -1j, 2]], dtype=complex)
COMPLEX_WEIGHTS = (1.0 / 6.0, 1.0 / 3.0, 1.0 / 2.0)
GOLDEN = complex(116.037, 0.00260306)
GOLDEN_TOL_RE = 5e-3
GOLDEN_TOL_IM = 5e-8


@dataclass(frozen=True)
class ConjectureEvaluation:
    which: str
    chain: complex
    bound: float  # Tr[(T^{1/m}A)^m] for (i), Tr[T A^m] for (ii)
    slack: float
    tol: float


def _normalize_which(which):
    w = str(which).lower().strip("()")
    if w not in CONJECTURES:
        raise ValueError(f"conjecture must be 'i' or 'ii', got {which!r}")
    return w


def evaluate_conjecture(which, T, A, w, rtol=DEFAULT_RTOL, require_psd_a=True):
    which = _normalize_which(which)
    w = as_weights(w)
    A = as_psd(A) if require_psd_a else as_hermitian(A)
    D = psd_decomposition(as_psd(T))
    chain = trace_chain(D, A, w)
    if which == "i":
        # Tr[(T^{1/m}A)^m] is real: it is the trace of a power of T^{1/2m} A T^{1/2m}
        bound = uniform_chain_trace(D, A, w.m).real
        slack = chain.real - bound
    else:
        bound = t_a_power_trace(D.reconstruct(), A, w.m).real
        slack = bound - abs(chain)
    tol = rtol * max(abs(chain), abs(bound), 1.0)
    return ConjectureEvaluation(which, chain, bound, slack, tol)


def conjecture_slack(which, T, A, w, **kw):
    """Slack of conjecture (i) or (ii) on one instance; negative means violated."""
    return evaluate_conjecture(which, T, A, w, **kw).slack


@dataclass
class SearchReport:
    conjecture: str
    n: int
    m: int
    samples: int
    seed: int
    mode: str
    a_class: str
    violations: int = 0
    errors: int = 0
    min_slack: float = math.inf
    worst_instance: dict = field(default=None, repr=False)
    violation_instance: dict = field(default=None, repr=False)
    elapsed: float = 0.0

    def to_json(self, timing=True):
        out = asdict(self)
        if not timing:
            out.pop("elapsed")
        return out


def _sample_instance(n, m, seed, index, mode, a_class):
    if mode == "stress":
        T = sampling.sample_psd_stress(n, seed, index)
        A = sampling.sample_psd_lowrank(n, seed, index)
    else:
        T = sampling.sample_psd(n, seed, 2 * index)
        A = sampling.sample_psd(n, seed, 2 * index + 1)
    if a_class == "hermitian":
        A = sampling.sample_hermitian(n, seed, index)
    return T, A, sampling.sample_weights(m, seed, index)


def instance_record(which, seed, index, T, A, w, ev):
    return {
        "conjecture": which,
        "seed": seed,
        "sample_index": index,
        "T": matrix_to_json(T),
        "A": matrix_to_json(A),
        "weights": list(as_weights(w).weights),
        "slack": ev.slack,
        "chain": {"re": ev.chain.real, "im": ev.chain.imag},
    }


def run_search(which, n, m, samples, seed, mode="ginibre", relax_a=False,
               rtol=DEFAULT_RTOL, t_sampler=None):
    """Evaluate one conjecture on ``samples`` seeded random instances.

    Sample ``j`` depends only on ``(seed, j)``, so a longer run extends a
    shorter one. ``relax_a`` draws Hermitian rather than PSD ``A``; that is an
    exploratory setting outside the conjecture's hypotheses. ``t_sampler``
    replaces the ``T`` draw and is called as ``t_sampler(n, seed, j)``.
    """
    which = _normalize_which(which)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    a_class = "hermitian" if relax_a else "psd"
    report = SearchReport(which, n, m, samples, seed, mode, a_class)
    start = time.perf_counter()
    for j in range(samples):
        T, A, w = _sample_instance(n, m, seed, j, mode, a_class)
        if t_sampler is not None:
            T = t_sampler(n, seed, j)
        try:
            ev = evaluate_conjecture(which, T, A, w, rtol, require_psd_a=not relax_a)
        except (TraceIneqError, ArithmeticError):
            report.errors += 1
            continue
        if ev.slack < -ev.tol:
            report.violations += 1
            if report.violation_instance is None:
                report.violation_instance = instance_record(which, seed, j, T, A, w, ev)
        if ev.slack < report.min_slack:
            report.min_slack = ev.slack
            report.worst_instance = instance_record(which, seed, j, T, A, w, ev)
    report.elapsed = time.perf_counter() - start
    return report


def write_instance(path, record):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=1)


def load_instance(path):
    with open(path, encoding="utf-8") as fh:
        rec = json.load(fh)
    return rec, matrix_from_json(rec["T"]), matrix_from_json(rec["A"]), WeightVector(tuple(rec["weights"]))


def replay_instance(path, rtol=DEFAULT_RTOL):
    """Recompute a persisted instance; returns the fresh evaluation."""
    rec, T, A, w = load_instance(path)
    return evaluate_conjecture(rec["conjecture"], T, A, w, rtol, require_psd_a=False)


def complex_chain(T=None, A=None, w=COMPLEX_WEIGHTS):
    """Chain value for the 3x3 instance with a complex trace (or an override)."""
    T = COMPLEX_T if T is None else T
    A = COMPLEX_A if A is None else A
    return trace_chain(T, A, w)


def golden_ok(value):
    return abs(value.real - GOLDEN.real) <= GOLDEN_TOL_RE and abs(value.imag - GOLDEN.imag) <= GOLDEN_TOL_IM


def reproduce_counterexample():
    """Rebuild the 3x3 instance with a non-real chain trace and return its value.

    T = diag(1, 2, 3), A = 2I + i*(strict upper ones - strict lower ones),
    weights (1/6, 1/3, 1/2). Raises GoldenMismatch unless the value is
    116.037 + 0.00260306i to the printed precision.
    """
    value = complex_chain()
    if not golden_ok(value):
        raise GoldenMismatch(f"chain {value} differs from {GOLDEN}")
    return value
