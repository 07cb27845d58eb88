"""Checkers for the trace inequalities.

Each ``check_*`` function evaluates both sides of one inequality on concrete
matrices and returns an :class:`InequalityReport` (or a ``(lower, upper)``
pair for two-sided statements). A checker never reports ``fail`` when the
hypothesis of the inequality is unmet; that case is ``degenerate``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionViolation, InvalidWeights, NonPositiveInput
from .spectral import (
    as_hermitian,
    as_psd,
    fractional_power,
    hermitian_eig,
    matrix_function,
    psd_decomposition,
    SpectralDecomposition,
    spectral_pow,
)

DEFAULT_RTOL = 1e-9
PASS, FAIL, DEGENERATE = "pass", "fail", "degenerate"


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated instance of ``lhs <= rhs``."""

    name: str
    lhs: complex
    rhs: complex
    slack: float
    imag_residual: float
    tol: float
    verdict: str
    note: str = field(default="", compare=False)

    @property
    def passed(self):
        return self.verdict == PASS

    def to_json(self):
        return {
            "name": self.name,
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "slack": self.slack,
            "imag_residual": self.imag_residual,
            "tol": self.tol,
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            name=obj["name"],
            lhs=complex(obj["lhs"]["re"], obj["lhs"]["im"]),
            rhs=complex(obj["rhs"]["re"], obj["rhs"]["im"]),
            slack=float(obj["slack"]),
            imag_residual=float(obj["imag_residual"]),
            tol=float(obj["tol"]),
            verdict=obj["verdict"],
        )


def verdict_tol(lhs, rhs, rtol=DEFAULT_RTOL):
    return rtol * max(abs(lhs), abs(rhs), 1.0)


def make_report(name, lhs, rhs, rtol=DEFAULT_RTOL, degenerate=None):
    """Build a report for ``lhs <= rhs``.

    ``degenerate`` is a message describing an unmet hypothesis; when given
    the verdict is ``degenerate`` regardless of the numbers.
    """
    lhs = complex(lhs)
    rhs = complex(rhs)
    tol = verdict_tol(lhs, rhs, rtol)
    slack = rhs.real - lhs.real
    imag = max(abs(lhs.imag), abs(rhs.imag))
    if degenerate:
        verdict = DEGENERATE
    elif slack >= -tol and imag <= tol:
        verdict = PASS
    else:
        verdict = FAIL
    return InequalityReport(name, lhs, rhs, slack, imag, tol, verdict, degenerate or "")


@dataclass(frozen=True)
class WeightVector:
    """Positive weights summing to one."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidWeights("weight vector must be non-empty")
        if any(not (x > 0 and math.isfinite(x)) for x in w):
            raise InvalidWeights(f"weights must be positive and finite: {w}")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise InvalidWeights(f"weights sum to {math.fsum(w)!r}, not 1")

    @classmethod
    def uniform(cls, m):
        return cls((1.0 / m,) * m)

    @property
    def m(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def reversed(self):
        return WeightVector(self.weights[::-1])

    def rotated(self, k):
        k %= self.m
        return WeightVector(self.weights[k:] + self.weights[:k])


def as_weights(w):
    return w if isinstance(w, WeightVector) else WeightVector(tuple(w))


def _chain_product(powers, A):
    """Left-to-right product ``P_1 A P_2 A ... P_m A``."""
    acc = powers[0] @ A
    for P in powers[1:]:
        acc = (acc @ P) @ A
    return acc


def _powers(D, exponents):
    cache = {}
    out = []
    for p in exponents:
        if p not in cache:
            cache[p] = D.reconstruct(spectral_pow(D.eigenvalues, p))
        out.append(cache[p])
    return out


def trace_chain(T, A, w):
    """``Tr[T^{p_1} A T^{p_2} A ... T^{p_m} A]`` for PSD ``T``, Hermitian ``A``.

    ``T`` may be passed as its SpectralDecomposition to reuse it. The value is
    complex in general for dimensions >= 3.
    """
    w = as_weights(w)
    D = psd_decomposition(T)
    A = as_hermitian(A)
    if A.shape[0] != D.dim:
        raise DimensionViolation(f"T is {D.dim}x{D.dim} but A is {A.shape}")
    return complex(np.trace(_chain_product(_powers(D, w.weights), A)))


def uniform_chain_trace(D, A, m):
    """``Tr[(T^{1/m} A)^m]``, multiplied in the same order as :func:`trace_chain`."""
    return complex(np.trace(_chain_product(_powers(D, [1.0 / m] * m), A)))


def t_a_power_trace(T, A, m):
    """``Tr[T A^m]``."""
    acc = np.asarray(T) @ A
    for _ in range(m - 1):
        acc = acc @ A
    return complex(np.trace(acc))


def _fg(f, g, A):
    D = hermitian_eig(A)
    return D, matrix_function(D, f), matrix_function(D, g)


def _p1_rhs(F, G, L):
    FL = F @ L
    GL = G @ L
    return FL, GL, 0.5 * (np.trace(FL @ FL) + np.trace(GL @ GL))


def _p2_rhs(F, G, L):
    L2 = L @ L
    return 0.5 * (np.trace(F @ F @ L2) + np.trace(G @ G @ L2))


def check_p1(f, g, L, A, rtol=DEFAULT_RTOL):
    """``Tr[f(A) L g(A) L] <= 1/2 Tr[(f(A)L)^2 + (g(A)L)^2]`` for PSD ``L``."""
    L = as_psd(L)
    _, F, G = _fg(f, g, A)
    FL, GL, rhs = _p1_rhs(F, G, L)
    return make_report("check_p1", np.trace(FL @ GL), rhs, rtol)


def check_p2(f, g, L, A, rtol=DEFAULT_RTOL):
    """``Tr[f(A) L g(A) L] <= 1/2 Tr[f(A)^2 L^2 + g(A)^2 L^2]``; ``L`` Hermitian."""
    L = as_hermitian(L)
    _, F, G = _fg(f, g, A)
    return make_report("check_p2", np.trace(F @ L @ G @ L), _p2_rhs(F, G, L), rtol)


def check_rhs_order(f, g, L, A, rtol=DEFAULT_RTOL):
    """Right side of :func:`check_p1` is at most the right side of :func:`check_p2`."""
    L = as_hermitian(L)
    _, F, G = _fg(f, g, A)
    _, _, lhs = _p1_rhs(F, G, L)
    return make_report("check_rhs_order", lhs, _p2_rhs(F, G, L), rtol)


def _ordering_violated(fv, gv):
    d = fv - gv
    eps = 1e-12 * max(float(np.max(np.abs(fv))), float(np.max(np.abs(gv))), 1.0)
    return not (np.all(d <= eps) or np.all(d >= -eps))


def check_ordered_fg(f, g, L, A, rtol=DEFAULT_RTOL):
    """Same inequality as :func:`check_p1` for Hermitian ``L``, given f <= g or f >= g.

    The ordering is checked on the eigenvalues of ``A`` only; if it does not
    hold there the report is degenerate.
    """
    L = as_hermitian(L)
    D, F, G = _fg(f, g, A)
    FL, GL, rhs = _p1_rhs(F, G, L)
    slack = 1e-10 * D.spectral_radius
    fv = f.on_spectrum(D.eigenvalues, slack)
    gv = g.on_spectrum(D.eigenvalues, slack)
    note = "f and g are not ordered on the spectrum of A" if _ordering_violated(fv, gv) else None
    return make_report("check_ordered_fg", np.trace(FL @ GL), rhs, rtol, degenerate=note)


def ordered_fg_spectral_gap(f, g, L, A):
    """``1/2 sum_{m,n} (f-g)(l_m) (f-g)(l_n) |<phi_m|L|phi_n>|^2``.

    Equals rhs - lhs of :func:`check_ordered_fg` and is a sum of nonnegative
    terms whenever f - g has constant sign on the spectrum.
    """
    D = hermitian_eig(A)
    slack = 1e-10 * D.spectral_radius
    d = f.on_spectrum(D.eigenvalues, slack) - g.on_spectrum(D.eigenvalues, slack)
    U = D.eigenvectors
    Lm = U.conj().T @ as_hermitian(L) @ U
    return 0.5 * float(np.sum(np.outer(d, d) * np.abs(Lm) ** 2))


def _outer_power(M, q):
    """``Tr[M^q]`` for a PSD matrix ``M``."""
    if float(q).is_integer() and q >= 1:
        return complex(np.trace(np.linalg.matrix_power(M, int(q))))
    return complex(np.trace(fractional_power(M, q)))


def check_araki(X, Y, r, p, rtol=DEFAULT_RTOL):
    """``Tr[(Y^{r/2} X^r Y^{r/2})^p] <= Tr[(Y^{1/2} X Y^{1/2})^{rp}]``."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    DX = psd_decomposition(as_psd(X))
    DY = psd_decomposition(as_psd(Y))

    def congruence(s):
        Ys = DY.reconstruct(spectral_pow(DY.eigenvalues, s / 2))
        Xs = DX.reconstruct(spectral_pow(DX.eigenvalues, s))
        M = Ys @ Xs @ Ys
        return (M + M.conj().T) / 2

    lhs = _outer_power(congruence(r), p)
    rhs = _outer_power(congruence(1.0), r * p)
    return make_report("check_araki", lhs, rhs, rtol)


def check_power_chain_m(T, A, m, rtol=DEFAULT_RTOL):
    """``Tr[(T^{1/m} A)^m] <= Tr[T A^m]`` for PSD ``T`` and ``A``."""
    if m < 1 or int(m) != m:
        raise ValueError(f"m must be a positive integer, got {m}")
    m = int(m)
    D = psd_decomposition(as_psd(T))
    A = as_psd(A)
    lhs = uniform_chain_trace(D, A, m)
    rhs = t_a_power_trace(D.reconstruct(), A, m)
    return make_report("check_power_chain_m", lhs, rhs, rtol)


def check_alpha_interp(T, A, alpha, rtol=DEFAULT_RTOL):
    """``Tr[(T^{1/2}A)^2] <= Tr[T^a A T^{1-a} A] <= Tr[T A^2]``; returns (lower, upper)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    D = psd_decomposition(as_psd(T))
    A = as_hermitian(A)
    P, Q, H = _powers(D, [alpha, 1.0 - alpha, 0.5])
    mid = complex(np.trace((P @ A) @ (Q @ A)))
    low = complex(np.trace((H @ A) @ (H @ A)))
    top = t_a_power_trace(D.reconstruct(), A, 2)
    return (
        make_report("check_alpha_interp.lower", low, mid, rtol),
        make_report("check_alpha_interp.upper", mid, top, rtol),
    )


def _alignment_violated(fv, gv, aligned):
    prod = np.subtract.outer(fv, fv) * np.subtract.outer(gv, gv)
    scale = max(float(np.max(np.abs(fv))), 1.0) * max(float(np.max(np.abs(gv))), 1.0)
    eps = 1e-12 * scale
    return bool(np.any(prod < -eps)) if aligned else bool(np.any(prod > eps))


def check_bourin_fujii(f, g, A, X, aligned=True, rtol=DEFAULT_RTOL):
    """Aligned: ``Tr[f(A)Xg(A)X] <= Tr[f(A)g(A)X^2]``; anti-aligned: ``>=``.

    Alignment means (f(a)-f(b))(g(a)-g(b)) >= 0 for all eigenvalue pairs of A
    (<= 0 for anti-aligned); otherwise the report is degenerate.
    """
    X = as_hermitian(X)
    D, F, G = _fg(f, g, A)
    slack = 1e-10 * D.spectral_radius
    fv = f.on_spectrum(D.eigenvalues, slack)
    gv = g.on_spectrum(D.eigenvalues, slack)
    twisted = np.trace(F @ X @ G @ X)
    straight = np.trace(F @ G @ X @ X)
    note = None
    if _alignment_violated(fv, gv, aligned):
        note = "f, g not %s on the spectrum of A" % ("aligned" if aligned else "anti-aligned")
    if aligned:
        return make_report("check_bourin_fujii", twisted, straight, rtol, degenerate=note)
    return make_report("check_bourin_fujii", straight, twisted, rtol, degenerate=note)


def check_thm_2x2(T, A, w, rtol=DEFAULT_RTOL):
    """Both sides of ``Tr[(T^{1/m}A)^m] <= chain <= Tr[T A^m]`` for 2x2 PSD T, A.

    Returns ``(lower, upper)``. The chain is real for 2x2 inputs, so an
    imaginary part above tolerance fails the report.
    """
    w = as_weights(w)
    T = as_psd(T)
    A = as_psd(A)
    if T.shape != (2, 2) or A.shape != (2, 2):
        raise DimensionViolation(f"the 2x2 theorem needs 2x2 inputs, got {T.shape} and {A.shape}")
    D = psd_decomposition(T)
    m = w.m
    chain = trace_chain(D, A, w)
    low = uniform_chain_trace(D, A, m)
    top = t_a_power_trace(D.reconstruct(), A, m)
    return (
        make_report("check_thm_2x2.lower", low, chain, rtol),
        make_report("check_thm_2x2.upper", chain, top, rtol),
    )


def amgm_weighted(a, p):
    """Weighted geometric and arithmetic means ``(prod a_i^p_i, sum p_i a_i)``."""
    p = as_weights(p)
    a = [float(x) for x in a]
    if len(a) != p.m:
        raise ValueError(f"{len(a)} values but {p.m} weights")
    if any(not x > 0 for x in a):
        raise NonPositiveInput(f"AM-GM needs positive numbers, got {a}")
    geo = math.exp(math.fsum(pi * math.log(x) for pi, x in zip(p, a)))
    arith = math.fsum(pi * x for pi, x in zip(p, a))
    return geo, arith


def amgm_report(a, p, rtol=DEFAULT_RTOL):
    geo, arith = amgm_weighted(a, p)
    return make_report("amgm_weighted", geo, arith, rtol)


__all__ = [
    "DEFAULT_RTOL",
    "DEGENERATE",
    "FAIL",
    "InequalityReport",
    "PASS",
    "SpectralDecomposition",
    "WeightVector",
    "amgm_report",
    "amgm_weighted",
    "as_weights",
    "check_alpha_interp",
    "check_araki",
    "check_bourin_fujii",
    "check_ordered_fg",
    "check_p1",
    "check_p2",
    "check_power_chain_m",
    "check_rhs_order",
    "check_thm_2x2",
    "make_report",
    "ordered_fg_spectral_gap",
    "trace_chain",
]
