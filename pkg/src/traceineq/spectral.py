"""Dense complex matrices, Hermitian eigendecomposition and spectral calculus.

Matrices are plain ``numpy`` complex128 arrays. The ``as_*`` helpers validate
the invariants of the matrix classes used throughout the package (square and
finite, Hermitian, positive semidefinite) and return a fresh array.
"""
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _backend
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainViolation,
    NegativeEigenvalue,
    NonFiniteEntry,
    NotHermitian,
    NotSquare,
)

MAX_SWEEPS = 100
CONV_RTOL = 1e-14
HERM_RTOL = 1e-12
PSD_RTOL = 1e-10


def max_norm(M):
    """Largest absolute entry."""
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def as_matrix(M):
    M = np.array(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFiniteEntry("matrix contains NaN or Inf")
    return M


def as_hermitian(M, herm_tol=None):
    """Validate ``M = M*`` within ``herm_tol`` and return the exact symmetrization."""
    M = as_matrix(M)
    if herm_tol is None:
        herm_tol = HERM_RTOL * max_norm(M)
    defect = max_norm(M - M.conj().T)
    if defect > herm_tol:
        raise NotHermitian(f"|M - M*|_max = {defect:.3e} exceeds {herm_tol:.3e}")
    return (M + M.conj().T) / 2


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(self.eigenvalues))) if self.dim else 0.0

    def reconstruct(self, values=None):
        """``U diag(values) U*``; defaults to the eigenvalues themselves."""
        lam = self.eigenvalues if values is None else np.asarray(values)
        U = self.eigenvectors
        M = (U * lam) @ U.conj().T
        return (M + M.conj().T) / 2


def hermitian_eig(M, max_sweeps=MAX_SWEEPS):
    """Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.

    Raises ConvergenceFailure if the off-diagonal Frobenius norm is not below
    ``1e-14 * |M|_F`` after ``max_sweeps`` sweeps.
    """
    a = np.ascontiguousarray(as_hermitian(M))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    tol = CONV_RTOL * float(np.linalg.norm(a))
    sweeps = _backend.jacobi_sweeps(a, v, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    lam = a.diagonal().real.copy()
    order = np.argsort(lam, kind="stable")
    return SpectralDecomposition(lam[order], np.ascontiguousarray(v[:, order]))


def psd_decomposition(T, psd_tol=None):
    """Eigendecomposition of a PSD matrix with roundoff negatives clamped to 0.

    ``T`` may already be a SpectralDecomposition. Raises NegativeEigenvalue if
    the smallest eigenvalue is below ``-psd_tol`` (default ``1e-10`` times the
    spectral radius).
    """
    D = T if isinstance(T, SpectralDecomposition) else hermitian_eig(T)
    if psd_tol is None:
        psd_tol = PSD_RTOL * D.spectral_radius
    lam = D.eigenvalues
    if lam.size and lam[0] < -psd_tol:
        raise NegativeEigenvalue(float(lam[0]), psd_tol)
    if lam.size and lam[0] < 0:
        return SpectralDecomposition(np.maximum(lam, 0.0), D.eigenvectors)
    return D


def as_psd(M, psd_tol=None):
    """Validate positive semidefiniteness; returns the symmetrized matrix."""
    M = as_hermitian(M)
    psd_decomposition(M, psd_tol)
    return M


@dataclass(frozen=True)
class ScalarFunction:
    """Real function of a real variable on the closed interval ``domain``.

    ``func`` must accept and return numpy arrays. Eigenvalues within
    ``1e-10 * spectral radius`` outside the domain are snapped onto its
    boundary before evaluation (roundoff from PSD inputs).
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    domain: tuple = (-math.inf, math.inf)

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def on_spectrum(self, lam, slack=0.0):
        lam = np.asarray(lam, dtype=float)
        lo, hi = self.domain
        for x in lam:
            if x < lo - slack or x > hi + slack:
                raise DomainViolation(self.name, float(x))
        vals = self(np.clip(lam, lo, hi))
        if not np.all(np.isfinite(vals)):
            bad = lam[~np.isfinite(vals)][0]
            raise DomainViolation(self.name, float(bad))
        return vals


def identity():
    return ScalarFunction("identity", lambda x: x.copy())


def constant(c):
    return ScalarFunction(f"constant({c})", lambda x: np.full_like(x, float(c)))


def affine(a, b):
    return ScalarFunction(f"affine({a},{b})", lambda x: a * x + b)


def power(p):
    """``x**p`` with ``0**p = 0`` for ``p > 0`` and ``0**0 = 1``.

    Integer exponents are defined on the whole line, others on ``[0, inf)``.
    """
    p = float(p)
    if p.is_integer() and p >= 0:
        k = int(p)
        return ScalarFunction(f"power({k})", lambda x: x**k)

    return ScalarFunction(f"power({p:g})", lambda x: spectral_pow(x, p), (0.0, math.inf))


def matrix_function(D, f):
    """``U diag(f(lambda)) U*`` for a decomposition ``D`` (or Hermitian matrix)."""
    if not isinstance(D, SpectralDecomposition):
        D = hermitian_eig(D)
    vals = f.on_spectrum(D.eigenvalues, PSD_RTOL * D.spectral_radius)
    return D.reconstruct(vals)


def fractional_power(T, p, psd_tol=None):
    """Spectral power ``T**p`` of a PSD matrix (or its decomposition), ``p >= 0``."""
    if p < 0:
        raise ValueError(f"exponent must be >= 0, got {p}")
    D = psd_decomposition(T, psd_tol)
    return D.reconstruct(spectral_pow(D.eigenvalues, p))


def spectral_pow(lam, p):
    """Elementwise ``lam**p`` with ``0**p = 0`` (p > 0) and ``0**0 = 1``."""
    out = np.zeros_like(lam)
    pos = lam > 0
    out[pos] = lam[pos] ** p
    if p == 0:
        out[~pos] = 1.0
    return out


def trace(M):
    M = np.asarray(M)
    return complex(np.trace(M))


def matmul(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def matrix_to_json(M):
    M = as_matrix(M)
    return {"dim": M.shape[0], "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(obj):
    try:
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"matrix JSON arrays must be {n}x{n}")
    return as_matrix(re + 1j * im)


def save_matrix(path, M):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh)


def load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))
