"""Binary index cycles: arc parity, phase products and the 2x2 proof expansion.

Indices are 1-based in the public ``ArcDecomposition.same`` positions to
match the usual way the cycle positions are written; arrays are 0-based.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .checkers import as_weights
from .errors import DimensionViolation
from .spectral import SpectralDecomposition, as_psd, psd_decomposition


@dataclass(frozen=True)
class IndexCycle:
    """A cyclic sequence ``i_1..i_m`` over {0, 1}."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("an index cycle needs at least one entry")
        if any(i not in (0, 1) for i in idx):
            raise ValueError(f"cycle entries must be 0 or 1, got {self.indices}")
        object.__setattr__(self, "indices", idx)

    @property
    def m(self):
        return len(self.indices)

    def predecessor(self, j):
        """0-based position sent to by the cyclic shift 1 -> m, 2 -> 1, ..."""
        return (j - 1) % self.m

    def successor(self, j):
        return (j + 1) % self.m


def all_cycles(m):
    for idx in itertools.product((0, 1), repeat=m):
        yield IndexCycle(idx)


@dataclass(frozen=True)
class ArcDecomposition:
    same: tuple  # 1-based positions j with i_j == i_pi(j)
    same_count: int
    diff_count: int


def arc_parity(c, orientation="predecessor"):
    """Split the cycle positions into equal-neighbour and unequal-neighbour arcs.

    ``orientation`` picks the neighbour each position is compared with; the
    count of unequal arcs is the same (and even) either way.
    """
    if not isinstance(c, IndexCycle):
        c = IndexCycle(tuple(c))
    nb = c.predecessor if orientation == "predecessor" else c.successor
    same = tuple(j + 1 for j in range(c.m) if c.indices[j] == c.indices[nb(j)])
    diff = c.m - len(same)
    if diff % 2:
        raise RuntimeError(f"odd number of unequal arcs ({diff}) for {c.indices}")
    return ArcDecomposition(same, len(same), diff)


def _basis(basis):
    if isinstance(basis, SpectralDecomposition):
        return basis.eigenvectors
    return np.asarray(basis, dtype=complex)


def _elements(A, basis):
    """Matrix of ``<psi_a|A|psi_b>``."""
    U = _basis(basis)
    return U.conj().T @ np.asarray(A) @ U


def _check_2x2(A):
    if np.shape(A) != (2, 2):
        raise DimensionViolation(f"phase products are defined for 2x2 matrices, got {np.shape(A)}")


def chain_phase_product(A, basis, c):
    """``prod_j <psi_{i_pi(j)}|A|psi_{i_j}>`` for a 2x2 PSD ``A``.

    ``basis`` is a unitary whose columns are the psi vectors, or a
    SpectralDecomposition whose eigenvectors are used.
    """
    _check_2x2(A)
    if not isinstance(c, IndexCycle):
        c = IndexCycle(tuple(c))
    E = _elements(A, basis)
    idx = c.indices
    prod = 1.0 + 0.0j
    for j in range(c.m):
        prod *= E[idx[c.predecessor(j)], idx[j]]
    return complex(prod)


def factorized_phase_product(A, basis, c):
    """Diagonal factors on equal arcs times ``|<psi_0|A|psi_1>|^{#unequal arcs}``."""
    _check_2x2(A)
    if not isinstance(c, IndexCycle):
        c = IndexCycle(tuple(c))
    E = _elements(A, basis)
    arcs = arc_parity(c)
    diag = 1.0
    for j in arcs.same:
        diag *= E[c.indices[j - 1], c.indices[j - 1]].real
    return diag * abs(E[0, 1]) ** arcs.diff_count


@dataclass(frozen=True)
class ProofExpansion:
    """The three spectral sums over ``{0,1}^m`` used by the 2x2 proof."""

    chain: complex  # sum of prod lambda^p weights: Tr[T^p1 A ... T^pm A]
    upper: complex  # arithmetic-mean weights: Tr[T A^m]
    lower: complex  # geometric-mean weights: Tr[(T^{1/m} A)^m]


def _pow0(x, p):
    return x**p if x > 0 else (1.0 if p == 0 else 0.0)


def proof_expansion(T, A, w, symmetrize=False):
    """Expand the chain in the eigenbasis of ``T`` over all index tuples.

    With ``symmetrize=True`` each tuple's eigenvalue weight is averaged over
    the m cyclic shifts of the exponents, as the proof does before applying
    AM-GM; the total is unchanged.
    """
    w = as_weights(w)
    D = psd_decomposition(T if isinstance(T, SpectralDecomposition) else as_psd(T))
    A = as_psd(A)
    if D.dim != 2 or A.shape != (2, 2):
        raise DimensionViolation("the proof expansion is for 2x2 matrices")
    lam = D.eigenvalues
    m = w.m
    p = w.weights
    E = _elements(A, D)
    chain = []
    upper = []
    lower = []
    for idx in itertools.product((0, 1), repeat=m):
        cyc = 1.0 + 0.0j
        for j in range(m):
            cyc *= E[idx[j], idx[(j + 1) % m]]
        if symmetrize:
            weight = math.fsum(
                math.prod(_pow0(lam[idx[j]], p[(j + k) % m]) for j in range(m)) for k in range(m)
            ) / m
        else:
            weight = math.prod(_pow0(lam[idx[j]], p[j]) for j in range(m))
        chain.append(weight * cyc)
        upper.append(math.fsum(lam[i] for i in idx) / m * cyc)
        lower.append(math.prod(_pow0(lam[i], 1.0 / m) for i in idx) * cyc)
    return ProofExpansion(complex(sum(chain)), complex(sum(upper)), complex(sum(lower)))
