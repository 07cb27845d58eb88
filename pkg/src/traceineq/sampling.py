"""Seeded sampling of Hermitian/PSD matrices, weight vectors and test functions.

Every draw is addressed by ``(seed, kind, size, index)``. That tuple is fed to
``numpy.random.SeedSequence`` (entropy=seed, spawn_key=(kind, size, index)),
which drives a PCG64 bit generator. Uniform doubles come from
``Generator.random``; Gaussian variates use the Box-Muller transform

    u1 = 1 - U, u2 = U'          (U, U' consecutive uniforms in [0, 1))
    z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)

and a complex standard normal entry is ``z0 + 1j*z1``. Exponentials are
``-ln(1 - U)``. No global RNG state is touched, so batches can be generated in
any order or in parallel with identical results.
"""
import math

import numpy as np

from .checkers import WeightVector
from .spectral import ScalarFunction, affine, identity, power

SEED_MAX = 2**64 - 1

# stream identifiers; distinct kinds never share a sub-stream
KIND_HERMITIAN = 1
KIND_PSD = 2
KIND_WEIGHTS = 3
KIND_UNITARY = 4
KIND_PSD_STRESS = 5
KIND_PSD_LOWRANK = 6
KIND_FUNCTION = 7
KIND_MISC = 8


def parse_seed(text):
    """Parse a decimal or ``0x``-prefixed hexadecimal seed string."""
    text = str(text).strip()
    value = int(text, 16) if text.lower().startswith("0x") else int(text, 10)
    if not 0 <= value <= SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {text}")
    return value


def generator(seed, kind, size, index=0):
    """PCG64 generator for one ``(seed, kind, size, index)`` address."""
    if not 0 <= int(seed) <= SEED_MAX:
        raise ValueError(f"seed out of range: {seed}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(kind), int(size), int(index)))
    return np.random.Generator(np.random.PCG64(ss))


def standard_normal(rng, count):
    """``count`` standard normals by Box-Muller (pairs, truncated)."""
    pairs = (count + 1) // 2
    u = rng.random(2 * pairs)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    theta = 2.0 * math.pi * u[1::2]
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z[:count]


def complex_normal(rng, shape):
    count = int(np.prod(shape))
    z = standard_normal(rng, 2 * count)
    return (z[0::2] + 1j * z[1::2]).reshape(shape)


def ginibre(rng, rows, cols=None):
    return complex_normal(rng, (rows, rows if cols is None else cols))


def _check_dim(n):
    if not 2 <= n <= 64:
        raise ValueError(f"dimension must be in [2, 64], got {n}")


def sample_hermitian(n, seed, index=0):
    """``(G + G*)/2`` for a complex Ginibre ``G``; exactly Hermitian."""
    _check_dim(n)
    G = ginibre(generator(seed, KIND_HERMITIAN, n, index), n)
    return (G + G.conj().T) / 2


def sample_psd(n, seed, index=0, eps=0.0):
    """``G G* + eps I`` for a complex Ginibre ``G``."""
    _check_dim(n)
    G = ginibre(generator(seed, KIND_PSD, n, index), n)
    M = G @ G.conj().T
    M = (M + M.conj().T) / 2
    if eps:
        M = M + eps * np.eye(n)
    return M


def sample_unitary(n, seed, index=0):
    """Haar-distributed unitary via phase-corrected QR of a Ginibre matrix."""
    return _haar(generator(seed, KIND_UNITARY, n, index), n)


def _haar(rng, n):
    Q, R = np.linalg.qr(ginibre(rng, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def sample_psd_stress(n, seed, index=0, max_ratio=1e6):
    """PSD matrix with log-uniform spectrum spanning up to ``max_ratio``."""
    _check_dim(n)
    rng = generator(seed, KIND_PSD_STRESS, n, index)
    lam = max_ratio ** (-rng.random(n))
    lam[0] = 1.0
    lam[-1] = 1.0 / max_ratio if n > 1 and rng.random() < 0.5 else lam[-1]
    U = _haar(rng, n)
    M = (U * lam) @ U.conj().T
    return (M + M.conj().T) / 2


def sample_psd_lowrank(n, seed, index=0, floor=1e-8):
    """Rank ``n-1`` Wishart matrix lifted by ``floor`` times its mean eigenvalue."""
    _check_dim(n)
    G = ginibre(generator(seed, KIND_PSD_LOWRANK, n, index), n, n - 1)
    M = G @ G.conj().T
    M = (M + M.conj().T) / 2
    return M + floor * (np.trace(M).real / n) * np.eye(n)


def sample_weights(m, seed, index=0):
    """Normalized i.i.d. exponentials: a uniform draw from the open simplex."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m == 1:
        return WeightVector((1.0,))
    rng = generator(seed, KIND_WEIGHTS, m, index)
    e = -np.log1p(-rng.random(m))
    # a zero draw (probability ~2**-53) would give a zero weight
    e = np.maximum(e, np.finfo(float).tiny)
    return WeightVector(tuple(e / e.sum()))


INCREASING_ON_PSD = ("identity", "power2", "sqrt", "affine+")


def make_function(kind, rng=None):
    """Build one of the pool functions; affine coefficients come from ``rng``."""
    if kind == "identity":
        return identity()
    if kind == "power2":
        return power(2)
    if kind == "sqrt":
        return power(0.5)
    if kind in ("affine", "affine+", "affine-"):
        a = 0.25 + 1.75 * rng.random()
        b = 4.0 * rng.random() - 2.0
        if kind == "affine-" or (kind == "affine" and rng.random() < 0.5):
            a = -a
        return affine(a, b)
    raise ValueError(f"unknown function kind {kind!r}")


def sample_function(seed, index=0, psd_spectrum=True, kinds=None):
    """Draw one function from {identity, x**2, sqrt (PSD only), affine}."""
    rng = generator(seed, KIND_FUNCTION, 0, index)
    if kinds is None:
        kinds = ("identity", "power2", "sqrt", "affine") if psd_spectrum else ("identity", "power2", "affine")
    return make_function(kinds[int(rng.integers(len(kinds)))], rng)


def shifted(f, c):
    """``f + c`` as a new ScalarFunction on the same domain."""
    return ScalarFunction(f"{f.name}+{c:g}", lambda x: f.func(x) + c, f.domain)
