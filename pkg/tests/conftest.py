"""Independent oracles built on LAPACK (numpy.linalg.eigh), not the Jacobi kernel."""
import numpy as np
import pytest


def eigh_power(M, p):
    lam, U = np.linalg.eigh(M)
    lam = np.clip(lam, 0.0, None)
    with np.errstate(divide="ignore"):
        vals = np.where(lam > 0, lam**p, 1.0 if p == 0 else 0.0)
    return (U * vals) @ U.conj().T


def eigh_func(M, f):
    lam, U = np.linalg.eigh(M)
    return (U * f(lam)) @ U.conj().T


def direct_chain(T, A, weights):
    acc = np.eye(T.shape[0], dtype=complex)
    for p in weights:
        acc = acc @ eigh_power(T, p) @ A
    return np.trace(acc)


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def random_hermitian(rng, n):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (G + G.conj().T) / 2


def random_psd(rng, n):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    M = G @ G.conj().T
    return (M + M.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
