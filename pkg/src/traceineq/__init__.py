"""Numerical checks of trace inequalities for products of matrix powers.

The eigensolver kernel is compiled with Cython when available; set
``TRACEINEQ_BACKEND=python`` to force the pure-Python kernel.
"""
from ._backend import BACKEND
from .checkers import (
    InequalityReport,
    WeightVector,
    amgm_weighted,
    check_alpha_interp,
    check_araki,
    check_bourin_fujii,
    check_ordered_fg,
    check_p1,
    check_p2,
    check_power_chain_m,
    check_rhs_order,
    check_thm_2x2,
    trace_chain,
)
from .lemmas import ArcDecomposition, IndexCycle, arc_parity, chain_phase_product, proof_expansion
from .sampling import sample_hermitian, sample_psd, sample_weights
from .search import SearchReport, conjecture_slack, reproduce_counterexample, run_search
from .spectral import (
    ScalarFunction,
    SpectralDecomposition,
    fractional_power,
    hermitian_eig,
    matmul,
    matrix_function,
    trace,
)

__version__ = "0.1.0"
