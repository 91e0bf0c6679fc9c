"""Generalized Hasse-Witt invariants of cyclic admissible covers of degenerate curves."""

from .anabelian import TypeInvariants, invariants_of, recover_type
from .assembler import (
    AdmissibleCoverData,
    build_quasi_tree_divisors,
    build_three_point_divisors,
    check_decomposition_theorem,
    search_max,
    total_gamma,
)
from .curvebackend import RamifiedP1Cover, gamma, theta_exists
from .errors import BudgetExhausted, InputError, OracleMismatch
from .fields import FiniteField, gf
from .graphcover import CoverSpec, eigenspace_dims
from .padic import DigitContext, MarkedDivisor
from .quasitree import minimal_quasi_tree
from .semigraph import CurveModel, SemiGraph

__all__ = [
    "AdmissibleCoverData",
    "BudgetExhausted",
    "CoverSpec",
    "CurveModel",
    "DigitContext",
    "FiniteField",
    "InputError",
    "MarkedDivisor",
    "OracleMismatch",
    "RamifiedP1Cover",
    "SemiGraph",
    "TypeInvariants",
    "build_quasi_tree_divisors",
    "build_three_point_divisors",
    "check_decomposition_theorem",
    "eigenspace_dims",
    "gamma",
    "gf",
    "invariants_of",
    "minimal_quasi_tree",
    "recover_type",
    "search_max",
    "theta_exists",
    "total_gamma",
]
