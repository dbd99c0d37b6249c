"""Graded twisted Poincare duality for Poisson and Hochschild (co)homology, with Hopf algebroid checks."""

__version__ = "0.1.0"

from .poly import Poly, parse_poly, format_poly, PolySyntaxError
from .grading import SpaceDescriptor, graded_slice, count_monomials
from .linalg import SparseMatrix, rank, rank_kernel
from .poisson import (
    PoissonStructure,
    jacobi_check,
    schouten_bracket,
    hamiltonian_field,
    modular_field,
    to_lie_rinehart,
    huebschmann_right_action,
    twist_module,
)
from .homology import BettiTable, DualityReport, cohomology_table, homology_table, duality_report
from .hochschild import hh_cohomology_table, hh_homology_table, vdb_duality_report

__all__ = [
    "Poly", "parse_poly", "format_poly", "PolySyntaxError",
    "SpaceDescriptor", "graded_slice", "count_monomials",
    "SparseMatrix", "rank", "rank_kernel",
    "PoissonStructure", "jacobi_check", "schouten_bracket", "hamiltonian_field", "modular_field",
    "to_lie_rinehart", "huebschmann_right_action", "twist_module",
    "BettiTable", "DualityReport", "cohomology_table", "homology_table", "duality_report",
    "hh_cohomology_table", "hh_homology_table", "vdb_duality_report",
]
