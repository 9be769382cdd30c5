"""Exact differential algebra for the sequence of ODEs (D + y)^n y = 0."""

from .diffalg import E, DiffPoly, ExpDiffPoly, Jet, reduce_mod, total_derivative, y
from .errors import DiffSeqError, VerificationFailure
from .integrals import check_linearisation, combine, first_integral, invariant, solution_jet
from .polyx import PolyX, RationalFunctionX
from .sequence import build_linear_system, generate_member, member
from .singularity import painleve_report, resonance_table
from .symmetry import check_symmetry, csg_certify, exp_symmetry, projective, prolong, scaling, translation

__all__ = [
    "DiffPoly", "ExpDiffPoly", "Jet", "E", "y", "reduce_mod", "total_derivative",
    "DiffSeqError", "VerificationFailure",
    "PolyX", "RationalFunctionX",
    "member", "generate_member", "build_linear_system",
    "prolong", "check_symmetry", "translation", "scaling", "projective", "exp_symmetry", "csg_certify",
    "painleve_report", "resonance_table",
    "solution_jet", "invariant", "first_integral", "combine", "check_linearisation",
]
