"""Deciding descent of equivariant sheaves and complexes to good quotients by diagonalizable groups."""
from .complexes import (check_complex_descent, descend_complex, descendable_replacement, derived_fiber,
                        pullback_complex, pushforward_complex, quasi_iso_check)
from .descent import BoundLimited, PreconditionError, Verdict, check_sheaf_descent, descend_sheaf
from .graded import ChainComplex, FPModule
from .grading import EquivariantSetup, GradingGroup
from .invariants import canonical_map_verdict, invariant_monoid_basis, pullback, pushforward, quotient_of
from .orbits import all_strata, closed_strata
from .polyring import Poly, parse_poly
from .problem import Problem, load_problem, parse_problem

__all__ = [
    "BoundLimited", "ChainComplex", "EquivariantSetup", "FPModule", "GradingGroup", "Poly",
    "PreconditionError", "Problem", "Verdict", "all_strata", "canonical_map_verdict",
    "check_complex_descent", "check_sheaf_descent", "closed_strata", "derived_fiber", "descend_complex",
    "descend_sheaf", "descendable_replacement", "invariant_monoid_basis", "load_problem", "parse_poly",
    "parse_problem", "pullback", "pullback_complex", "pushforward", "pushforward_complex",
    "quasi_iso_check", "quotient_of",
]
