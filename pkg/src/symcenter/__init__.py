"""Symmetry components of center varieties for planar polynomial systems.

Exact rational polynomial arithmetic, Groebner bases, ideal operations, the
Sibirsky (symmetry) ideal with its invariant monoid, and focus quantities of
systems ``x' = x - sum a_pq x^(p+1) y^q``, ``y' = -(y - sum b_qp x^q y^(p+1))``.
"""
from .focus import FocusQuantityList, focus_quantities, verify_structure
from .groebner import Budget, BudgetExceeded, GroebnerBasis, buchberger, divide, normal_form
from .ideal import (Ideal, RationalMap, certifies_prime, eliminate, ideal_equal, implicitize, intersect,
                    is_member, quotient, radical_member)
from .orders import DEGREVLEX, LEX, TermOrder, block, degrevlex, elimination_order, lex
from .poly import Polynomial, VarContext, parse, parse_list
from .sibirsky import (HilbertBasis, SystemSpec, degree_bound, dimension, enumerate_monoid, hilbert_basis,
                       kernel_check, sibirsky_basis, symmetry_ideal)

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "DEGREVLEX", "FocusQuantityList", "GroebnerBasis", "HilbertBasis", "Ideal",
    "LEX", "Polynomial", "RationalMap", "SystemSpec", "TermOrder", "VarContext", "block", "buchberger",
    "certifies_prime", "degree_bound", "degrevlex", "dimension", "divide", "eliminate", "elimination_order",
    "enumerate_monoid", "focus_quantities", "hilbert_basis", "ideal_equal", "implicitize", "intersect",
    "is_member", "kernel_check", "lex", "normal_form", "parse", "parse_list", "quotient", "radical_member",
    "sibirsky_basis", "symmetry_ideal", "verify_structure",
]
