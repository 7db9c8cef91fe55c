"""Exact computations in finite-dimensional Leibniz algebras over Q, Q(i) and GF(p)."""

from .algebra import (Element, LeibnizAlgebra, LeibnizIdentityError, NotClosedError, bracket,
                      ideal_closure, is_ideal, is_lie, is_nilpotent, is_solvable, is_subalgebra,
                      leibniz_kernel, left_mult_matrix, normalizer, quotient, restrict_algebra,
                      series, subalgebra_closure, validate_leibniz)
from .algebra_file import AlgebraFileError, dumps_algebra, load_algebra, loads_algebra, save_algebra, transplant
from .classify import (MinNonCertificate, TheoremFailure, construct_chain, construct_cyclic,
                       construct_standard, verify_theorem)
from .fields import GF, QQ, QQI, field_from_spec
from .linalg import Matrix, Subspace, span_rref
from .poly import Polynomial, char_poly, poly_irreducible
from .structure import core_of, find_cartan, is_cyclic, is_nilradical_codim1

__all__ = [
    "AlgebraFileError", "Element", "GF", "LeibnizAlgebra", "LeibnizIdentityError", "Matrix",
    "MinNonCertificate", "NotClosedError", "Polynomial", "QQ", "QQI", "Subspace", "TheoremFailure",
    "bracket", "char_poly", "construct_chain", "construct_cyclic", "construct_standard", "core_of",
    "dumps_algebra", "field_from_spec", "find_cartan", "ideal_closure", "is_cyclic", "is_ideal",
    "is_lie", "is_nilpotent", "is_nilradical_codim1", "is_solvable", "is_subalgebra",
    "leibniz_kernel", "left_mult_matrix", "load_algebra", "loads_algebra", "normalizer",
    "poly_irreducible", "quotient", "restrict_algebra", "save_algebra", "series", "span_rref",
    "subalgebra_closure", "transplant", "validate_leibniz", "verify_theorem",
]
