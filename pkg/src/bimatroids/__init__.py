"""Bimatroids (linking systems), matroid morphisms and exact log-concavity checks."""

from .bimatroid import (Bimatroid, RelativeRankTable, extended_matroid, from_extended_matroid,
                        from_rank_table, from_vertical_rectangles, laplace_property, rank_table,
                        rectangle_counts, regular_rectangles, transpose, validate_bimatroid,
                        validate_rank_axioms, validate_rectangle_axioms)
from .construct import bond, from_map, from_matrix, from_relation, identity, zero
from .errors import (BimatroidError, BudgetExceededError, DimensionError, GroundMismatchError,
                     InternalConsistencyError, PreconditionError, SchemaError, TheoremViolation)
from .exactnum import GF, QQ, FieldMatrix, det, inertia, rank
from .lorentzian import (bivariate_ulc_equivalence, is_log_concave, is_lorentzian, is_m_convex,
                         is_strictly_lorentzian, is_ultra_log_concave, is_unimodal,
                         no_internal_zeros)
from .matroid import Matroid, Verdict, uniform, validate_bases
from .morphism import MatroidMorphism, bases_of_morphism, is_quotient, pullback, tilde_matroid
from .polynomial import MultiPoly, basis_generating_poly, regular_minor_poly, weak_basis_poly
from .product import cauchy_binet_check, check_category_laws, frenk_extended, product
from .verify import (TheoremReport, check_mason, check_theorem_A, check_theorem_B,
                     check_theorem_C, check_thmC_pipeline, check_weak_basis_poly_lorentzian)

__version__ = "0.1.0"
