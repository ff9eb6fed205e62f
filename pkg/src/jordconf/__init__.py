"""Exact symbolic verification of the lattice deformations of the plane
conformal algebras: normal ordering, Hopf axioms, Yang-Baxter equations,
difference-operator realizations, twist maps, and the family duality."""

from .poly import ParamPoly, Rational, TruncationOrder
from .uea import (DEFAULT_ORDER, GENERATORS, FamilyConfig, PbwElement,
                  casimir, centrality_check, commutator_table, diamond_check,
                  normal_order, pbw_mul)
from .hopf import (TensorElement, WedgeElement, check_coassociativity,
                   check_homomorphism, cocommutator_from_r, coproduct,
                   coproduct_extend, counit_and_antipode, schouten_cybe,
                   universal_R_conjugation)
from .matrixrep import PolyMatrix, build_R, fundamental_rep, matrix_exp_nilpotent, qybe_check
from .ore import (OreElement, apply_operator, casimir_operator,
                  check_realization_homomorphism, classical_limit, ore_mul,
                  realization, symmetry_check)
from .twist import twist_map, twist_realization
from .structure import apply_duality, classify, nullplane_basis, verify_hopf_subalgebras

__version__ = "0.1.0"
