"""Apolar algebras of polynomials over QQ and prime fields.

Dense linear algebra over GF(p) runs through numba kernels; set
``APOLAR_NUMBA=0`` to use the pure numpy path instead.
"""
from .apolar import (
    ApolarReport,
    UnobstructednessReport,
    apolar_ideal,
    hilbert_function,
    hilbert_vector,
    is_complete_intersection,
    tangent_space_dimension,
    unobstructedness_report,
)
from .errors import (
    ApolarError,
    BudgetExceededError,
    ParseError,
    PreconditionError,
    VerificationError,
)
from .field import QQ, Field
from .groebner import buchberger, normal_form, support_and_local_lengths
from .hilbert import (
    HilbertProfile,
    check_decomposition,
    decomposition_search,
    is_o_sequence,
    macaulay_bound,
    symmetric_decomposition,
)
from .ideal import TruncatedIdeal
from .parse import parse_operator, parse_polynomial
from .poly import Operator, Polynomial, contract, pairing
from .rays import (
    RayFamily,
    build_ray_family,
    fiber_structure_check,
    flatness_probe,
    ray_decomposition,
    ray_order,
    ray_sum,
    ray_sum_annihilator_check,
    stretched_degeneration_check,
    tangent_preserving_check,
)
from .report import AnalysisReport, analyze
from .secant import catalecticant_rank, divided_power, is_m_saturated, sigma4_membership
from .standard_form import check_standard_form, clean_top_tail, split_off_squares, top_degree_twist
from .substitution import Substitution, apply_substitution, dual_substitution, invert_substitution

__version__ = "0.1.0"
