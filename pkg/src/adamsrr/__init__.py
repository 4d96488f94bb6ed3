"""Exact Riemann-Roch computations for oriented theories on products of projective spaces."""

from .classes import (
    Transformation,
    adams,
    adams_op,
    additive_extension,
    chern_character,
    chern_op,
    multiplicative_extension,
    parse_transformation,
    theta,
    theta_literal,
)
from .coeff import Coefficient, Integrality, integrality_profile, invert_coefficient
from .model import (
    CH,
    K,
    LineClass,
    O,
    Space,
    TheoryRing,
    TruncatedPolynomial,
    VirtualBundle,
    c1,
    immersion,
    projection,
    pullback,
    pushforward,
    to_point,
)
from .report import VerificationReport
from .rr import (
    associated_series,
    chi_table,
    modified_pushforward,
    verify_cube,
    verify_immersion_rr,
    verify_projective_rr,
    verify_unique_k_morphism,
)
from .series import (
    UnivariateSeries,
    builtin_series,
    check_group_law,
    check_multiplicativity,
    group_law,
)

__version__ = "0.1.0"
