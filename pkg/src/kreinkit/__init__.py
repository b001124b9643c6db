"""Finite-model toolkit for resolvent formulas of self-adjoint extensions.

The package builds a finite-dimensional stand-in for a symmetric operator
with equal deficiency indices: a Hermitian reference matrix restricted to a
(non-dense) domain, its deficiency subspaces, and the unitary parametrization
of all self-adjoint extensions.  On top of that it implements and
cross-checks the resolvent-difference operator P(z), Weyl-Titchmarsh
operators, the angle operator of an extension pair, Krein's resolvent
formula, the Herglotz positivity bound, and the fractional-linear laws
relating the M-operators of two extensions.  A closed-form half-line
Laplacian instance with a quadrature cross-check lives in `halfline`, and a
scenario-driven CLI in `cli`.
"""

from .errors import (
    BadDimensions,
    BranchCut,
    ExhaustedCandidates,
    GridTooCoarse,
    KreinKitError,
    NotAnExtension,
    NotHermitian,
    NotInvariant,
    NotRelativelyPrime,
    NotUnitary,
    NumericalFailure,
    RankDeficientInput,
    RealParameter,
    SingularDenominator,
    SingularFunctionValue,
    SingularMatrix,
    SpectralParameter,
    UnitEigenvalue,
)
from .extension import (
    Extension,
    ExtensionParameter,
    RestrictionModel,
    build_model,
    cayley,
    check_cayley_geometry,
    common_plus_subspace,
    extension_from_parameter,
    inverse_cayley,
    is_relatively_prime,
    parameter_of,
    restricted_cayley_product,
)
from .halfline import (
    HalflineScenario,
    QuadratureGrid,
    dirichlet_resolvent_quadrature,
    m1_halfline,
    m2_halfline,
    p12_halfline,
    resolvent_coefficient,
    sqrt_upper,
    verify_halfline,
)
from .krein import (
    AngleOperator,
    PSample,
    WeylSample,
    angle_operator,
    choose_third_extension,
    general_lft_check,
    herglotz_check,
    herglotz_lower_bound,
    krein_resolvent,
    lft_m1_to_m2,
    lft_m1_to_m2_angle,
    lft_to_reference,
    p_at_i_via_cayley,
    p_function,
    p_inverse_via_m,
    p_translation_check,
    tan_alpha,
    vonneumann_link_check,
    weyl_operator,
)
from .numerics import (
    SpectralDecomposition,
    Subspace,
    apply_function_normal,
    hermitian_eig,
    null_space,
    orthonormal_range,
    projector,
    solve_linear,
    unitary_eig,
)

__version__ = "0.1.0"

__all__ = [
    "AngleOperator",
    "BadDimensions",
    "BranchCut",
    "ExhaustedCandidates",
    "Extension",
    "ExtensionParameter",
    "GridTooCoarse",
    "HalflineScenario",
    "KreinKitError",
    "NotAnExtension",
    "NotHermitian",
    "NotInvariant",
    "NotRelativelyPrime",
    "NotUnitary",
    "NumericalFailure",
    "PSample",
    "QuadratureGrid",
    "RankDeficientInput",
    "RealParameter",
    "RestrictionModel",
    "SingularDenominator",
    "SingularFunctionValue",
    "SingularMatrix",
    "SpectralDecomposition",
    "SpectralParameter",
    "Subspace",
    "UnitEigenvalue",
    "WeylSample",
    "angle_operator",
    "apply_function_normal",
    "build_model",
    "cayley",
    "check_cayley_geometry",
    "choose_third_extension",
    "common_plus_subspace",
    "dirichlet_resolvent_quadrature",
    "extension_from_parameter",
    "general_lft_check",
    "herglotz_check",
    "herglotz_lower_bound",
    "hermitian_eig",
    "inverse_cayley",
    "is_relatively_prime",
    "krein_resolvent",
    "lft_m1_to_m2",
    "lft_m1_to_m2_angle",
    "lft_to_reference",
    "m1_halfline",
    "m2_halfline",
    "null_space",
    "orthonormal_range",
    "p12_halfline",
    "p_at_i_via_cayley",
    "p_function",
    "p_inverse_via_m",
    "p_translation_check",
    "parameter_of",
    "projector",
    "resolvent_coefficient",
    "restricted_cayley_product",
    "solve_linear",
    "sqrt_upper",
    "tan_alpha",
    "unitary_eig",
    "verify_halfline",
    "vonneumann_link_check",
    "weyl_operator",
]
