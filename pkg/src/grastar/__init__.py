"""Star products on complex Grassmann manifolds.

The package computes the deformed (star) product of functions on the
Grassmannian G_{p,q}(C) obtained by projecting the Wick product on the
space of full-rank (p+q) x p complex matrices, together with all the
symmetric-group coefficients that enter the closed formula, and provides
desk-scale verification of the product's axioms.
"""

from grastar.errors import (
    ConvergenceError,
    GrastarError,
    PoleError,
    RangeError,
)
from grastar.partitions import (
    ConjClass,
    Frame,
    Permutation,
    class_size,
    conj_classes_of,
    cycle_type,
    dim_gl,
    dim_symmetric,
    min_transpositions,
    partitions_of,
)
from grastar.characters import CharTable, character, character_table
from grastar.center import (
    CentralElement,
    LambdaSeries,
    RationalPoly,
    s_coeffs,
    t_from_characters,
    t_poly,
)
from grastar.geometry import (
    FunctionExpr,
    PointZ,
    SpaceConfig,
    eval_function,
    level_representative,
    poisson_bracket,
    sample_point,
    wick_product,
)
from grastar.star import (
    associativity_residuals,
    coefficient_operator,
    projective_star_eval,
    star_eval,
    verify_suite,
)

__all__ = [
    "CentralElement",
    "CharTable",
    "FunctionExpr",
    "LambdaSeries",
    "PointZ",
    "RationalPoly",
    "SpaceConfig",
    "associativity_residuals",
    "coefficient_operator",
    "eval_function",
    "level_representative",
    "poisson_bracket",
    "projective_star_eval",
    "s_coeffs",
    "sample_point",
    "star_eval",
    "t_from_characters",
    "t_poly",
    "verify_suite",
    "wick_product",
    "ConjClass",
    "ConvergenceError",
    "Frame",
    "GrastarError",
    "Permutation",
    "PoleError",
    "RangeError",
    "character",
    "character_table",
    "class_size",
    "conj_classes_of",
    "cycle_type",
    "dim_gl",
    "dim_symmetric",
    "min_transpositions",
    "partitions_of",
]
