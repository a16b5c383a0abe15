"""Exact computations with toric monoids, diagonal invariant rings and stacky fans.

All arithmetic is over the integers and rationals; nothing is floating point.
"""
from .config import limits
from .errors import InputError, InternalInvariantBroken, ResourceLimitError, ToricStackError
from .fans import (
    StackyFan,
    chart,
    datum_at_cone,
    dg_beta,
    irrelevant_ideal,
    presentation,
    pushout_kernel_check,
    validate_stacky_fan,
)
from .invariants import (
    DiagonalAction,
    cst_reduce,
    exact_normal_form,
    freeness_oracle,
    invariant_monoid,
    msop_test,
    polynomiality,
    pseudo_reflection_generated,
)
from .lattice import AbelianGroup, IntegerMatrix, RationalCone, cokernel, hilbert_basis, smith_normal_form
from .monoids import (
    Datum,
    MonoidMorphism,
    ToricMonoid,
    admissible_resolution,
    face_quotient,
    factor_through_mfr,
    is_admissibly_qfr,
    is_close,
    is_exact,
    minimal_free_resolution,
    monoid_from_generators,
    qmfr_factorize,
    stalk_factorization,
    to_free,
)

__all__ = [
    "AbelianGroup", "Datum", "DiagonalAction", "InputError", "IntegerMatrix",
    "InternalInvariantBroken", "MonoidMorphism", "RationalCone", "ResourceLimitError",
    "StackyFan", "ToricMonoid", "ToricStackError", "admissible_resolution", "chart",
    "cokernel", "cst_reduce", "datum_at_cone", "dg_beta", "exact_normal_form",
    "face_quotient", "factor_through_mfr", "freeness_oracle", "hilbert_basis",
    "invariant_monoid", "irrelevant_ideal", "is_admissibly_qfr", "is_close", "is_exact",
    "limits", "minimal_free_resolution", "monoid_from_generators", "msop_test",
    "polynomiality", "presentation", "pseudo_reflection_generated", "pushout_kernel_check",
    "qmfr_factorize", "smith_normal_form", "stalk_factorization", "to_free",
    "validate_stacky_fan",
]
