"""Exact lattice algebra: integer matrices, abelian groups, cones, Hilbert bases."""
from .cones import Face, RationalCone, dual_cone, extremal_rays, faces, is_face
from .groups import (
    AbelianGroup,
    GroupProjection,
    Subgroup,
    SubgroupReport,
    cokernel,
    intersect,
    intersect_all,
    quotient,
    span,
    subgroup_ops,
)
from .hilbert import hilbert_basis, is_in_monoid
from .matrix import IntegerMatrix, smith_normal_form

__all__ = [
    "AbelianGroup", "Face", "GroupProjection", "IntegerMatrix", "RationalCone", "Subgroup",
    "SubgroupReport", "cokernel", "dual_cone", "extremal_rays", "faces", "hilbert_basis",
    "intersect", "intersect_all", "is_face", "is_in_monoid", "quotient", "smith_normal_form",
    "span", "subgroup_ops",
]
