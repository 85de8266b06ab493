"""Resonances and twisted zeta functions of Schottky surfaces."""

from ._core import (
    HypzetaError,
    SchottkyGroup,
    count_homology,
    count_zeros,
    cover_resonances,
    cylinder,
    find_zeros,
    hausdorff_dimension,
    largest_real_zero,
    load_group,
    parse_group,
    phi,
    pressure,
    primitive_classes,
    three_funnel,
    validate,
    zeta,
)

__all__ = [
    "HypzetaError",
    "SchottkyGroup",
    "count_homology",
    "count_zeros",
    "cover_resonances",
    "cylinder",
    "find_zeros",
    "hausdorff_dimension",
    "largest_real_zero",
    "load_group",
    "parse_group",
    "phi",
    "pressure",
    "primitive_classes",
    "three_funnel",
    "validate",
    "zeta",
]
