"""Homology of superelliptic covers of the disk and the braid action on it."""

from .basis import (
    IntersectionForm,
    SurfaceBasis,
    betti1,
    boundary_components,
    genus,
    intersection_form,
)
from .twists import (
    CONSTRUCTIONS,
    ORDERS,
    RelationError,
    SurfaceRep,
    build_rep,
    convention_audit,
    root_check,
    transvection,
    twist_matrix,
    twist_matrix_A,
    twist_matrix_B,
    twist_to_json,
)

__all__ = [
    "CONSTRUCTIONS",
    "IntersectionForm",
    "ORDERS",
    "RelationError",
    "SurfaceBasis",
    "SurfaceRep",
    "betti1",
    "boundary_components",
    "build_rep",
    "convention_audit",
    "genus",
    "intersection_form",
    "root_check",
    "transvection",
    "twist_matrix",
    "twist_matrix_A",
    "twist_matrix_B",
    "twist_to_json",
]
