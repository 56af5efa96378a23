"""Noncompact/compact symmetric space duality: embeddings, unit lattices and checks."""

from ._dualspace import (
    DomainError,
    NumericalError,
    Space,
    __version__,
    b_angle,
    b_embed,
    base_point,
    cut_radius,
    embed,
    h_coordinate,
    lattice_generators,
    log_compact,
    log_noncompact,
    naive_cut_radius,
    point_distance,
    space_like,
    su3_lattice_generators,
    transitivity_element,
    verify,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "Space",
    "__version__",
    "b_angle",
    "b_embed",
    "base_point",
    "cut_radius",
    "embed",
    "h_coordinate",
    "lattice_generators",
    "log_compact",
    "log_noncompact",
    "naive_cut_radius",
    "point_distance",
    "space_like",
    "su3_lattice_generators",
    "transitivity_element",
    "verify",
]
