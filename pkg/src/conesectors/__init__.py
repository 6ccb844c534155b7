"""Cone-shaped lattice regions, their operad of orthogonal inclusions, and
toric-code superselection sectors computed as exact Pauli-conjugation data."""

from .geometry import (
    ConeSpec,
    LatticeWindow,
    cone,
    contains_point,
    closure_contains,
    lattice_points,
)
from .witnesses import (
    Tri,
    Disjointness,
    complement_witness,
    shrink_witness,
    eventual_containment,
    minimal_integer_lambda,
    enlargement_witness,
    separation_witness,
    disjoint,
    cone_subset,
)

__version__ = "0.1.0"

__all__ = [
    "ConeSpec",
    "LatticeWindow",
    "cone",
    "contains_point",
    "closure_contains",
    "lattice_points",
    "Tri",
    "Disjointness",
    "complement_witness",
    "shrink_witness",
    "eventual_containment",
    "minimal_integer_lambda",
    "enlargement_witness",
    "separation_witness",
    "disjoint",
    "cone_subset",
    "__version__",
]
