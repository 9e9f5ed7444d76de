"""Cohomology of stable spherical bundles on K3 surfaces of Picard rank one."""

from .brillnoether import WeakBNReport, h0_bound_check, negative_rank_wall_check, weak_bn
from .errors import NeedsFullLocalReduction, SphcohError
from .filtration import Factor, Shape, height, height2_shortcut
from .mukai import MukaiVector, Surface, euler_char, is_spherical, normalize_input, pairing
from .rank2 import Rank2Wall, chain_class, label_of, stable_pair
from .reduction import CohomologyResult, cohomology
from .walls import WallKey, largest_actual_wall, numerical_wall

__all__ = [
    "CohomologyResult",
    "Factor",
    "MukaiVector",
    "NeedsFullLocalReduction",
    "Rank2Wall",
    "Shape",
    "SphcohError",
    "Surface",
    "WallKey",
    "WeakBNReport",
    "chain_class",
    "cohomology",
    "euler_char",
    "h0_bound_check",
    "height",
    "height2_shortcut",
    "is_spherical",
    "label_of",
    "largest_actual_wall",
    "negative_rank_wall_check",
    "normalize_input",
    "numerical_wall",
    "pairing",
    "stable_pair",
    "weak_bn",
]
