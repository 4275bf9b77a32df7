"""Level structures, cusps and their ideals."""

from __future__ import annotations

from .cusps import (
    Cusp,
    CuspIdeal,
    act,
    act_point,
    b1_generators,
    coinvariant_dimension,
    cusp_ideal,
    cusp_of,
    cusp_set,
    normalize,
    orbit_decomposition,
    project,
    project_normalized,
    random_b1_element,
    special_group,
    unit_residues,
)
from .level import LevelGroupElement, LevelGroupError, ResidueRing, RingTooLargeError

__all__ = [
    "Cusp",
    "CuspIdeal",
    "LevelGroupElement",
    "LevelGroupError",
    "ResidueRing",
    "RingTooLargeError",
    "act",
    "act_point",
    "b1_generators",
    "coinvariant_dimension",
    "cusp_ideal",
    "cusp_of",
    "cusp_set",
    "normalize",
    "orbit_decomposition",
    "project",
    "project_normalized",
    "random_b1_element",
    "special_group",
    "unit_residues",
]
