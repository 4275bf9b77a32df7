"""Exact arithmetic for totally real fields, ideals, units and orbit enumeration."""

from .field import FieldElement, FieldError, SignCharacter, TotallyRealField, embed, norm_trace
from .ideal import FractionalIdeal, InvalidIdealError, trace_dual
from .units import RayUnitGroup, UnsupportedDegreeError, ray_units, totally_positive_generator

__all__ = [
    "FieldElement",
    "FieldError",
    "FractionalIdeal",
    "InvalidIdealError",
    "RayUnitGroup",
    "SignCharacter",
    "TotallyRealField",
    "UnsupportedDegreeError",
    "embed",
    "norm_trace",
    "ray_units",
    "totally_positive_generator",
    "trace_dual",
]

from .orbits import OrbitReps, enumerate_orbit_reps, orbit_representatives  # noqa: E402

__all__ += ["OrbitReps", "enumerate_orbit_reps", "orbit_representatives"]
