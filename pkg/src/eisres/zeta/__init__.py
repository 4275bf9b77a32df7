"""Partial zeta values: lattice L-series, the functional equation and an exact oracle."""

from .bernoulli import bernoulli_number, bernoulli_poly, hurwitz_negative
from .gamma import GammaPoleError, gamma_factor, reciprocal_gamma_factor
from .lattice_sum import TruncatedSum, lattice_character_sum, taper
from .series import (
    DivergenceError,
    F_oracle,
    F_special_value,
    SpecialValueResult,
    ZetaQuery,
    dual_orbit_reps,
    hecke_L,
    partial_zeta_F,
    special_value,
)
from .shintani import dedekind_zeta_value, shintani_coset_zeta, shintani_zeta

__all__ = [
    "DivergenceError",
    "F_oracle",
    "F_special_value",
    "GammaPoleError",
    "SpecialValueResult",
    "TruncatedSum",
    "ZetaQuery",
    "bernoulli_number",
    "bernoulli_poly",
    "dedekind_zeta_value",
    "dual_orbit_reps",
    "gamma_factor",
    "hecke_L",
    "hurwitz_negative",
    "lattice_character_sum",
    "partial_zeta_F",
    "reciprocal_gamma_factor",
    "shintani_coset_zeta",
    "shintani_zeta",
    "special_value",
    "taper",
]
