"""Polylogarithm and Eisenstein currents, their pushforward and the cusp residues."""

from .context import InvalidDistributionError, TorsionDistribution, TorusContext, TorusPoint, q_transport
from .current import (
    eis_current,
    fourier_ode_residual,
    nu_rho,
    nu_rho_form,
    polylog_current,
    polylog_current_naive,
)
from .pushforward import (
    GaussianSingularityError,
    composite_gauss_legendre,
    gaussian_extrapolation,
    gaussian_factor,
    gaussian_factor_regularized,
    gaussian_moment,
    pushforward_closed_form,
    pushforward_quadrature,
    quadrature_order_check,
)

__all__ = [
    "InvalidDistributionError",
    "TorsionDistribution",
    "TorusContext",
    "TorusPoint",
    "eis_current",
    "fourier_ode_residual",
    "nu_rho",
    "nu_rho_form",
    "polylog_current",
    "polylog_current_naive",
    "q_transport",
    "GaussianSingularityError",
    "composite_gauss_legendre",
    "gaussian_extrapolation",
    "gaussian_factor",
    "gaussian_factor_regularized",
    "gaussian_moment",
    "pushforward_closed_form",
    "pushforward_quadrature",
    "quadrature_order_check",
    "ResidueResult",
    "parity_vanishing",
    "projected_distribution",
    "residue_main",
    "residue_normalized",
    "residue_of_degree",
]


def __getattr__(name: str):
    # residue depends on the cusps package, which imports this package's context
    if name in ("ResidueResult", "parity_vanishing", "projected_distribution", "residue_main", "residue_normalized", "residue_of_degree"):
        from . import residue

        return getattr(residue, name)
    raise AttributeError(name)
