"""Exterior calculus with analytic coefficients and the jet algebra."""

from .checks import (
    BatteryReport,
    cartan_residual,
    d_squared_residual,
    euler_identity_check,
    euler_vector_field,
    iota_squared_residual,
    nori_form,
    pullback_vanishing_residual,
    rho_vector_field,
    run_battery,
    sup_norm,
    vol_normalization,
    volume_form,
)
from .forms import DifferentialForm, FormDegreeError, VectorField
from .jets import JetSeries, JetSingularityError, jet_geometric_inverse, multi_indices
from .scalar import ONE, ZERO, Const, Coord, ScalarField, const, coord, exp, finite_difference_check

__all__ = [
    "BatteryReport",
    "Const",
    "Coord",
    "DifferentialForm",
    "FormDegreeError",
    "JetSeries",
    "JetSingularityError",
    "ONE",
    "ScalarField",
    "VectorField",
    "ZERO",
    "cartan_residual",
    "const",
    "coord",
    "d_squared_residual",
    "euler_identity_check",
    "euler_vector_field",
    "exp",
    "finite_difference_check",
    "iota_squared_residual",
    "jet_geometric_inverse",
    "multi_indices",
    "nori_form",
    "pullback_vanishing_residual",
    "rho_vector_field",
    "run_battery",
    "sup_norm",
    "vol_normalization",
    "volume_form",
]
