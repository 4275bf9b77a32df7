from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisres.field import FractionalIdeal
from eisres.forms import (
    DifferentialForm,
    FormDegreeError,
    JetSeries,
    JetSingularityError,
    cartan_residual,
    coord,
    d_squared_residual,
    euler_identity_check,
    euler_vector_field,
    exp,
    finite_difference_check,
    iota_squared_residual,
    jet_geometric_inverse,
    multi_indices,
    pullback_vanishing_residual,
    run_battery,
    vol_normalization,
    volume_form,
)

coef = st.floats(min_value=-2, max_value=2, allow_nan=False)


def test_multi_indices():
    assert multi_indices(2, 2) == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0))
    assert len(multi_indices(3, 4)) == 35  # C(4 + 3, 3)
    assert multi_indices(2, 3, degree=3) == ((0, 3), (1, 2), (2, 1), (3, 0))


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.2, max_value=3), coef, coef)
def test_jet_inverse(c0, a, b):
    x = JetSeries.linear([a, b], 5, constant=c0)
    assert (x * x.inverse()).allclose(JetSeries.constant(1, 2, 5), atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(coef, coef, coef)
def test_jet_exp_is_homomorphism(c0, a, b):
    x = JetSeries.linear([a, 0], 6, constant=c0)
    y = JetSeries.linear([0, b], 6)
    assert (x + y).exp().allclose(x.exp() * y.exp(), atol=1e-9)


def test_jet_exp_coefficients():
    e = JetSeries.generator(0, 1, 6).exp()
    # [x^j] e^x = 1/j!
    assert [e.coefficient((j,)).real for j in range(4)] == pytest.approx([1, 1, 0.5, 1 / 6])


def test_geometric_inverse():
    B = JetSeries.linear([1.0, 1.0], 4)
    inv = jet_geometric_inverse(2.0, B, 1)  # (2 - e1 - e2)^{-2}
    assert inv.constant_term == pytest.approx(0.25)
    assert inv.coefficient((1, 0)) == pytest.approx(0.25)  # 2 / 2^3
    check = inv * (JetSeries.constant(2.0, 2, 4) - B) ** 2
    assert check.allclose(JetSeries.constant(1, 2, 4))
    with pytest.raises(JetSingularityError):
        jet_geometric_inverse(0.0, B, 1)


def test_scalar_field_derivatives():
    f = exp(coord(0) * coord(1))
    assert f.evaluate([1.0, 2.0]) == pytest.approx(np.exp(2.0))
    assert finite_difference_check(f, [0.3, 0.4]) < 1e-8


def test_exterior_calculus_identities():
    w = DifferentialForm(3, 1, {(0,): coord(1), (2,): exp(coord(0))})
    p = [0.1, 0.2, 0.3]
    assert w.d().degree == 2
    assert d_squared_residual(w, p) == 0.0
    X = euler_vector_field(3)
    assert iota_squared_residual(DifferentialForm(3, 2, {(0, 1): coord(2)}), X, p) == 0.0
    assert cartan_residual(w, X, p) < 1e-8


def test_d_of_coordinate_function():
    f = DifferentialForm.function(3, coord(0) * coord(1))
    df = f.d()
    vals = df.evaluate([2.0, 3.0, 5.0])
    assert vals[(0,)] == pytest.approx(3.0) and vals[(1,)] == pytest.approx(2.0)


def test_degree_errors():
    w = DifferentialForm(3, 1, {(0,): coord(1)})
    with pytest.raises(FormDegreeError):
        w + DifferentialForm(3, 2)
    with pytest.raises(FormDegreeError):
        DifferentialForm.function(3, coord(0)).contract(euler_vector_field(3))
    with pytest.raises(FormDegreeError):
        DifferentialForm(2, 1, {(0, 1): coord(0)})


def test_euler_identity_and_pullback():
    assert euler_identity_check([0.3, -0.7], [1.2, 0.8]) < 1e-10
    for m in range(2):
        assert pullback_vanishing_residual([0.3, -0.7, 0.2], [1.0, 1.1, 0.9], m) < 1e-10


def test_battery_seeded():
    rep = run_battery(seed=1, cases=5)
    assert rep.cases == 5
    assert rep.worst <= 1e-8
    assert run_battery(seed=1, cases=5) == rep


def test_volume_normalization(Q2, Q5):
    assert volume_form(4, 2).degree == 2
    for F in (Q2, Q5):
        for ideal in (FractionalIdeal.unit(F), FractionalIdeal.principal(F, 3), F.different):
            assert vol_normalization(ideal) == pytest.approx(1.0, abs=1e-10)
    assert vol_normalization(FractionalIdeal.unit(Q2) * Fraction(1, 2)) == pytest.approx(1.0, abs=1e-10)
