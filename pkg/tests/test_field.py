from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisres.field import (
    FieldError,
    FractionalIdeal,
    InvalidIdealError,
    SignCharacter,
    TotallyRealField,
    UnsupportedDegreeError,
    embed,
    enumerate_orbit_reps,
    norm_trace,
    orbit_representatives,
    ray_units,
    totally_positive_generator,
    trace_dual,
)

small = st.integers(min_value=-20, max_value=20)


def test_discriminant_and_different(Q, Q2, Q5):
    # disc Q(sqrt d) is d for d = 1 mod 4 and 4d otherwise
    assert Q.discriminant == 1
    assert Q2.discriminant == 8
    assert Q5.discriminant == 5
    assert TotallyRealField([1, 0, -3]).discriminant == 12
    for F in (Q, Q2, Q5):
        assert F.different.norm == abs(F.discriminant)


def test_golden_ratio_basis(Q5):
    w = Q5.gen
    assert w * w == w + 1
    assert Q5.fundamental_units[0] == w


def test_fundamental_units(Q2):
    (u,) = Q2.fundamental_units
    assert u == Q2.element([1, 1])
    assert u.norm() == -1


def test_invalid_polynomials():
    with pytest.raises(FieldError):
        TotallyRealField([1, 0, 2])  # x^2 + 2 has complex roots
    with pytest.raises(FieldError):
        TotallyRealField([2, 0, -1])
    with pytest.raises(FieldError):
        TotallyRealField([1, 0, -4])
    with pytest.raises(FieldError):
        TotallyRealField([1, 0, -2], precision=5)


def test_cubic_needs_units():
    F = TotallyRealField([1, -1, -2, 1])
    assert F.discriminant == 49
    with pytest.raises(UnsupportedDegreeError):
        _ = F.fundamental_units


def test_arithmetic(Q2):
    w = Q2.gen
    assert w * w == Q2(2)
    assert (w + 1).inverse() == w - 1
    assert norm_trace(Q2, w + 3) == (Fraction(7), Fraction(6))
    e = embed(Q2, w)
    assert sorted(float(x) for x in e) == pytest.approx([-2**0.5, 2**0.5])
    with pytest.raises(ZeroDivisionError):
        Q2.zero.inverse()


@settings(max_examples=60, deadline=None)
@given(small, small, small, small)
def test_norm_is_multiplicative(a, b, c, d):
    from eisres.cli.config import load_field

    F = load_field("Q(sqrt2)")
    x, y = F.element([a, b]), F.element([c, d])
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_embeddings_match_mpmath(a, b):
    from eisres.cli.config import load_field

    F = load_field("Q(sqrt5)")
    x = F.element([a, b])
    vals = sorted(embed(F, x))
    with mpmath.workdps(60):
        phi = (1 + mpmath.sqrt(5)) / 2
        expect = sorted([a + b * phi, a + b * (1 - phi)])
        assert all(abs(u - v) < mpmath.mpf(10) ** -40 for u, v in zip(vals, expect))


def test_ideals(Q2):
    three = FractionalIdeal.principal(Q2, 3)
    assert three.norm == 9
    P = FractionalIdeal.from_generators(Q2, [Q2.gen])
    assert P.norm == 2
    assert P.contains(Q2(2)) and not P.contains(Q2(1))
    with pytest.raises(InvalidIdealError):
        FractionalIdeal.from_generators(Q2, [Q2.zero])


def test_trace_dual_is_inverse_different(Q2, Q5):
    for F in (Q2, Q5):
        O = FractionalIdeal.unit(F)
        assert O.trace_dual() == F.different.inverse()
        three = FractionalIdeal.principal(F, 3)
        assert trace_dual(F, three) == three.inverse() * F.different.inverse()
        for rho in O.trace_dual().basis_elements():
            for x in O.basis_elements():
                assert (rho * x).trace().denominator == 1


def test_sign_characters():
    assert SignCharacter.for_weight(2, 2) == SignCharacter.trivial(2)
    assert SignCharacter.for_weight(2, 3) == SignCharacter((-1, -1))
    assert SignCharacter.trivial(2).size == 0
    assert SignCharacter((-1, 1)).size == 1


def test_ray_units(Q2, Q5):
    u3 = ray_units(Q2, 3)
    # (3 + 2 sqrt2)^k = 1 mod 3 first at k = 4
    assert u3.generator == Q2.element([3, 2]) ** 4 == Q2.element([577, 408])
    assert u3.exponent == 4
    assert u3.generator.is_totally_positive()
    assert ray_units(Q2, 1).generator == Q2.element([3, 2])
    assert ray_units(Q5, 1).generator == Q5.element([1, 1])
    assert ray_units(Q5, 3).generator == Q5.element([1, 1]) ** 4
    assert totally_positive_generator(Q2) == Q2.element([3, 2])


def test_orbit_representatives(Q2):
    O = FractionalIdeal.unit(Q2)
    units = ray_units(Q2, 1)
    reps = orbit_representatives(Q2, O, units, 50.0)
    assert len(reps.coords) == len(enumerate_orbit_reps(Q2, O, units, 50.0))
    assert max(abs(reps.norms)) <= 50.0 + 1e-9
    # elements of norm +-1 up to totally positive units: 1, -1, 1+sqrt2, -(1+sqrt2)
    assert sum(1 for v in reps.norms if abs(abs(v) - 1) < 1e-9) == 4
    # each rep is unique up to the unit: norms of +-2 come from +-sqrt2 and +-(2+sqrt2)
    assert sum(1 for v in reps.norms if abs(abs(v) - 2) < 1e-9) == 4
