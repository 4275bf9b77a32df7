from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisres.field import FractionalIdeal, SignCharacter, TotallyRealField
from eisres.zeta import (
    F_oracle,
    F_special_value,
    GammaPoleError,
    ZetaQuery,
    bernoulli_number,
    bernoulli_poly,
    dedekind_zeta_value,
    gamma_factor,
    hurwitz_negative,
    reciprocal_gamma_factor,
    shintani_coset_zeta,
    shintani_zeta,
    special_value,
    taper,
)


def kronecker(D: int, a: int) -> int:
    """Quadratic character of Q(sqrt D) for the few discriminants used here."""
    a %= D
    if D == 8:
        return {1: 1, 7: 1, 3: -1, 5: -1}.get(a, 0)
    if D == 12:
        return {1: 1, 11: 1, 5: -1, 7: -1}.get(a, 0)
    # odd prime D: Euler's criterion
    if a == 0:
        return 0
    return 1 if pow(a, (D - 1) // 2, D) == 1 else -1


def generalized_bernoulli(k: int, D: int) -> Fraction:
    """B_{k,χ} = D^{k-1} Σ_{a=1}^{D} χ(a) B_k(a/D)."""
    return D ** (k - 1) * sum(kronecker(D, a) * bernoulli_poly(k, Fraction(a, D)) for a in range(1, D + 1))


def dedekind_oracle(D: int, k: int) -> Fraction:
    """ζ_F(1-k) = ζ(1-k) L(1-k, χ_D) = B_k B_{k,χ} / k^2 for even k."""
    return bernoulli_number(k) * generalized_bernoulli(k, D) / k**2


def test_bernoulli_values():
    assert [bernoulli_number(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli_poly(2, Fraction(1, 3)) == Fraction(-1, 18)
    for n in range(8):
        assert bernoulli_poly(n, 0) == bernoulli_number(n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_bernoulli_reflection(n, x):
    assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
@pytest.mark.parametrize("a", [Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)])
def test_hurwitz_against_mpmath(k, a):
    assert float(hurwitz_negative(k, a)) == pytest.approx(float(mpmath.zeta(-k, float(a))), rel=1e-12)


def test_dedekind_frozen(Q5, Q2):
    # [DERIVED] from generalized Bernoulli numbers B_{k,χ_D}
    assert dedekind_oracle(5, 2) == Fraction(1, 30)
    assert dedekind_oracle(8, 2) == Fraction(1, 12)
    assert dedekind_oracle(12, 2) == Fraction(1, 6)
    assert dedekind_oracle(5, 4) == Fraction(1, 60)
    assert dedekind_oracle(8, 4) == Fraction(11, 120)


@pytest.mark.parametrize(
    "poly,D",
    [([1, -1, -1], 5), ([1, 0, -2], 8), ([1, 0, -3], 12)],
)
def test_dedekind_assembly(poly, D):
    F = TotallyRealField(poly)
    assert dedekind_zeta_value(F, 1) == dedekind_oracle(D, 2)
    assert dedekind_zeta_value(F, 3) == dedekind_oracle(D, 4)
    # trivial zeros at even negative integers
    assert dedekind_zeta_value(F, 2) == 0


def test_dedekind_level_independent(Q5):
    assert dedekind_zeta_value(Q5, 1, level=3) == dedekind_zeta_value(Q5, 1, level=2)


def test_dedekind_over_Q(Q):
    assert dedekind_zeta_value(Q, 1) == Fraction(-1, 12)
    assert dedekind_zeta_value(Q, 3) == Fraction(1, 120)


def test_shintani_frozen(Q2):
    O = FractionalIdeal.unit(Q2)
    third = Q2.element([Fraction(1, 3), 0])
    assert shintani_zeta(O, O, Q2.zero, 1, level=3) == Fraction(1, 3)
    assert shintani_zeta(O, O, third, 1, level=3) == Fraction(-1, 27)
    assert shintani_zeta(O, O, third, 2, level=3) == Fraction(46, 729)
    assert shintani_zeta(O, O, Q2.element([Fraction(1, 3), Fraction(1, 3)]), 2, level=3) == Fraction(-46, 729)


def test_shintani_g1_is_hurwitz(Q):
    one = FractionalIdeal.unit(Q)
    for k in (1, 2, 3):
        a = Fraction(1, 4)
        assert shintani_zeta(one, one, Q(a), k, level=4) == hurwitz_negative(k, a)


def test_shintani_distribution_relation(Q2):
    """Summing the level-3 cosets of a level-1 coset recovers it (up to the unit index)."""
    O = FractionalIdeal.unit(Q2)
    three = O * Fraction(3)
    from eisres.field import ray_units

    u1, u3 = ray_units(Q2, 1), ray_units(Q2, 3)
    for k in (1, 2):
        whole = shintani_coset_zeta(Q2, O, Q2.zero, u1, k)
        parts = sum(shintani_coset_zeta(Q2, three, Q2.element([i, j]), u3, k) for i in range(3) for j in range(3))
        assert parts == whole * u3.exponent


def test_shintani_rejects_bad_units(Q2):
    from eisres.field import ray_units

    three = FractionalIdeal.unit(Q2) * Fraction(3)
    with pytest.raises(ValueError):
        shintani_coset_zeta(Q2, three, Q2.element([1, 0]), ray_units(Q2, 1), 1)


def test_gamma_factors():
    eps = SignCharacter.trivial(2)
    s = 2.0
    expect = (mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2)) ** 2
    assert float(gamma_factor(eps, s)) == pytest.approx(float(expect), rel=1e-14)
    with pytest.raises(GammaPoleError):
        gamma_factor(SignCharacter.trivial(1), 0)
    assert float(reciprocal_gamma_factor(SignCharacter.trivial(1), 0)) == 0.0


def test_taper_shape():
    u = np.array([0.0, 0.5, 1.0, 1.2])
    v = taper(u)
    assert v[0] == 1.0 and v[-1] == 0.0 and v[-2] == 0.0
    assert np.all(np.diff(taper(np.linspace(0, 1.5, 50))) <= 0)


def test_special_value_small_bound(Q2):
    O = FractionalIdeal.unit(Q2)
    res = special_value(O, O, Q2.element([Fraction(1, 3), 0]), 2, bound=2000, level=3)
    assert res.oracle == Fraction(-1, 27)
    assert res.relative_difference < 1e-6
    assert abs(res.imag) < 1e-12


def test_F_is_two_power_times_zeta(Q2):
    O = FractionalIdeal.unit(Q2)
    x = Q2.element([Fraction(1, 3), 0])
    q = ZetaQuery(Q2, O, O, x, SignCharacter.trivial(2), 2.0, bound=2000, level=3)
    assert F_oracle(q, 2) == 4 * shintani_zeta(O, O, x, 1, level=3)
    assert F_special_value(q, 2).value.real == pytest.approx(float(F_oracle(q, 2)), rel=1e-6)


def test_parity_mismatch_vanishes(Q2):
    O = FractionalIdeal.unit(Q2)
    x = Q2.element([Fraction(1, 3), 0])
    for signs in ((-1, -1), (1, -1), (-1, 1)):
        q = ZetaQuery(Q2, O, O, x, SignCharacter(signs), 2.0, bound=2000, level=3)
        res = F_special_value(q, 2)
        assert res.vanishing and res.value == 0
