from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisres.cusps import (
    LevelGroupElement,
    LevelGroupError,
    ResidueRing,
    RingTooLargeError,
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
    random_b1_element,
    special_group,
    unit_residues,
)
from eisres.field import TotallyRealField
from eisres.nori import TorsionDistribution


def test_residue_ring(Q2):
    R = ResidueRing(Q2, 3)
    assert R.size == 9
    assert R.reduce(Q2.gen * 5) == (0, 2)
    assert R.mul((1, 1), R.inverse((1, 1))) == R.one
    assert not R.is_unit(R.zero)
    # 3 is inert in Q(sqrt2): O/3O is the field with 9 elements
    assert len(unit_residues(R)) == 8
    assert all(R.is_unit(x) for x in R.elements() if x != R.zero)
    with pytest.raises(RingTooLargeError):
        ResidueRing(Q2, 200)


def test_level_group(Q2):
    R = ResidueRing(Q2, 3)
    u = LevelGroupElement.unipotent(R, (1, 0))
    assert u**3 == LevelGroupElement.identity(R)
    assert u * u.inverse() == LevelGroupElement.identity(R)
    with pytest.raises(LevelGroupError):
        LevelGroupElement.from_entries(R, [(1, 0), (1, 0), (1, 0), (1, 0)])


def test_special_group_orders(Q, Q2):
    # |SL_2(Z/3)| = 24, |SL_2(F_9)| = 9 * 80 = 720
    assert len(special_group(ResidueRing(Q, 3))) == 24
    assert len(special_group(ResidueRing(Q2, 3), max_size=10)) == 720


@pytest.mark.parametrize("name,count", [("Q", 4), ("Q(sqrt2)", 10), ("Q(sqrt5)", 10)])
def test_cusp_counts(name, count):
    from eisres.cli.config import load_field

    F = load_field(name)
    cs = cusp_set(F, 3)
    assert len(cs) == count
    orbits = orbit_decomposition(ResidueRing(F, 3))
    assert sorted(len(o) for o in orbits) == sorted(c.size for c in cs)
    # partition: orbit sizes sum to the group order
    assert sum(c.size for c in cs) == len(special_group(ResidueRing(F, 3), max_size=10))


def test_cusp_count_sqrt3():
    assert len(cusp_set(TotallyRealField([1, 0, -3]), 3)) == 12


def test_cusp_rejects_small_level(Q):
    with pytest.raises(ValueError):
        cusp_set(Q, 2)


def test_identity_represents_itself(Q2):
    ident = LevelGroupElement.identity(ResidueRing(Q2, 3))
    assert cusp_of(ident).representative == ident


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cusp_invariant_under_b1(seed):
    from eisres.cli.config import load_field

    F = load_field("Q(sqrt2)")
    R = ResidueRing(F, 3)
    rng = np.random.default_rng(seed)
    G = special_group(R, max_size=10)
    h = G[int(rng.integers(len(G)))]
    b = random_b1_element(R, rng)
    assert b.c == R.zero
    assert cusp_of(b * h) == cusp_of(h)


def test_b1_generators(Q):
    gens = b1_generators(ResidueRing(Q, 3))
    assert all(g.c == (0,) for g in gens)


def test_cusp_ideal_and_normalize(Q, Q2):
    R = ResidueRing(Q2, 3)
    g = LevelGroupElement.diagonal(R, (2, 0), (1, 0))
    assert normalize(g).is_special()
    ident = LevelGroupElement.identity(R)
    lift = cusp_ideal(ident)
    assert lift.norm == 1
    # bottom row (0, 1): u O + v O = O
    assert (lift.u, lift.v) == (Q2.zero, Q2.one)
    # over Q every cusp ideal is Z: unimodular lifts exist
    for c in cusp_set(Q, 3):
        assert cusp_ideal(c.representative).norm == 1


def test_torsion_action(Q2):
    R = ResidueRing(Q2, 3)
    h = LevelGroupElement.from_entries(R, [(1, 0), (1, 0), (0, 0), (1, 0)])
    third = Fraction(1, 3)
    assert act_point(h, [third, 0, 0, 0]) == (third, 0, 0, 0)
    assert project(h, [third, 0, 0, Fraction(2, 3)]) == (0, Fraction(2, 3))
    alpha = TorsionDistribution.difference([third, 0, 0, third], [0, 0, 0, 0], 3)
    moved = act(h, alpha)
    assert sum(l for _, l in moved) == 0
    with pytest.raises(ValueError):
        act(h, TorsionDistribution.difference([Fraction(1, 5)] * 4, [0] * 4, 5))


@pytest.mark.parametrize("name", ["Q", "Q(sqrt2)", "Q(sqrt5)"])
def test_coinvariants(name):
    from eisres.cli.config import load_field

    F = load_field(name)
    assert [coinvariant_dimension(F, k) for k in range(13)] == [int(k % F.g == 0) for k in range(13)]
