from __future__ import annotations

from fractions import Fraction

import pytest

from eisres.cli.suites import residue_battery
from eisres.cusps import LevelGroupElement, ResidueRing, act, cusp_set
from eisres.nori import (
    InvalidDistributionError,
    TorsionDistribution,
    TorusContext,
    parity_vanishing,
    projected_distribution,
    residue_main,
    residue_normalized,
    residue_of_degree,
)

BOUND = 2000.0


@pytest.fixture(scope="module")
def battery():
    from eisres.cli.config import load_field

    return residue_battery(load_field("Q(sqrt2)"), BOUND)


def test_battery_against_oracle(battery):
    ctx, rows = battery
    for _, h, alpha in rows:
        main = residue_main(ctx, alpha, h, 1)
        norm = residue_normalized(ctx, alpha, h, 1)
        # [DERIVED] Shintani values -1/27 and 1/3 give |res| = 10/27 on this battery
        assert abs(main.oracle) == Fraction(10, 27)
        assert main.residual <= 1e-6
        assert norm.residual <= 1e-6
        assert abs(main.value - norm.value) <= 1e-9


def test_equivariance_bit_identical(battery):
    ctx, rows = battery
    ident = LevelGroupElement.identity(ResidueRing(ctx.field, 3))
    for _, h, alpha in rows:
        a = residue_main(ctx, alpha, h, 1, with_oracle=False).value
        b = residue_main(ctx, act(h, alpha), ident, 1, with_oracle=False).value
        assert a == b


def test_weight_two(Q2):
    """k = 2 uses the ±46/729 values: the residue is nonzero only when one point projects to 0."""
    ctx = TorusContext.standard(Q2, 3, bound=BOUND)
    ident = LevelGroupElement.identity(ResidueRing(Q2, 3))
    third = Fraction(1, 3)
    alpha = TorsionDistribution.difference([0, 0, third, 0], [0, 0, 0, 0], 3)
    res = residue_main(ctx, alpha, ident, 2)
    assert res.oracle == Fraction(-46, 729)
    assert res.residual <= 1e-6
    # (1,0) and (1,1) carry 46/729 and -46/729
    both = TorsionDistribution.difference([0, 0, third, 0], [0, 0, third, third], 3)
    res = residue_main(ctx, both, ident, 2)
    assert res.oracle == Fraction(-92, 729)
    assert res.residual <= 1e-6
    same = TorsionDistribution.difference([0, 0, third, 0], [0, 0, 0, third], 3)
    assert residue_main(ctx, same, ident, 2).oracle == 0


def test_degree_and_parity_vanishing(battery):
    ctx, rows = battery
    _, h, alpha = rows[0]
    assert residue_of_degree(ctx, alpha, h, 3).value == 0
    assert residue_of_degree(ctx, alpha, h, 2).value == residue_main(ctx, alpha, h, 1).value
    assert parity_vanishing(ctx, alpha, h, 1) <= 1e-8


def test_projection_keeps_second_coordinate(Q2):
    ident = LevelGroupElement.identity(ResidueRing(Q2, 3))
    third = Fraction(1, 3)
    alpha = TorsionDistribution.difference([third, 0, 0, third], [0, 0, 0, 0], 3)
    assert projected_distribution(alpha, ident) == TorsionDistribution.difference([0, third], [0, 0], 3)


def test_input_validation(Q, Q2):
    ctx = TorusContext.standard(Q2, 3, bound=200.0)
    ident = LevelGroupElement.identity(ResidueRing(Q2, 3))
    alpha = TorsionDistribution.difference([Fraction(1, 3), 0, 0, 0], [0, 0, 0, 0], 3)
    with pytest.raises(ValueError):
        residue_main(ctx, alpha, ident, 0)
    with pytest.raises(InvalidDistributionError):
        residue_main(ctx, TorsionDistribution.difference([Fraction(1, 3), 0], [0, 0], 3), ident, 1)
    with pytest.raises(ValueError):
        residue_main(ctx, alpha, LevelGroupElement.identity(ResidueRing(Q, 3)), 1)


def test_g1_residues(Q):
    """Over Q the residue is ζ(-1, a) combinations with g - 1 = 0, i.e. no sign."""
    ctx = TorusContext.standard(Q, 3, bound=1e4)
    third = Fraction(1, 3)
    alpha = TorsionDistribution.difference([0, third], [0, 0], 3)
    for c in cusp_set(Q, 3):
        res = residue_main(ctx, alpha, c.representative, 1)
        assert res.residual <= 1e-6
