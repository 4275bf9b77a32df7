from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from eisres.field import FractionalIdeal
from eisres.forms import JetSeries
from eisres.nori import (
    GaussianSingularityError,
    InvalidDistributionError,
    TorsionDistribution,
    TorusContext,
    TorusPoint,
    composite_gauss_legendre,
    eis_current,
    fourier_ode_residual,
    gaussian_extrapolation,
    gaussian_factor,
    gaussian_factor_regularized,
    gaussian_moment,
    nu_rho,
    polylog_current,
    polylog_current_naive,
    pushforward_closed_form,
    pushforward_quadrature,
    q_transport,
    quadrature_order_check,
)

THIRD = [Fraction(1, 3), Fraction(0)]


def test_distribution_validation():
    with pytest.raises(InvalidDistributionError):
        TorsionDistribution.from_pairs([([Fraction(1, 3), 0], Fraction(1))], 3)
    with pytest.raises(InvalidDistributionError):
        TorsionDistribution.from_pairs([([Fraction(1, 2), 0], Fraction(1)), ([0, 0], Fraction(-1))], 3)
    beta = TorsionDistribution.difference(THIRD, [0, 0], 3)
    assert beta == TorsionDistribution.from_pairs([(THIRD, Fraction(1)), ([0, 0], Fraction(-1))], 3)
    assert beta.rank == 2
    assert TorsionDistribution.zero(3).is_zero


def test_context_basics(Q2):
    ctx = TorusContext.standard(Q2, 3, bound=100.0)
    assert len(ctx.all_torsion_points()) == 9
    # vol constant |d_F|^{-1/2} for a = O
    assert ctx.vol_constant == pytest.approx(8**-0.5)
    assert abs(ctx.unit_log) == pytest.approx(np.log(577 + 408 * 2**0.5))
    assert ctx.torsion_element(THIRD) == Q2(Fraction(1, 3))


def test_torus_point():
    p = TorusPoint.from_log([0.3])
    assert p.array() == pytest.approx(np.exp([0.3, -0.3]))
    with pytest.raises(ValueError):
        TorusPoint((2.0, 2.0))
    assert TorusPoint.identity(2).array() == pytest.approx([1.0, 1.0])


def test_q_transport_norm(Q2):
    ctx = TorusContext.standard(Q2, 3)
    rho = FractionalIdeal.unit(Q2).trace_dual().basis_elements()[0]
    _, q, jet = q_transport(ctx, [1.3, 1 / 1.3], rho)
    assert q > 0
    assert isinstance(jet, JetSeries)


def test_nu_zero_vanishes(Q, Q2):
    for F in (Q, Q2):
        ctx = TorusContext.standard(F, 3, jet_degree=3)
        beta = TorsionDistribution.difference([Fraction(1, 3)] + [0] * (F.g - 1), [0] * F.g, 3)
        out = nu_rho(ctx, beta, F.zero, [1.0] * F.g)
        assert all(v.max_abs() == 0 for v in out.values())


def test_nu_rejects_non_dual(Q):
    ctx = TorusContext.standard(Q, 3)
    beta = TorsionDistribution.difference([Fraction(1, 3)], [0], 3)
    with pytest.raises(ValueError):
        nu_rho(ctx, beta, Q(Fraction(1, 7)), [1.0])


@pytest.mark.parametrize("name", ["Q", "Q(sqrt2)"])
def test_fourier_ode_seeded(name):
    from eisres.cli.config import load_field

    F = load_field(name)
    rng = np.random.default_rng(7)
    ctx = TorusContext.standard(F, 3, jet_degree=3)
    dual = FractionalIdeal.unit(F).trace_dual().basis_elements()
    pts = ctx.all_torsion_points()
    for _ in range(5):
        i, j = rng.choice(len(pts), size=2, replace=False)
        beta = TorsionDistribution.difference(pts[i], pts[j], 3)
        rho = sum((b * int(c) for b, c in zip(dual, rng.integers(1, 4, size=F.g))), F.zero)
        t = np.exp(rng.normal(size=F.g) * 0.3)
        t /= np.prod(t) ** (1 / F.g)
        assert fourier_ode_residual(ctx, beta, rho, t, rng.uniform(size=F.g)) <= 1e-8


@pytest.mark.parametrize("name,R,K", [("Q", 40.0, 3), ("Q(sqrt2)", 5.0, 1)])
def test_polylog_fast_matches_naive(name, R, K):
    from eisres.cli.config import load_field

    F = load_field(name)
    ctx = TorusContext.standard(F, 3, bound=R, jet_degree=K)
    beta = TorsionDistribution.difference([Fraction(1, 3)] + [0] * (F.g - 1), [0] * F.g, 3)
    v = [0.2, 0.7][: F.g]
    t = [1.0] if F.g == 1 else [1.3, 1 / 1.3]
    fast = polylog_current(ctx, beta, v, t)
    naive = polylog_current_naive(ctx, beta, v, t)
    assert fast.keys() == naive.keys()
    scale = max(x.max_abs() for x in fast.values())
    assert max((fast[k] - naive[k]).max_abs() for k in fast) <= 1e-9 * scale


def test_eis_current_components(Q2):
    ctx = TorusContext.standard(Q2, 3, bound=100.0, jet_degree=2)
    beta = TorsionDistribution.difference(THIRD, [0, 0], 3)
    out = eis_current(ctx, beta, 1, [1.0, 1.0])
    assert set(out) == {(0,), (1,)}


def test_gaussian_moments():
    assert gaussian_moment(1.5, 0) == pytest.approx(1 / 3)  # 1/(2a)
    for k in range(4):
        assert gaussian_moment(2.0, k) == pytest.approx(factorial(k) / (2 * 2.0 ** (k + 1)))
    with pytest.raises(GaussianSingularityError):
        gaussian_factor(0.0, 1)


def test_gaussian_regularization_converges():
    exact = gaussian_factor(0.7, 1)
    assert abs(gaussian_factor_regularized(0.7, 1, 1e-4) - exact) < 1e-5
    val, residual = gaussian_extrapolation(0.7, 1)
    assert residual <= 1e-8
    assert abs(val - exact) <= 1e-8 * abs(exact)


def test_quadrature_rule():
    ratio, expect = quadrature_order_check()
    assert ratio == pytest.approx(expect, rel=0.1)
    x, w = composite_gauss_legendre(0.0, 2.0, 4, nodes=5)
    assert w.sum() == pytest.approx(2.0)
    assert (w * x**9).sum() == pytest.approx(2.0**10 / 10)


def test_pushforward_two_routes(Q2):
    ctx = TorusContext.standard(Q2, 3, bound=200.0)
    beta = TorsionDistribution.difference([Fraction(1, 3), Fraction(1, 3)], [0, 0], 3)
    for k in (1, 2):
        c = pushforward_closed_form(ctx, beta, k)
        q = pushforward_quadrature(ctx, beta, k)
        assert abs(q - c) <= 1e-10 * abs(c)


def test_pushforward_closed_form_matches_zeta(Q2):
    """[DERIVED] -ζ_+(-x+O, U_3, -1) differences from the Shintani oracle."""
    ctx = TorusContext.standard(Q2, 3, bound=2000.0)
    beta = TorsionDistribution.difference([Fraction(1, 3), Fraction(1, 3)], [0, 0], 3)
    # g = 2 sign (-1)^{g-1} = -1 times (-1/27 - 1/3)
    assert pushforward_closed_form(ctx, beta, 1).real == pytest.approx(10 / 27, rel=1e-7)
    assert pushforward_closed_form(ctx, TorsionDistribution.zero(3), 1) == 0
    with pytest.raises(ValueError):
        pushforward_closed_form(ctx, beta, 0)
