"""Residues of Eisenstein classes at the cusps.

For a cusp h and α = Σ l_σ (σ) on (1/n O/O)^2 the residue of Eis^{gk}(α)
is the pushforward of the torus Eisenstein class of p(hα), read off with
:func:`~eisres.nori.pushforward.pushforward_closed_form`.  The oracle is
the exact value (-1)^{g-1} Σ l_σ ζ_+(-p(hσ) + O, U_n, -k).

The point enters the oracle as -p(hσ) because the currents use the kernel
e^{-2πiρ(σ)}; for g = 2 the two signs give the same value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..cusps import LevelGroupElement, act, cusp_ideal, normalize, project_normalized
from ..field import FractionalIdeal, SignCharacter
from ..zeta.series import F_special_value, ZetaQuery
from ..zeta.shintani import shintani_coset_zeta
from .context import InvalidDistributionError, TorsionDistribution, TorusContext
from .pushforward import pushforward_closed_form

__all__ = [
    "ResidueResult",
    "residue_main",
    "residue_normalized",
    "residue_of_degree",
    "projected_distribution",
    "parity_vanishing",
]


@dataclass(frozen=True)
class ResidueResult:
    """Pipeline value, exact oracle (None when unavailable) and the data that produced them."""

    value: complex
    oracle: Fraction | None
    k: int
    projected: TorsionDistribution
    bound: float
    ideal_norm: Fraction = Fraction(1)

    @property
    def residual(self) -> float | None:
        """|value - oracle| / |oracle| (absolute when the oracle vanishes)."""
        if self.oracle is None:
            return None
        ref = abs(float(self.oracle))
        diff = abs(self.value - float(self.oracle))
        return diff / ref if ref else diff


def _check(ctx: TorusContext, alpha: TorsionDistribution, h: LevelGroupElement, k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if alpha.level != ctx.level or h.ring.n != ctx.level:
        raise InvalidDistributionError("α, h and the context must share the level n")
    if h.ring.field is not ctx.field:
        raise ValueError("h lives over another field")
    if alpha.rank not in (None, 2 * ctx.g):
        raise InvalidDistributionError(f"α must live on (1/n O/O)^2, i.e. have {2 * ctx.g} coordinates")


def projected_distribution(alpha: TorsionDistribution, h: LevelGroupElement) -> TorsionDistribution:
    """p(hα): act by h, then keep the second coordinate."""
    g = h.ring.g
    return act(h, alpha).map_points(lambda p: p[g:])


def _oracle(ctx: TorusContext, ideal: FractionalIdeal, beta: TorsionDistribution, k: int) -> Fraction | None:
    g = ctx.g
    if g > 2:
        return None
    total = Fraction(0)
    for sigma, l in beta:
        x = sum((b * Fraction(c) for b, c in zip(ideal.basis_elements(), sigma)), ctx.field.zero)
        total += l * shintani_coset_zeta(ctx.field, ideal, -x, ctx.units, k)
    return (-1) ** (g - 1) * ideal.norm ** (-k) * total


def residue_main(ctx: TorusContext, alpha: TorsionDistribution, h: LevelGroupElement, k: int, with_oracle: bool = True) -> ResidueResult:
    """res(Eis^{gk}(α))(h) through act, project and the closed-form pushforward with a = O."""
    _check(ctx, alpha, h, k)
    if ctx.ideal != FractionalIdeal.unit(ctx.field):
        ctx = ctx.with_(ideal=FractionalIdeal.unit(ctx.field))
    beta = projected_distribution(alpha, h)
    value = pushforward_closed_form(ctx, beta, k)
    oracle = _oracle(ctx, ctx.ideal, beta, k) if with_oracle else None
    return ResidueResult(value, oracle, k, beta, ctx.bound)


def residue_normalized(ctx: TorusContext, alpha: TorsionDistribution, h: LevelGroupElement, k: int, with_oracle: bool = True) -> ResidueResult:
    """The same residue through h̃ = h d_h^{-1}, the cusp ideal 𝔟_h̃ and p_h̃.

    p_h̃(σ) = uσ_1 + vσ_2 is computed in F from a unimodular lift (u, v) of
    the bottom row of h̃, and the pushforward runs on the torus of 𝔟_h̃.
    """
    _check(ctx, alpha, h, k)
    lift = cusp_ideal(normalize(h))
    bctx = ctx if ctx.ideal == lift.ideal else ctx.with_(ideal=lift.ideal)
    beta = alpha.map_points(lambda p: project_normalized(lift, p))
    value = pushforward_closed_form(bctx, beta, k)
    oracle = _oracle(bctx, lift.ideal, beta, k) if with_oracle else None
    return ResidueResult(value, oracle, k, beta, ctx.bound, lift.ideal.norm)


def residue_of_degree(ctx: TorusContext, alpha: TorsionDistribution, h: LevelGroupElement, m: int, with_oracle: bool = True) -> ResidueResult:
    """Residue of Eis^m(α); zero without computation unless g | m."""
    if m % ctx.g:
        if m < 1:
            raise ValueError("m must be >= 1")
        _check(ctx, alpha, h, 1)
        return ResidueResult(0j, Fraction(0), m, TorsionDistribution.zero(ctx.level), ctx.bound)
    return residue_main(ctx, alpha, h, m // ctx.g, with_oracle)


def parity_vanishing(ctx: TorusContext, alpha: TorsionDistribution, h: LevelGroupElement, k: int) -> float:
    """max over the parity-mismatched ε of |Σ l_σ F(O, O, ε, -p(hσ), -k)| via the functional equation.

    Only the character ε = sign^{k+1} can give a non-zero F at -k; the
    others carry a pole of Γ_ε(1 - s) at s = k + 1.
    """
    _check(ctx, alpha, h, k)
    beta = projected_distribution(alpha, h)
    good = SignCharacter.for_weight(ctx.g, k + 1)
    one = FractionalIdeal.unit(ctx.field)
    worst = 0.0
    for signs in product((1, -1), repeat=ctx.g):
        eps = SignCharacter(signs)
        if eps == good:
            continue
        total = 0j
        for sigma, l in beta:
            x = -ctx.torsion_element(sigma)
            q = ZetaQuery(ctx.field, one, one, x, eps, float(k + 1), bound=ctx.bound, level=ctx.level, taper=ctx.taper)
            total += float(l) * F_special_value(q, k + 1).value
        worst = max(worst, abs(total))
    return worst
