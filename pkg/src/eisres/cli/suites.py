"""Named verification suites for ``eisres verify``.

Each suite maps a run configuration to a list of timed checks.  The
``failing-fixture`` suite compares a correct value against a wrong oracle
and exists to exercise the failure path.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable

import numpy as np

from ..cusps import act, coinvariant_dimension, cusp_set, orbit_decomposition, LevelGroupElement, ResidueRing
from ..field import FractionalIdeal, TotallyRealField
from ..forms import run_battery, vol_normalization
from ..nori import (
    TorsionDistribution,
    TorusContext,
    fourier_ode_residual,
    gaussian_extrapolation,
    pushforward_closed_form,
    pushforward_quadrature,
)
from ..nori.residue import parity_vanishing, residue_main, residue_normalized, residue_of_degree
from ..zeta import dedekind_zeta_value, hurwitz_negative, special_value
from .config import RunConfig, load_field
from .report import Check

__all__ = ["SUITES", "run_suite"]


def _timed(name: str, fn: Callable[[], tuple], tolerance: float | None, **params) -> Check:
    t0 = time.perf_counter()
    value, oracle, residual = fn()
    return Check(name, value, oracle, residual, tolerance, params, time.perf_counter() - t0)


def _rel(value: complex, oracle: Fraction | float) -> float:
    ref = abs(float(oracle))
    diff = abs(complex(value) - float(oracle))
    return diff / ref if ref else diff


def _field_g2(cfg: RunConfig) -> TotallyRealField:
    field = load_field(cfg.field, cfg.precision)
    return field if field.g == 2 else load_field("Q(sqrt2)", cfg.precision)


SPECIAL_VALUE_FIELDS = ("Q(sqrt2)", "Q(sqrt5)")
SPECIAL_VALUE_COSETS = ((Fraction(1, 3), 0), (Fraction(1, 3), Fraction(2, 3)), (0, Fraction(1, 3)))


# zeta ------------------------------------------------------------------------------------
def suite_zeta(cfg: RunConfig) -> list[Check]:
    out = []
    Q = load_field("Q", cfg.precision)
    one = FractionalIdeal.unit(Q)
    for a in (Fraction(1, 3), Fraction(1, 4)):
        for k in (2, 4):
            n = a.denominator

            def run(a=a, k=k, n=n):
                res = special_value(one, one, Q(a), k, bound=cfg.truncation, level=n)
                oracle = hurwitz_negative(k - 1, a)
                return res.real, oracle, _rel(res.real, oracle)

            out.append(_timed(f"zeta.hurwitz a={a} k={k}", run, 1e-9, R=cfg.truncation))
    for name in SPECIAL_VALUE_FIELDS:
        F = load_field(name, cfg.precision)
        oneF = FractionalIdeal.unit(F)
        for x in SPECIAL_VALUE_COSETS:
            for k in (2, 3):

                def run(F=F, oneF=oneF, x=x, k=k):
                    res = special_value(oneF, oneF, F.element(x), k, bound=cfg.truncation, level=3)
                    return res.real, res.oracle, res.relative_difference

                out.append(_timed(f"zeta.shintani {F.name} x={x[0]},{x[1]} k={k}", run, 1e-6, R=cfg.truncation))

    def dedekind():
        F5 = load_field("Q(sqrt5)", cfg.precision)
        v = dedekind_zeta_value(F5, 1)
        return v, Fraction(1, 30), abs(float(v - Fraction(1, 30)))

    out.append(_timed("zeta.dedekind Q(sqrt5) k=-1", dedekind, 0.0))
    return out


# forms -----------------------------------------------------------------------------------
def suite_forms(cfg: RunConfig) -> list[Check]:
    out = []

    def battery():
        rep = run_battery(seed=cfg.seed, cases=30)
        return rep.worst, 0.0, rep.worst

    out.append(_timed("forms.battery", battery, 1e-8, seed=cfg.seed, cases=30))
    F = _field_g2(cfg)
    for ideal in (FractionalIdeal.unit(F), FractionalIdeal.principal(F, 3)):

        def vol(ideal=ideal):
            v = vol_normalization(ideal)
            return v, 1, abs(v - 1)

        out.append(_timed(f"forms.vol N(a)={ideal.norm}", vol, 1e-8))
    return out


# nori ------------------------------------------------------------------------------------
def suite_nori(cfg: RunConfig) -> list[Check]:
    out = []
    rng = np.random.default_rng(cfg.seed)
    for name in ("Q", _field_g2(cfg).name):
        F = load_field(name, cfg.precision)
        ctx = TorusContext.standard(F, cfg.level, jet_degree=min(cfg.jet_degree, 3))
        dual = FractionalIdeal.unit(F).trace_dual()

        def ode(F=F, ctx=ctx, dual=dual):
            worst = 0.0
            for _ in range(10):
                pts = ctx.all_torsion_points()
                i, j = rng.choice(len(pts), size=2, replace=False)
                beta = TorsionDistribution.difference(pts[i], pts[j], ctx.level)
                coords = rng.integers(-3, 4, size=F.g)
                if not coords.any():
                    coords[0] = 1
                rho = sum((b * int(c) for b, c in zip(dual.basis_elements(), coords)), F.zero)
                t = np.exp(rng.normal(size=F.g) * 0.3)
                t = t / np.prod(t) ** (1.0 / F.g)
                v = rng.uniform(0, 1, size=F.g)
                worst = max(worst, fourier_ode_residual(ctx, beta, rho, t, v))
            return worst, 0.0, worst

        out.append(_timed(f"nori.fourier_ode {F.name}", ode, 1e-8, cases=10))
    F = _field_g2(cfg)
    R = min(cfg.truncation, 1000.0)
    ctx = TorusContext.standard(F, 3, bound=R)
    beta = TorsionDistribution.difference([Fraction(1, 3), Fraction(1, 3)], [0, 0], 3)

    def two_route():
        c = pushforward_closed_form(ctx, beta, 1)
        q = pushforward_quadrature(ctx, beta, 1)
        return q, c.real, _rel(q, c.real)

    out.append(_timed(f"nori.pushforward_two_route {F.name}", two_route, 1e-6, R=R, k=1))
    for rho, k in ((0.7, 1), (-1.3, 2)):

        def gauss(rho=rho, k=k):
            val, res = gaussian_extrapolation(rho, k)
            return val, None, res

        out.append(_timed(f"nori.gaussian rho={rho} k={k}", gauss, 1e-8))
    return out


# cusps -----------------------------------------------------------------------------------
def suite_cusps(cfg: RunConfig) -> list[Check]:
    out = []
    for name, expected in (("Q", 4), ("Q(sqrt2)", 10)):
        F = load_field(name, cfg.precision)

        def count(F=F, expected=expected):
            cs = cusp_set(F, 3)
            orbits = orbit_decomposition(ResidueRing(F, 3))
            ok = len(cs) == len(orbits) == expected and sorted(c.size for c in cs) == sorted(map(len, orbits))
            return len(cs), expected, 0.0 if ok else 1.0

        out.append(_timed(f"cusps.count {name} n=3", count, 0.0))
    for name in ("Q", "Q(sqrt2)"):
        F = load_field(name, cfg.precision)

        def coinv(F=F):
            bad = [k for k in range(13) if coinvariant_dimension(F, k) != int(k % F.g == 0)]
            return len(bad), 0, float(len(bad))

        out.append(_timed(f"cusps.coinvariants {name}", coinv, 0.0))
    return out


# residue ---------------------------------------------------------------------------------
RESIDUE_POINTS = ((0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 2, 1))


def residue_battery(field: TotallyRealField, bound: float, k: int = 1):
    """(σ, h, α) rows of the residue battery: α = (σ) - (0) for three σ and three cusps."""
    n = 3
    cs = cusp_set(field, n)
    hs = [cs[0].representative, cs[len(cs) // 2].representative, LevelGroupElement.identity(ResidueRing(field, n))]
    rows = []
    for num in RESIDUE_POINTS:
        sigma = [Fraction(c, n) for c in num[: 2 * field.g]]
        alpha = TorsionDistribution.difference(sigma, [0] * (2 * field.g), n)
        for h in hs:
            rows.append((num, h, alpha))
    return TorusContext.standard(field, n, bound=bound), rows


def suite_residue(cfg: RunConfig) -> list[Check]:
    out = []
    F = _field_g2(cfg)
    ctx, rows = residue_battery(F, cfg.truncation)
    ident = LevelGroupElement.identity(ResidueRing(F, 3))
    for num, h, alpha in rows:
        tag = f"σ={''.join(map(str, num))} h={''.join(''.join(map(str, e)) for e in h.entries)}"

        def main(h=h, alpha=alpha):
            r = residue_main(ctx, alpha, h, 1)
            return r.value.real, r.oracle, r.residual

        def normalized(h=h, alpha=alpha):
            r = residue_normalized(ctx, alpha, h, 1)
            return r.value.real, r.oracle, r.residual

        def equivariance(h=h, alpha=alpha):
            a = residue_main(ctx, alpha, h, 1, with_oracle=False).value
            b = residue_main(ctx, act(h, alpha), ident, 1, with_oracle=False).value
            return a, b, 0.0 if a == b else abs(a - b) + 1.0

        out.append(_timed(f"residue.main {tag}", main, 1e-6, R=cfg.truncation))
        out.append(_timed(f"residue.normalized {tag}", normalized, 1e-6, R=cfg.truncation))
        out.append(_timed(f"residue.equivariance {tag}", equivariance, 0.0))
    num, h, alpha = rows[0]

    def odd_degree():
        v = residue_of_degree(ctx, alpha, h, 3).value
        return v, 0, abs(v)

    def parity():
        v = parity_vanishing(ctx, alpha, h, 1)
        return v, 0, v

    out.append(_timed("residue.degree_not_divisible", odd_degree, 1e-8))
    out.append(_timed("residue.parity_vanishing", parity, 1e-8, R=cfg.truncation))
    return out


def suite_failing_fixture(cfg: RunConfig) -> list[Check]:
    def wrong():
        F5 = load_field("Q(sqrt5)", cfg.precision)
        v = dedekind_zeta_value(F5, 1)
        wrong_oracle = Fraction(1, 31)
        return v, wrong_oracle, abs(float(v - wrong_oracle))

    return [_timed("fixture.dedekind_against_wrong_oracle", wrong, 1e-12)]


SUITES: dict[str, Callable[[RunConfig], list[Check]]] = {
    "zeta": suite_zeta,
    "forms": suite_forms,
    "nori": suite_nori,
    "cusps": suite_cusps,
    "residue": suite_residue,
    "failing-fixture": suite_failing_fixture,
}


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    if name == "all":
        checks: list[Check] = []
        for key, fn in SUITES.items():
            if key != "failing-fixture":
                checks.extend(fn(cfg))
        return checks
    return SUITES[name](cfg)
