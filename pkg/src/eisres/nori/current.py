"""The polylogarithm current and the Eisenstein current on the torus bundle.

Chart: (x_1..x_g, t_1..t_g) with indices 0..g-1 for x and g..2g-1 for t.
For ρ ∈ a^∨ write A_ρ(t) = 2πi ρ(q_t(ρ)) - 𝐪_t(ρ), a jet with constant term
2πi Σ t_i^2 ρ_i^2 and linear part Σ t_i^2 ρ_i 𝐞_i.  Then

    ν_ρ(t) = Σ_{m=0}^{g-1} (-1)^m e^{-2πiρ(β)} A_ρ^{-(m+1)} ι_ρ (d ∘ ι_ρ)^m vol,

and the current is ν(v, t) = Σ_ρ ν_ρ(t) e^{2πiρ(v)}, μ = ν · exp(-v).
Sums over ρ run over U-orbit representatives with |N ρ| <= R, each orbit
unfolded to the full lattice (terms decay geometrically along an orbit).
"""

from __future__ import annotations

from math import comb, factorial, log
from typing import Sequence

import numpy as np

from .. import _kernels
from ..field import FieldElement
from ..field.units import UnsupportedDegreeError
from ..forms import DifferentialForm, JetSeries
from ..forms.checks import nori_form, sup_norm
from ..forms.jets import multi_indices
from ..forms.scalar import Const, add, const, coord
from ..zeta.lattice_sum import taper
from .context import TorsionDistribution, TorusContext, TorusPoint

__all__ = [
    "nu_rho_form",
    "nu_rho",
    "fourier_ode_residual",
    "polylog_current",
    "polylog_current_naive",
    "eis_current",
    "unfolded_rho",
    "unfold_range",
    "UNFOLD_TOL",
]

TWO_PI_I = 2j * np.pi
UNFOLD_TOL = 1e-17


def _check_dual(ctx: TorusContext, rho: FieldElement) -> None:
    if any(p.denominator != 1 for p in ctx.rho_pairing(rho)):
        raise ValueError(f"{rho} is not in the trace dual of the ideal")


def _t_array(t: TorusPoint | Sequence[float]) -> np.ndarray:
    if not isinstance(t, TorusPoint):
        t = TorusPoint(tuple(t))
    return t.array()


# single-ρ symbolic forms --------------------------------------------------------------
def _A_field(ctx: TorusContext, r: np.ndarray):
    """A_ρ as a jet-valued scalar field of t."""
    g, K = ctx.g, ctx.jet_degree
    terms = []
    for i in range(g):
        ti2 = coord(g + i) ** 2
        jet_i = JetSeries.generator(i, g, K) * (-float(r[i]))
        jet_i = jet_i + TWO_PI_I * float(r[i]) ** 2
        terms.append(Const(jet_i) * ti2)
    return add(*terms)


def nu_rho_form(ctx: TorusContext, beta: TorsionDistribution, rho: FieldElement) -> DifferentialForm:
    """ν_ρ as a jet-valued (g-1)-form on the (x, t) chart (zero for ρ = 0)."""
    g = ctx.g
    if rho.is_zero():
        return DifferentialForm.zero(2 * g, g - 1)
    _check_dual(ctx, rho)
    phase = ctx.phase(beta, rho)
    if phase == 0:
        return DifferentialForm.zero(2 * g, g - 1)
    r = rho.embed_float()
    A = _A_field(ctx, r)
    out = DifferentialForm.zero(2 * g, g - 1)
    for m in range(g):
        piece = nori_form(list(r), m, ctx.vol_constant)
        out = out + piece.scale(const((-1) ** m * phase) * A ** (-(m + 1)))
    return out


def nu_rho(ctx: TorusContext, beta: TorsionDistribution, rho: FieldElement, t: TorusPoint | Sequence[float]) -> dict[tuple[int, ...], JetSeries]:
    """Components of ν_ρ(t); ν_0 = 0 returns an empty mapping."""
    tt = _t_array(t)
    form = nu_rho_form(ctx, beta, rho)
    point = [0.0] * ctx.g + list(tt)
    return {k: _as_jet(v, ctx) for k, v in form.evaluate(point).items()}


def _as_jet(v, ctx: TorusContext) -> JetSeries:
    return v if isinstance(v, JetSeries) else JetSeries.constant(complex(v), ctx.g, ctx.jet_degree)


def _norm_one_chart(tt: np.ndarray) -> np.ndarray:
    """Jacobian of (x, s) ↦ (x, t(s)) with t_i = t0_i exp(Σ_j s_j L_ij), Σ_i L_ij = 0."""
    g = len(tt)
    L = np.zeros((g, max(g - 1, 0)))
    for j in range(g - 1):
        L[j, j] = 1.0
        L[g - 1, j] = -1.0
    J = np.zeros((2 * g, 2 * g - 1))
    J[:g, :g] = np.eye(g)
    J[g:, g:] = tt[:, None] * L
    return J


def fourier_ode_residual(
    ctx: TorusContext,
    beta: TorsionDistribution,
    rho: FieldElement,
    t: TorusPoint | Sequence[float],
    v: Sequence[float] | None = None,
) -> float:
    """Sup-norm of (d + 2πi dρ - d𝑣̲) ν_ρ - e^{-2πiρ(β)} vol on the slice N t = 1.

    d uses the analytic partials; the comparison is made after pulling back to
    the (x, log t) chart of the norm-one hypersurface, per jet coefficient.
    """
    g = ctx.g
    tt = _t_array(t)
    v = [0.0] * g if v is None else list(v)
    nu = nu_rho_form(ctx, beta, rho)
    phase = 0j if rho.is_zero() else ctx.phase(beta, rho)
    r = rho.embed_float()
    theta_terms = {}
    for i in range(g):
        jet = JetSeries.generator(i, g, ctx.jet_degree) * (-1.0) + TWO_PI_I * float(r[i])
        theta_terms[(i,)] = Const(jet)
    theta = DifferentialForm(2 * g, 1, theta_terms)
    lhs = nu.exterior_d() + theta.wedge(nu)
    rhs = DifferentialForm.volume(2 * g, tuple(range(g)), phase * ctx.vol_constant)
    diff = lhs - rhs
    vals = diff.pullback_at(list(v) + list(tt), _norm_one_chart(tt))
    return sup_norm(vals.values())


# vectorised sums ------------------------------------------------------------------
def unfold_range(ctx: TorusContext, decay: float = 1.0) -> int:
    """J such that orbit terms beyond ε^{±J} are below UNFOLD_TOL relative to the peak."""
    if ctx.g == 1 or ctx.units.generator is None:
        return 0
    L = abs(log(ctx.units.generator.embed_float()[0]))
    return int(np.ceil(-log(UNFOLD_TOL) / (decay * L))) + 1


def unfolded_rho(ctx: TorusContext, decay: float = 1.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(embeddings, phases-index, weights) for all ρ = ε^j ρ_0, ρ_0 a representative.

    ``decay`` is the exponent with which terms fall off along an orbit
    (|term| ~ ε^{-decay |j|}); it sets the unfolding range j ∈ [-J, J].
    Returns the unfolded embeddings (M, g), the index of the representative
    for each row (M,) and the taper weight (M,).
    """
    reps = ctx.dual_reps
    emb = reps.embeddings
    idx = np.arange(len(reps))
    w = taper(np.abs(reps.norms) / ctx.bound, ctx.taper) if len(reps) else np.zeros(0)
    J = unfold_range(ctx, decay)
    if J == 0:
        return emb, idx, w
    e = ctx.units.generator.embed_float()
    blocks, iblocks = [], []
    for j in range(-J, J + 1):
        blocks.append(emb * (e**j))
        iblocks.append(idx)
    return np.concatenate(blocks), np.concatenate(iblocks), np.tile(w, 2 * J + 1)


def _inverse_power_coeffs(a0: np.ndarray, b: np.ndarray, m: int, K: int, g: int) -> dict[tuple[int, ...], np.ndarray]:
    """Coefficients of (a0 - Σ b_i e_i)^{-(m+1)} per multi-index, vectorised over rows."""
    out = {}
    for alpha in multi_indices(g, K):
        d = sum(alpha)
        mult = factorial(d)
        for a in alpha:
            mult //= factorial(a)
        term = comb(d + m, d) * mult / a0 ** (d + m + 1)
        for i, a in enumerate(alpha):
            if a:
                term = term * b[:, i] ** a
        out[alpha] = term
    return out


def _component_factors(ctx: TorusContext, emb: np.ndarray, tt: np.ndarray) -> list[dict[tuple[int, ...], np.ndarray]]:
    """Per m, the coefficients of ι_ρ(d∘ι_ρ)^m vol at t (chart indices), vectorised."""
    g, c = ctx.g, ctx.vol_constant
    X = tt**2 * emb
    if g == 1:
        return [{(): c * X[:, 0]}]
    if g == 2:
        m0 = {(0,): -c * X[:, 1], (1,): c * X[:, 0]}
        pref = 2 * c * emb[:, 0] * emb[:, 1] * tt[0] * tt[1]
        m1 = {(2,): -pref * tt[1], (3,): pref * tt[0]}
        return [m0, m1]
    raise UnsupportedDegreeError("vectorised currents implemented for g <= 2")


def _reduce(values: np.ndarray) -> complex:
    return complex(_kernels.tree_sum(values))


def _nu_sum(ctx: TorusContext, beta: TorsionDistribution, v: np.ndarray, tt: np.ndarray) -> dict[tuple[int, ...], JetSeries]:
    g, K = ctx.g, ctx.jet_degree
    emb, ridx, w = unfolded_rho(ctx, decay=1.0)
    phases = ctx.phases(beta, ctx.dual_reps.coords)[ridx] if len(ridx) else np.zeros(0, complex)
    keep = (phases != 0) & (w != 0)
    emb, phases, w = emb[keep], phases[keep], w[keep]
    scal = w * phases * np.exp(TWO_PI_I * (emb @ v))
    b = tt**2 * emb
    a0 = TWO_PI_I * np.sum(b * emb, axis=1)
    out: dict[tuple[int, ...], JetSeries] = {}
    for m, comps in enumerate(_component_factors(ctx, emb, tt)):
        inv = _inverse_power_coeffs(a0, b, m, K, g)
        sgn = (-1) ** m
        for idx, fac in comps.items():
            jet = out.get(idx, JetSeries(g, K))
            data = jet.data.copy()
            for alpha, arr in inv.items():
                data[alpha] += sgn * _reduce(scal * fac * arr)
            out[idx] = JetSeries(g, K, data)
    return out


def polylog_current(
    ctx: TorusContext,
    beta: TorsionDistribution,
    v: Sequence[float],
    t: TorusPoint | Sequence[float],
    *,
    include_exp: bool = True,
) -> dict[tuple[int, ...], JetSeries]:
    """Truncated μ(v, t) = ν(v, t) exp(-v) (or ν itself with ``include_exp=False``)."""
    tt = _t_array(t)
    v = np.asarray(v, dtype=float)
    nu = _nu_sum(ctx, beta, v, tt)
    if not include_exp:
        return nu
    e = JetSeries.linear(list(-v), ctx.jet_degree).exp()
    return {k: j * e for k, j in nu.items()}


def polylog_current_naive(
    ctx: TorusContext,
    beta: TorsionDistribution,
    v: Sequence[float],
    t: TorusPoint | Sequence[float],
    *,
    include_exp: bool = True,
) -> dict[tuple[int, ...], JetSeries]:
    """Σ_ρ w_ρ ν_ρ(t) e^{2πiρ(v)} term by term through :func:`nu_rho` (slow reference path)."""
    tt = _t_array(t)
    v = np.asarray(v, dtype=float)
    g, K = ctx.g, ctx.jet_degree
    reps = ctx.dual_reps
    w = taper(np.abs(reps.norms) / ctx.bound, ctx.taper) if len(reps) else np.zeros(0)
    acc: dict[tuple[int, ...], JetSeries] = {}
    unit = ctx.units.generator
    J = unfold_range(ctx, 1.0)
    for i in range(len(reps)):
        if w[i] == 0:
            continue
        rho0 = reps.element(i)
        powers = [rho0] if unit is None else [rho0 * unit**j for j in range(-J, J + 1)]
        for rho in powers:
            phase_v = complex(np.exp(TWO_PI_I * float(rho.embed_float() @ v)))
            for k, jet in nu_rho(ctx, beta, rho, tt).items():
                acc[k] = acc.get(k, JetSeries(g, K)) + jet * (w[i] * phase_v)
    if not include_exp:
        return acc
    e = JetSeries.linear(list(-v), K).exp()
    return {k: j * e for k, j in acc.items()}


def eis_current(ctx: TorusContext, beta: TorsionDistribution, k: int, t: TorusPoint | Sequence[float]) -> dict[tuple[int, ...], JetSeries]:
    """Truncated Eis^k(β)(t) as a jet-valued (g-1)-form on the t-space (indices 0..g-1).

    Eis^k = (k+g-1)!/k! Σ_ρ (-1)^{g-1} e^{-2πiρ(β)} (2πi ρ(q_t ρ))^{-(k+g)} 𝐪_t(ρ)^k · q_t(ρ)^* ι_ℰ vol
    with q_t(ρ)^* ι_ℰ vol = c 2^{g-1} N(ρ) Σ_j (-1)^j t_j dt_0 ∧ ..^j.. ∧ dt_{g-1} on N t = 1.
    """
    if k < 1:
        raise ValueError("Eisenstein currents need k >= 1 (the k = 0 sum is only conditionally convergent)")
    g = ctx.g
    K = max(ctx.jet_degree, k)
    tt = _t_array(t)
    emb, ridx, w = unfolded_rho(ctx, decay=float(k + 2))
    phases = ctx.phases(beta, ctx.dual_reps.coords)[ridx] if len(ridx) else np.zeros(0, complex)
    b = tt**2 * emb
    S = np.sum(b * emb, axis=1)
    nrm = np.prod(emb, axis=1)
    pref = factorial(k + g - 1) / factorial(k) * (-1) ** (g - 1) * ctx.vol_constant * 2 ** (g - 1)
    scal = pref * w * phases * nrm / (TWO_PI_I * S) ** (k + g)
    data = np.zeros((K + 1,) * g, dtype=np.complex128)
    for alpha in multi_indices(g, K, k):
        mult = factorial(k)
        for a in alpha:
            mult //= factorial(a)
        term = scal * mult
        for i, a in enumerate(alpha):
            if a:
                term = term * b[:, i] ** a
        data[alpha] = _reduce(term)
    base = JetSeries(g, K, data)
    out = {}
    for j in range(g):
        idx = tuple(i for i in range(g) if i != j)
        out[idx] = base * ((-1) ** j * float(tt[j]))
    return out
