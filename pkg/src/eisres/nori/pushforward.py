"""Integration of the Eisenstein current over the unit quotient of (F ⊗ R)^1_+.

Both routes return the coefficient of N𝐚^{⊗k}/k!^g in u_{id,*} Eis^{gk}(β).

* Closed form: the Mellin/Γ evaluation, a single lattice sum
  (-1)^{g-1} (k!)^g / ((2πi)^{g(k+1)} |d_F|^{1/2} N(a)^{k+1}) Σ_ρ e^{-2πiρ(β)} / N(ρ)^{k+1}.
* Quadrature (g = 2): the current Eis^{2k} at t = (e^s, e^{-s}), summed over
  the full dual lattice, is integrated over s ∈ [0, log ε_1) with composite
  Gauss-Legendre.  Along the curve the (g-1)-form Σ (-1)^j t_j dt_{ĵ} equals
  -2 ds; the positive orientation (the one for which dy_1/y_1 ∧ dy_2/y_2
  is positive) takes +2 ds.

The monomial 𝐞_1^k ... 𝐞_g^k converts to N𝐚^{⊗k}/k!^g by the factor
N(a)^{-k} (k!)^g.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, log

import mpmath
import numpy as np

from ..field import SignCharacter
from ..field.units import UnsupportedDegreeError
from ..zeta.lattice_sum import lattice_character_sum, orbit_density, taper, taper_tail_integral
from .context import TorsionDistribution, TorusContext
from .current import TWO_PI_I, _reduce, eis_current

__all__ = [
    "GaussianSingularityError",
    "pushforward_closed_form",
    "pushforward_quadrature",
    "gaussian_factor",
    "gaussian_moment",
    "gaussian_factor_regularized",
    "gaussian_extrapolation",
    "composite_gauss_legendre",
    "quadrature_order_check",
]

GL_NODES = 8
PANEL_WIDTH = 0.05


class GaussianSingularityError(ZeroDivisionError):
    pass


def _monomial_to_a(ctx: TorusContext, k: int) -> float:
    return float(ctx.ideal.norm) ** (-k) * factorial(k) ** ctx.g


def _closed_prefactor(ctx: TorusContext, k: int) -> complex:
    g = ctx.g
    with mpmath.workdps(30):
        pref = (
            (-1) ** (g - 1)
            * mpmath.mpf(factorial(k)) ** g
            / ((2j * mpmath.pi) ** (g * (k + 1)) * mpmath.sqrt(abs(ctx.field.discriminant)) * mpmath.mpf(float(ctx.ideal.norm)) ** (k + 1))
        )
        return complex(pref)


def pushforward_closed_form(ctx: TorusContext, beta: TorsionDistribution, k: int) -> complex:
    """Coefficient of N𝐚^{⊗k}/k!^g in u_{id,*} Eis^{gk}(β), via the lattice sum at s = k + 1.

    The value is real; the imaginary part of the truncated sum is checked
    against its size and then dropped (conjugate symmetrisation).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    g = ctx.g
    if beta.is_zero:
        return 0j
    reps = ctx.dual_reps
    eps = SignCharacter.for_weight(g, k + 1)
    tsum = lattice_character_sum(
        reps, beta.numerators(g), beta.coefficient_array(), beta.level, -1, float(k + 1), eps, ctx.taper
    )
    pref = _closed_prefactor(ctx, k)
    raw = pref * tsum.value
    scale = max(abs(raw), abs(pref) * float(np.sum(np.abs(beta.coefficient_array()))))
    if abs(raw.imag) > 1e-6 * scale:
        raise ArithmeticError(f"pushforward is not real: {raw}")
    return complex(raw.real, 0.0)


def composite_gauss_legendre(a: float, b: float, panels: int, nodes: int = GL_NODES) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite Gauss-Legendre rule on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def quadrature_order_check(nodes: int = 4, panels: int = 2) -> tuple[float, float]:
    """(observed error ratio under panel doubling, expected 2^{2·nodes}) on ∫_0^1 e^{3x} dx."""
    def err(p: int) -> float:
        xs, ws = composite_gauss_legendre(0.0, 1.0, p, nodes)
        with mpmath.workdps(40):
            val = mpmath.fsum(mpmath.mpf(float(w)) * mpmath.exp(3 * mpmath.mpf(float(x))) for x, w in zip(xs, ws))
            return float(abs(val - (mpmath.exp(3) - 1) / 3))

    return err(panels) / err(2 * panels), float(2 ** (2 * nodes))


def _tail_estimate(ctx: TorusContext, beta: TorsionDistribution, k: int) -> complex:
    """Mean-density estimate of the ρ with |N(ρ)| > R that the taper drops.

    Only σ = 0 contributes a non-oscillating mean; for g = 2 the integral
    over one period of the unfolded current of such ρ is the closed-form
    prefactor times |N(ρ)|^{-(k+1)} (sign character trivial for odd k).
    """
    if SignCharacter.for_weight(ctx.g, k + 1).size:
        return 0j
    mu = sum((float(l) for sigma, l in beta if not any(sigma)), 0.0)
    if mu == 0:
        return 0j
    s = float(k + 1)
    reps = ctx.dual_reps
    main = mu * orbit_density(reps) * reps.bound ** (1 - s) * taper_tail_integral(s, ctx.taper)
    return _closed_prefactor(ctx, k) * main


def pushforward_quadrature(
    ctx: TorusContext,
    beta: TorsionDistribution,
    k: int,
    *,
    panel_width: float = PANEL_WIDTH,
    nodes: int = GL_NODES,
    chunk: int = 2048,
    tail_correction: bool = True,
) -> complex:
    """Same coefficient as :func:`pushforward_closed_form`, by integrating the current over t.

    The current is the tapered ρ-sum; with ``tail_correction`` the part cut
    off by the taper is restored by its mean-density estimate, the same
    estimate the lattice sum uses.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    g = ctx.g
    if g > 2:
        raise UnsupportedDegreeError("pushforward quadrature implemented for g <= 2")
    if beta.is_zero:
        return 0j
    if g == 1:
        # the unit quotient of (F ⊗ R)^1_+ is a point: evaluate at t = 1
        jet = eis_current(ctx, beta, k, [1.0])[()]
        return jet[(k,)] * _monomial_to_a(ctx, k)
    reps = ctx.dual_reps
    phases = ctx.phases(beta, reps.coords)
    w = taper(np.abs(reps.norms) / ctx.bound, ctx.taper) * phases
    keep = w != 0
    emb, w = reps.embeddings[keep], w[keep]
    L = abs(ctx.unit_log)  # ε and ε^{-1} generate the same U
    if L == 0:
        raise ValueError("g = 2 needs a non-trivial unit group")
    panels = max(1, int(np.ceil(L / panel_width)))
    s, sw = composite_gauss_legendre(0.0, L, panels, nodes)
    # shifts j L cover every peak s* = ½ log|ρ_2/ρ_1| plus a tail of width W
    K2 = 2 * k
    width = -log(1e-18) / (2 * (K2 + 2))
    peaks = 0.5 * np.log(np.abs(emb[:, 1] / emb[:, 0])) if len(emb) else np.zeros(1)
    j_lo = int(np.floor((peaks.min() - width) / L)) - 1
    j_hi = int(np.ceil((peaks.max() + width) / L)) + 1
    # Eis^{2k}: (2k+1)!/(2k)! (-1) C(2k, k) N(ρ)^k N(t)^{2k} (2πi S)^{-(2k+2)} · c 2 N(ρ) · (2 ds)
    pref = (K2 + 1) * (-1) * comb(K2, k) * ctx.vol_constant * 2 * 2 / TWO_PI_I ** (K2 + 2)
    nrm = np.prod(emb, axis=1)
    total = 0j
    partial = []
    for start in range(0, len(emb), chunk):
        e = emb[start : start + chunk]
        coeff = w[start : start + chunk] * nrm[start : start + chunk] ** (k + 1)
        acc = np.zeros(e.shape[0])
        for j in range(j_lo, j_hi + 1):
            ss = s + j * L
            S = e[:, 0:1] ** 2 * np.exp(2 * ss)[None, :] + e[:, 1:2] ** 2 * np.exp(-2 * ss)[None, :]
            acc += (S ** (-(K2 + 2))) @ sw
        partial.append(coeff * acc)
    if partial:
        total = _reduce(np.concatenate(partial))
    value = complex(pref * total) * _monomial_to_a(ctx, k)
    if tail_correction:
        value += _tail_estimate(ctx, beta, k)
    return value


# the Gaussian factor ------------------------------------------------------------------
def gaussian_moment(a: complex, k: int) -> complex:
    """∫_0^∞ e^{-a y^2} y^{2k+1} dy = k! / (2 a^{k+1}) for Re a > 0 (boundary value on Re a = 0)."""
    if a == 0:
        raise GaussianSingularityError("a = 0")
    return factorial(k) / (2 * complex(a) ** (k + 1))


def gaussian_factor(rho_j: float, k: int) -> complex:
    """ρ_j^k ∫_0^∞ e^{-2πi ρ_j^2 y^2} y^{2k+1} dy = ρ_j^k k! / (2 (2πi ρ_j^2)^{k+1})."""
    if rho_j == 0:
        raise GaussianSingularityError("ρ_j must be non-zero")
    a = TWO_PI_I * rho_j**2
    return rho_j**k * gaussian_moment(a, k)


def gaussian_factor_regularized(rho_j: float, k: int, eps: float, dps: int = 30) -> complex:
    """ρ_j^k ∫_0^∞ e^{-(ε + 2πi ρ_j^2) y^2} y^{2k+1} dy by quadrature along a rotated ray.

    With a = ε + 2πiρ_j^2 the substitution y = r e^{-iθ}, θ = arg(a)/2, turns
    the integrand into e^{-|a| r^2} r^{2k+1} times a phase; the ray lies in
    the sector where the Gaussian decays, so the value is unchanged.
    """
    if rho_j == 0:
        raise GaussianSingularityError("ρ_j must be non-zero")
    with mpmath.workdps(dps):
        a = mpmath.mpf(eps) + 2j * mpmath.pi * mpmath.mpf(rho_j) ** 2
        theta = mpmath.arg(a) / 2
        rot = mpmath.exp(-1j * theta)
        f = lambda r: mpmath.exp(-a * (r * rot) ** 2) * (r * rot) ** (2 * k + 1) * rot
        scale = 1 / mpmath.sqrt(abs(a))
        val = mpmath.quad(f, [0, scale, 4 * scale, 12 * scale, mpmath.inf])
        return complex(mpmath.mpf(rho_j) ** k * val)


def gaussian_extrapolation(rho_j: float, k: int, eps_list=(1e-3, 1e-4, 1e-5, 1e-6)) -> tuple[complex, float]:
    """Richardson (polynomial) extrapolation of the regularised values to ε = 0.

    Returns the extrapolated value and its distance to :func:`gaussian_factor`.
    """
    xs = [float(e) for e in eps_list]
    ys = [gaussian_factor_regularized(rho_j, k, e) for e in xs]
    with mpmath.workdps(30):
        # Neville's scheme at x = 0
        p = [mpmath.mpc(y) for y in ys]
        n = len(xs)
        for m in range(1, n):
            for i in range(n - m):
                p[i] = ((0 - xs[i + m]) * p[i] + (xs[i] - 0) * p[i + 1]) / (xs[i] - xs[i + m])
        val = complex(p[0])
    exact = gaussian_factor(rho_j, k)
    return val, abs(val - exact)


@dataclass(frozen=True)
class PushforwardComparison:
    closed_form: complex
    quadrature: complex

    @property
    def relative_difference(self) -> float:
        ref = abs(self.closed_form)
        return abs(self.quadrature - self.closed_form) / ref if ref else abs(self.quadrature)
