"""Truncated character sums over unit-orbit representatives.

The generic sum is

    S = Σ_{λ ∈ (offset + L)/U, 0 < |N λ| <= R}  ε(λ) · χ(λ) · φ(|Nλ|/R) / |N λ|^s

where χ(λ) = Σ_σ l_σ exp(±2πi Tr(λσ)) is an additive character combination
and φ is a cut-off profile.  With the smooth profile the truncation error of
the oscillating part decays faster than any power of R; the non-oscillating
part (classes with σ ≡ 0 and trivial ε) has a pole at s = 1 whose
contribution beyond the cut-off is added back analytically from the orbit
density ``2^g · Reg(U) / covol(L)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import log

import mpmath
import numpy as np

from .. import _kernels
from ..field import SignCharacter
from ..field.orbits import OrbitReps

__all__ = [
    "TruncatedSum",
    "taper",
    "taper_tail_integral",
    "orbit_density",
    "lattice_character_sum",
    "TAPERS",
]

TAPERS = ("smooth", "sharp")
TAPER_START = 0.5


def _step(t: np.ndarray) -> np.ndarray:
    """C^∞ step from 1 (t <= 0) to 0 (t >= 1)."""
    t = np.clip(t, 0.0, 1.0)
    out = np.empty_like(t)
    lo, hi = t <= 0.0, t >= 1.0
    mid = ~(lo | hi)
    out[lo], out[hi] = 1.0, 0.0
    tm = t[mid]
    a = np.exp(-1.0 / (1.0 - tm))
    b = np.exp(-1.0 / tm)
    out[mid] = a / (a + b)
    return out


def taper(u: np.ndarray, kind: str = "smooth") -> np.ndarray:
    """Cut-off profile φ(u) on u = |N|/R: 1 on [0, 1/2], C^∞ down to 0 at 1."""
    u = np.asarray(u, dtype=np.float64)
    if kind == "sharp":
        return (u <= 1.0).astype(np.float64)
    if kind != "smooth":
        raise ValueError(f"unknown taper {kind!r}; expected one of {TAPERS}")
    return _step((u - TAPER_START) / (1.0 - TAPER_START))


@lru_cache(maxsize=64)
def taper_tail_integral(s: float, kind: str = "smooth") -> float:
    """∫_0^∞ (1 - φ(u)) u^{-s} du for s > 1."""
    if s <= 1:
        raise ValueError("tail integral diverges for s <= 1")
    if kind == "sharp":
        return 1.0 / (s - 1.0)

    def f(u):
        t = (u - TAPER_START) / (1 - TAPER_START)
        if t <= 0:
            return mpmath.mpf(0)
        if t >= 1:
            return u ** (-s)
        a, b = mpmath.exp(-1 / (1 - t)), mpmath.exp(-1 / t)
        return (1 - a / (a + b)) * u ** (-s)

    with mpmath.workdps(30):
        val = mpmath.quad(f, [TAPER_START, 0.75, 1]) + mpmath.mpf(1) / (s - 1)
    return float(val)


def orbit_density(reps: OrbitReps) -> float:
    """D with #{orbits with |N| <= X} ~ D X."""
    bmat = np.array([reps.field.element(r).embed_float() for r in reps.basis]).T
    covol = abs(np.linalg.det(bmat))
    g = reps.field.g
    reg = 1.0
    if g == 2:
        reg = reps.units.regulator
    return (2**g) * reg / covol


@dataclass(frozen=True)
class TruncatedSum:
    """Value of a truncated lattice sum plus bookkeeping for reports."""

    value: complex
    count: int
    bound: float
    s: float
    taper: str
    main_term: complex
    calibration: float

    @property
    def tail(self) -> float:
        """Crude tail size ``C R^{1-s} (1 + log R)`` with ``C`` fitted to the orbit count."""
        r = self.bound
        return self.calibration * r ** (1 - self.s) * (1 + log(r))


def lattice_character_sum(
    reps: OrbitReps,
    numerators: np.ndarray,
    coefficients: np.ndarray,
    n: int,
    sign: int,
    s: float,
    eps: SignCharacter,
    taper_kind: str = "smooth",
    density_correction: bool = True,
) -> TruncatedSum:
    """Evaluate the sum described in the module docstring.

    ``reps.coords`` must be coordinates in a basis dual to the one in which
    ``numerators`` are written, so that ``Tr(λσ) = coords·numerators / n``.
    """
    numerators = np.atleast_2d(np.asarray(numerators, dtype=np.int64))
    coefficients = np.asarray(coefficients, dtype=np.complex128).reshape(-1)
    absn = np.abs(reps.norms)
    r = reps.bound
    weights = eps.weights(reps.embeddings) * taper(absn / r, taper_kind) * absn ** (-float(s)) if len(reps) else np.zeros(0)
    val = _kernels.character_sum(reps.coords, numerators, coefficients, int(n), int(sign), weights)
    main = 0j
    if density_correction and s > 1 and eps.size == 0:
        mu = complex(sum(c for c, num in zip(coefficients, numerators) if not np.any(np.mod(num, n))))
        if mu != 0:
            main = mu * orbit_density(reps) * r ** (1 - s) * taper_tail_integral(float(s), taper_kind)
    cal = float(np.sum(np.abs(coefficients))) * len(reps) / (r * (1 + log(r))) if r > 1 else float(len(reps))
    return TruncatedSum(complex(val) + main, len(reps), r, float(s), taper_kind, main, cal)
