"""Partial zeta and Hecke L-series of a totally real field at integer points.

Conventions (ascending embedding order throughout):

* ``M = f b^{-1}`` is the lattice of the partial zeta function and
  ``M^∨ = b (f D)^{-1}`` the index set of the Hecke series.
* The unit group is ``U = O*_{n f}`` (totally positive, ≡ 1 mod n f); the
  ``level`` n lets the coset point x be an n-torsion point.
* ``ζ(b, f, x, s)`` denotes the sum over totally positive ν ∈ x + M modulo U;
  this is the function the special-value formula returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from math import factorial, lcm

import mpmath
import numpy as np

from ..field import FieldElement, FractionalIdeal, SignCharacter, TotallyRealField, linalg
from ..field.orbits import OrbitReps, orbit_representatives
from ..field.units import RayUnitGroup, ray_units
from .gamma import gamma_factor, reciprocal_gamma_factor
from .lattice_sum import lattice_character_sum
from .shintani import shintani_coset_zeta

__all__ = [
    "DivergenceError",
    "ZetaQuery",
    "SpecialValueResult",
    "hecke_L",
    "partial_zeta_F",
    "special_value",
    "F_special_value",
    "F_oracle",
    "dual_orbit_reps",
]


class DivergenceError(ValueError):
    """The requested series does not converge absolutely at s."""


@dataclass(frozen=True)
class ZetaQuery:
    """Input of the series evaluators.

    ``b`` and ``f`` are coprime integral ideals, ``x`` the coset point,
    ``eps`` the sign character, ``s`` the evaluation point, ``bound`` the
    truncation R and ``level`` the torsion level n of ``x``.
    """

    field: TotallyRealField
    b: FractionalIdeal
    f: FractionalIdeal
    x: FieldElement
    eps: SignCharacter
    s: float
    bound: float = 1e4
    level: int = 1
    tolerance: float = 1e-8
    taper: str = "smooth"

    def __post_init__(self) -> None:
        one = FractionalIdeal.unit(self.field)
        if not (self.b.is_integral() and self.f.is_integral()):
            raise ValueError("b and f must be integral ideals")
        if self.b + self.f != one:
            raise ValueError("b and f must be coprime")
        if len(self.eps.signs) != self.field.g:
            raise ValueError("sign character has the wrong length")
        object.__setattr__(self, "x", self.field(self.x))

    @classmethod
    def simple(cls, field: TotallyRealField, x=0, s: float = 2, **kw) -> "ZetaQuery":
        """Query with b = f = O and trivial ε unless overridden."""
        one = FractionalIdeal.unit(field)
        kw.setdefault("eps", SignCharacter.trivial(field.g))
        return cls(field, kw.pop("b", one), kw.pop("f", one), field(x), s=s, **kw)

    # derived data ---------------------------------------------------------
    @property
    def lattice(self) -> FractionalIdeal:
        """M = f b^{-1}."""
        return self.f * self.b.inverse()

    @property
    def units(self) -> RayUnitGroup:
        return ray_units(self.field, self.f * Fraction(self.level))

    def with_(self, **kw) -> "ZetaQuery":
        return replace(self, **kw)


@dataclass(frozen=True)
class SpecialValueResult:
    """A (possibly truncated) value with its bookkeeping."""

    value: complex
    tail: float
    imag: float
    oracle: Fraction | None = None
    bound: float | None = None
    count: int = 0
    vanishing: bool = False
    extra: dict = dc_field(default_factory=dict)

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    @property
    def difference(self) -> float | None:
        if self.oracle is None:
            return None
        return abs(self.real - float(self.oracle))

    @property
    def relative_difference(self) -> float | None:
        if self.oracle is None:
            return None
        ref = abs(float(self.oracle))
        return self.difference / ref if ref else self.difference


_REPS_CACHE: dict = {}


def dual_orbit_reps(field: TotallyRealField, m: FractionalIdeal, units: RayUnitGroup, bound: float) -> OrbitReps:
    """Orbit representatives of ``M^∨ \\ 0`` with coordinates paired to M's HNF basis.

    The returned coordinates c satisfy ``c_i = Tr(λ m_i)`` for the HNF basis
    (m_i) of M, so ``Tr(λ x) = c · coords_M(x)`` for any x ∈ F.
    """
    key = (id(field), m, units.modulus, units.generators, float(bound))
    hit = _REPS_CACHE.get(key)
    if hit is None:
        dual = m.trace_dual()
        reps = orbit_representatives(field, dual, units, bound)
        paired = m.dual_basis_coords()
        change = linalg.inverse(linalg.transpose(paired))  # integral-basis coords -> paired coords
        t = linalg.mat_mul(change, linalg.transpose(dual.basis))
        tmat = np.array([[int(c) for c in row] for row in t], dtype=np.int64)
        coords = reps.coords @ tmat.T
        hit = OrbitReps(reps.field, tuple(tuple(r) for r in paired), None, coords, reps.embeddings, reps.bound, reps.units)
        _REPS_CACHE[key] = hit
        if len(_REPS_CACHE) > 32:
            _REPS_CACHE.pop(next(iter(_REPS_CACHE)))
    return hit


def _dual_reps(query: ZetaQuery) -> tuple[OrbitReps, FractionalIdeal]:
    m = query.lattice
    return dual_orbit_reps(query.field, m, query.units, query.bound), m


def _x_numerators(m: FractionalIdeal, x: FieldElement) -> tuple[np.ndarray, int]:
    coords = m.coordinates(x)
    den = lcm(*(c.denominator for c in coords)) if coords else 1
    return np.array([[int(c * den) for c in coords]], dtype=np.int64), den


def hecke_L(query: ZetaQuery) -> SpecialValueResult:
    """Truncated ``L(b, f, ε, x, s) = Σ_{λ ∈ M^∨/U} ε(λ) e^{2πi Tr(xλ)} / |N λ|^s``."""
    if query.s < 2:
        raise DivergenceError("hecke_L is evaluated only for s >= 2; use the Shintani oracle for other points")
    reps, m = _dual_reps(query)
    num, den = _x_numerators(m, query.x)
    tsum = lattice_character_sum(reps, num, np.ones(1), den, +1, query.s, query.eps, query.taper)
    return SpecialValueResult(
        tsum.value, tsum.tail, abs(tsum.value.imag), None, query.bound, tsum.count,
        extra={"main_term": tsum.main_term, "calibration": tsum.calibration},
    )


def partial_zeta_F(query: ZetaQuery) -> SpecialValueResult:
    """Truncated ``F(b, f, ε, x, s) = Σ_{ν ∈ (x + M)/U} ε(ν) / |N ν|^s`` for real s > 1."""
    if query.s <= 1.05:
        raise DivergenceError("partial_zeta_F needs s > 1 (plus a margin) for a bounded tail")
    reps = orbit_representatives(query.field, query.lattice, query.units, query.bound, offset=query.x)
    g = query.field.g
    zero = np.zeros((1, g), dtype=np.int64)
    tsum = lattice_character_sum(reps, zero, np.ones(1), 1, +1, query.s, query.eps, query.taper)
    return SpecialValueResult(tsum.value.real, tsum.tail, abs(tsum.value.imag), None, query.bound, tsum.count,
                              extra={"main_term": tsum.main_term})


def _covolume(query: ZetaQuery) -> mpmath.mpf:
    m = query.lattice
    return mpmath.sqrt(abs(query.field.discriminant)) * mpmath.mpf(m.norm.numerator) / m.norm.denominator


def special_value(
    b: FractionalIdeal,
    f: FractionalIdeal,
    x: FieldElement,
    k: int,
    *,
    bound: float = 1e4,
    level: int = 1,
    taper: str = "smooth",
    with_oracle: bool = True,
) -> SpecialValueResult:
    """ζ(b, f, x, 1-k) from the truncated Hecke series at s = k.

    ``ζ(1-k) = |d_F|^{-1/2} N(f^{-1} b) ((k-1)!)^g / (2πi)^{kg} · L(b, f, ε, x, k)``
    with ε trivial for even k and all signs for odd k.
    """
    field = b.field
    if k == 1:
        raise DivergenceError("k = 1 is not reachable by the series; use shintani_zeta")
    if k < 2:
        raise ValueError("k must be an integer >= 2")
    g = field.g
    eps = SignCharacter.for_weight(g, k)
    q = ZetaQuery(field, b, f, field(x), eps, float(k), bound, level, taper=taper)
    lres = hecke_L(q)
    with mpmath.workdps(30):
        pref = mpmath.mpf(factorial(k - 1)) ** g / (_covolume(q) * (2j * mpmath.pi) ** (k * g))
        raw = complex(pref * mpmath.mpc(lres.value))
    value = complex((raw + raw.conjugate()) / 2)
    tail = float(abs(pref)) * lres.tail
    oracle = None
    if with_oracle and g <= 2:
        oracle = shintani_coset_zeta(field, q.lattice, q.x, q.units, k - 1)
    return SpecialValueResult(value, tail, abs(raw.imag), oracle, bound, lres.count, extra={"L": lres.value})


def F_special_value(query: ZetaQuery, k: int) -> SpecialValueResult:
    """F(b, f, ε, x, 1-k) from the functional equation at s = k.

    ``Γ_ε(1-s) F(1-s) = i^{-|ε|} V^{-1} Γ_ε(s) L(s)``, V = covol(M), evaluated
    with 1/Γ_ε(1-k) so that the parity zeros come out exactly.
    """
    q = query.with_(s=float(k))
    lres = hecke_L(q)
    eps = query.eps
    with mpmath.workdps(30):
        factor = (1j) ** (-eps.size) / _covolume(q) * gamma_factor(eps, k) * reciprocal_gamma_factor(eps, 1 - k)
        raw = complex(factor * mpmath.mpc(lres.value))
    vanishing = abs(complex(factor)) == 0.0
    tail = float(abs(factor)) * lres.tail
    return SpecialValueResult(raw, tail, abs(raw.imag), None, q.bound, lres.count, vanishing=vanishing)


def F_oracle(query: ZetaQuery, k: int) -> Fraction:
    """Exact F(ε, 1-k) = Σ_η ε(η) ζ_η(1-k) from the signed Shintani oracle."""
    from itertools import product

    g = query.field.g
    total = Fraction(0)
    for eta in product((1, -1), repeat=g):
        sgn = 1
        for e, h in zip(query.eps.signs, eta):
            if e == -1:
                sgn *= h
        total += sgn * shintani_coset_zeta(query.field, query.lattice, query.x, query.units, k - 1, eta)
    return total
