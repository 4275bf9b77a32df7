"""Torus data: the context (F, a, n, U, R, K), torus points and torsion distributions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import sqrt
from typing import Iterable, Sequence

import numpy as np

from ..field import FieldElement, FractionalIdeal, TotallyRealField, ray_units
from ..field.orbits import OrbitReps
from ..field.units import RayUnitGroup
from ..forms.jets import JetSeries
from ..zeta.series import dual_orbit_reps

__all__ = [
    "InvalidDistributionError",
    "TorusContext",
    "TorusPoint",
    "TorsionDistribution",
    "q_transport",
]


class InvalidDistributionError(ValueError):
    """Coefficients do not sum to zero, or a point is not n-torsion."""


@dataclass(frozen=True)
class TorusPoint:
    """t ∈ (F ⊗ R)^1_+: g positive reals with product 1."""

    t: tuple[float, ...]

    def __post_init__(self) -> None:
        t = tuple(float(x) for x in self.t)
        if any(x <= 0 for x in t):
            raise ValueError("torus point coordinates must be positive")
        if abs(float(np.prod(t)) - 1.0) > 1e-12:
            raise ValueError("torus point must have norm 1")
        object.__setattr__(self, "t", t)

    @classmethod
    def from_log(cls, s: Sequence[float]) -> "TorusPoint":
        """g = len(s) + 1 with t_i = exp(s_i) for i < g-1 and t_g fixed by Nt = 1."""
        s = [float(x) for x in s]
        t = [float(np.exp(x)) for x in s]
        t.append(float(np.exp(-sum(s))))
        return cls(tuple(t))

    @classmethod
    def identity(cls, g: int) -> "TorusPoint":
        return cls((1.0,) * g)

    @property
    def g(self) -> int:
        return len(self.t)

    def array(self) -> np.ndarray:
        return np.array(self.t)


@dataclass(frozen=True)
class TorsionDistribution:
    """Σ l_σ (σ) with σ ∈ ((1/n) Z / Z)^r given by rational coordinates.

    For a torus T_a the coordinates refer to the HNF basis of a (r = g); for
    pairs in ((1/n)O/O)^2 the first g entries are the first component.
    The support is canonical: coordinates in [0, 1), duplicates merged,
    zero coefficients dropped, lexicographic order.
    """

    level: int
    support: tuple[tuple[Fraction, ...], ...]
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = int(self.level)
        if n < 1:
            raise InvalidDistributionError("level must be positive")
        acc: dict[tuple[Fraction, ...], Fraction] = {}
        for pt, c in zip(self.support, self.coefficients):
            red = []
            for x in pt:
                x = Fraction(x)
                if (x * n).denominator != 1:
                    raise InvalidDistributionError(f"point {pt} is not {n}-torsion")
                red.append(x - (x.numerator // x.denominator))
            key = tuple(red)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        items = sorted((k, v) for k, v in acc.items() if v != 0)
        if sum((v for _, v in items), Fraction(0)) != 0:
            raise InvalidDistributionError("coefficients of a distribution in L[D]^0 must sum to zero")
        if len({len(k) for k, _ in items}) > 1:
            raise InvalidDistributionError("points of different ranks")
        object.__setattr__(self, "level", n)
        object.__setattr__(self, "support", tuple(k for k, _ in items))
        object.__setattr__(self, "coefficients", tuple(v for _, v in items))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[object], object]], level: int) -> "TorsionDistribution":
        pairs = list(pairs)
        return cls(level, tuple(tuple(Fraction(x) for x in p) for p, _ in pairs), tuple(Fraction(c) for _, c in pairs))

    @classmethod
    def difference(cls, sigma: Sequence[object], sigma_prime: Sequence[object], level: int) -> "TorsionDistribution":
        """(σ) - (σ′)."""
        return cls.from_pairs([(sigma, 1), (sigma_prime, -1)], level)

    @classmethod
    def zero(cls, level: int) -> "TorsionDistribution":
        return cls(level, (), ())

    @property
    def is_zero(self) -> bool:
        return not self.support

    @property
    def rank(self) -> int | None:
        return len(self.support[0]) if self.support else None

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self):
        return iter(zip(self.support, self.coefficients))

    def numerators(self, rank: int | None = None) -> np.ndarray:
        """Integer array ``n · σ`` of shape (#support, rank)."""
        r = self.rank if rank is None else rank
        if not self.support:
            return np.zeros((0, r or 0), dtype=np.int64)
        return np.array([[int(x * self.level) for x in p] for p in self.support], dtype=np.int64)

    def coefficient_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.coefficients], dtype=np.complex128)

    def __add__(self, other: "TorsionDistribution") -> "TorsionDistribution":
        if other.level != self.level:
            raise InvalidDistributionError("levels differ")
        return TorsionDistribution(self.level, self.support + other.support, self.coefficients + other.coefficients)

    def scale(self, c: object) -> "TorsionDistribution":
        return TorsionDistribution(self.level, self.support, tuple(Fraction(c) * x for x in self.coefficients))

    def __neg__(self) -> "TorsionDistribution":
        return self.scale(-1)

    def __sub__(self, other: "TorsionDistribution") -> "TorsionDistribution":
        return self + (-other)

    def map_points(self, fn) -> "TorsionDistribution":
        """Relabel the support by ``fn`` (coefficients travel with their points)."""
        return TorsionDistribution(self.level, tuple(tuple(fn(p)) for p in self.support), self.coefficients)


@dataclass(frozen=True)
class TorusContext:
    """Data of the torus T_a = (F ⊗ R)/a with level-n structure.

    ``bound`` is the cut-off R for |N(ρ)| in ρ-sums, ``jet_degree`` the
    truncation K of the jet algebra and ``taper`` the cut-off profile.
    """

    field: TotallyRealField
    ideal: FractionalIdeal
    level: int = 3
    bound: float = 1e4
    jet_degree: int = 4
    taper: str = "smooth"
    units: RayUnitGroup | None = dc_field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.bound <= 0 or self.jet_degree < 0:
            raise ValueError("bound must be positive and the jet degree non-negative")
        if self.units is None:
            object.__setattr__(self, "units", ray_units(self.field, self.level))

    @classmethod
    def standard(cls, field: TotallyRealField, level: int = 3, **kw) -> "TorusContext":
        return cls(field, FractionalIdeal.unit(field), level, **kw)

    def with_(self, **kw) -> "TorusContext":
        from dataclasses import replace

        if "level" in kw and "units" not in kw:
            kw["units"] = None
        return replace(self, **kw)

    @property
    def g(self) -> int:
        return self.field.g

    @cached_property
    def vol_constant(self) -> float:
        """c in vol = c dx_1 ∧ ... ∧ dx_g, namely |d_F|^{-1/2} N(a)^{-1}."""
        return 1.0 / (sqrt(abs(self.field.discriminant)) * float(self.ideal.norm))

    @cached_property
    def dual_reps(self) -> OrbitReps:
        """U-orbit representatives of a^∨ \\ 0 with |N| <= R (coordinates paired with a's basis)."""
        return dual_orbit_reps(self.field, self.ideal, self.units, self.bound)

    @cached_property
    def unit_log(self) -> float:
        """log τ_1(ε) for the generator ε of U (0 for g = 1)."""
        if self.units.generator is None:
            return 0.0
        return float(np.log(self.units.generator.embed_float()[0]))

    def quadratic_form(self, v: Sequence[float], w: Sequence[float], t: Sequence[float] | None = None) -> float:
        """q_t(v, w) = q(t^{-1} v, t^{-1} w) with q = Σ x_i^2."""
        v, w = np.asarray(v, float), np.asarray(w, float)
        if t is not None:
            tt = np.asarray(t, float)
            v, w = v / tt, w / tt
        return float(v @ w)

    # torsion points -----------------------------------------------------------------
    def torsion_point(self, x: FieldElement | object) -> tuple[Fraction, ...]:
        """Coordinates of x ∈ (1/n)a in the HNF basis of a, reduced mod 1."""
        coords = self.ideal.coordinates(self.field(x))
        out = []
        for c in coords:
            if (c * self.level).denominator != 1:
                raise InvalidDistributionError(f"{x} is not in (1/{self.level}) a")
            out.append(c - (c.numerator // c.denominator))
        return tuple(out)

    def torsion_element(self, coords: Sequence[Fraction]) -> FieldElement:
        out = self.field.zero
        for c, b in zip(coords, self.ideal.basis_elements()):
            out = out + b * Fraction(c)
        return out

    def distribution(self, pairs: Iterable[tuple[FieldElement | object, object]]) -> TorsionDistribution:
        """Distribution from (field element, coefficient) pairs."""
        return TorsionDistribution.from_pairs(((self.torsion_point(x), c) for x, c in pairs), self.level)

    def all_torsion_points(self) -> list[tuple[Fraction, ...]]:
        from itertools import product

        return [tuple(Fraction(i, self.level) for i in idx) for idx in product(range(self.level), repeat=self.g)]

    # ρ helpers ----------------------------------------------------------------------
    def rho_embedding(self, rho: FieldElement | Sequence[float]) -> np.ndarray:
        if isinstance(rho, FieldElement):
            return rho.embed_float()
        return np.asarray(rho, dtype=float)

    def rho_pairing(self, rho: FieldElement) -> tuple[Fraction, ...]:
        """Exact Tr(ρ a_j) for the HNF basis (a_j) of a."""
        return tuple(Fraction((rho * b).trace()) for b in self.ideal.basis_elements())

    def phase(self, beta: TorsionDistribution, rho: FieldElement) -> complex:
        """e^{-2πi ρ(β)} = Σ_σ l_σ exp(-2πi Tr(ρσ)), with Tr(ρσ) reduced mod 1 exactly."""
        if beta.is_zero:
            return 0j
        pairing = self.rho_pairing(rho)
        total = 0j
        for sigma, l in beta:
            tr = sum((Fraction(s) * p for s, p in zip(sigma, pairing)), Fraction(0))
            frac = tr - (tr.numerator // tr.denominator)
            total += float(l) * complex(np.exp(-2j * np.pi * float(frac)))
        return total

    def phases(self, beta: TorsionDistribution, coords: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`phase` for paired integer coordinates of ρ."""
        coords = np.asarray(coords, dtype=np.int64)
        if beta.is_zero or coords.shape[0] == 0:
            return np.zeros(coords.shape[0], dtype=np.complex128)
        n = beta.level
        table = np.exp(-2j * np.pi * np.arange(n) / n)
        idx = np.mod(coords @ beta.numerators(self.g).T, n)
        return table[idx] @ beta.coefficient_array()


def q_transport(ctx: TorusContext, t: TorusPoint | Sequence[float], rho: FieldElement | Sequence[float]) -> tuple[np.ndarray, float, JetSeries]:
    """(q_t(ρ), ρ(q_t(ρ)), 𝐪_t(ρ)): coordinates t_i^2 ρ_i, Σ t_i^2 ρ_i^2, Σ t_i^2 ρ_i 𝐞_i."""
    tt = np.asarray(t.t if isinstance(t, TorusPoint) else t, dtype=float)
    r = ctx.rho_embedding(rho)
    vec = tt**2 * r
    return vec, float(vec @ r), JetSeries.linear(list(vec), ctx.jet_degree)
