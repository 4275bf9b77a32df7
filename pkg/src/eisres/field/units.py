"""Unit groups: Pell-style search for g <= 2 and ray units O*_f."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

import mpmath

from .field import FieldElement, FieldError, TotallyRealField
from .ideal import FractionalIdeal

__all__ = [
    "UnsupportedDegreeError",
    "RayUnitGroup",
    "find_fundamental_units",
    "totally_positive_generator",
    "ray_units",
]

PELL_SEARCH_LIMIT = 10**7


class UnsupportedDegreeError(FieldError):
    pass


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    d, x, y = _ext_gcd(b, a % b)
    return d, y, x - (a // b) * y


def _quadratic_omega(field: TotallyRealField) -> tuple[FieldElement, int, int]:
    """Return ω with O = Z + Zω, plus Tr(ω) and N(ω) as integers."""
    c1, c2 = (int(c) for c in field.one.coords)
    # 1 is primitive in O, so some (x, y) has c1*y - c2*x = 1.
    d, y, mx = _ext_gcd(c1, -c2)
    if d != 1:
        raise FieldError("1 is not primitive in the integral basis")
    b1, b2 = field.basis_elements()
    w = b1 * mx + b2 * y
    return w, int(w.trace()), int(w.norm())


def find_fundamental_units(field: TotallyRealField) -> list[FieldElement]:
    """Fundamental units of O* (g <= 2), chosen with τ_g(ε) > 1."""
    if field.g == 1:
        return []
    if field.g > 2:
        raise UnsupportedDegreeError("automatic unit search is only implemented for g <= 2; supply units in the field config")
    w, tr, nm = _quadratic_omega(field)
    # N(a + b w) = a^2 + a b tr + b^2 nm = ±1.
    # b grows with τ_g(u) for u > 1, but ε and ε^2 can share the smallest b
    # (golden ratio: ω and 1 + ω), so collect that b's solutions and keep the least.
    for b in range(1, PELL_SEARCH_LIMIT):
        found = []
        for target in (1, -1):
            disc = b * b * tr * tr - 4 * (b * b * nm - target)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for num in (-b * tr + r, -b * tr - r):
                if num % 2:
                    continue
                u = field(num // 2) + w * b
                if abs(u.norm()) != 1:  # pragma: no cover - defensive
                    continue
                e = u.embed()
                if abs(e[-1]) > 1:
                    found.append((abs(e[-1]), u if e[-1] > 0 else -u))
        if found:
            return [min(found, key=lambda p: p[0])[1]]
    raise FieldError("fundamental unit search exceeded its limit")  # pragma: no cover


def totally_positive_generator(field: TotallyRealField) -> FieldElement | None:
    """Generator ε_+ of the totally positive units (g = 2), with τ_g(ε_+) > 1."""
    if field.g == 1:
        return None
    if field.g != 2:
        raise UnsupportedDegreeError("totally positive unit generator only for g <= 2")
    (eps,) = field.fundamental_units
    if eps.is_totally_positive():
        return eps
    if (-eps).is_totally_positive():  # pragma: no cover - excluded by τ_g > 0 choice
        return -eps
    return eps * eps


@dataclass(frozen=True)
class RayUnitGroup:
    """Totally positive units congruent to 1 modulo ``modulus``.

    ``exponent`` is the index of this group in the totally positive units
    (``generators[0] = ε_+ ** exponent`` for g = 2).
    """

    field: TotallyRealField
    modulus: FractionalIdeal
    generators: tuple[FieldElement, ...]
    exponent: int = 1
    base: FieldElement | None = None
    log_matrix: tuple[tuple[float, ...], ...] = dc_field(default=())

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def generator(self) -> FieldElement | None:
        return self.generators[0] if self.generators else None

    @property
    def regulator(self) -> float:
        """``|log τ_g(ε)|`` of the generator (1 for the trivial group of Q)."""
        if not self.generators:
            return 1.0
        return abs(self.log_matrix[0][-1])

    def contains(self, u: FieldElement) -> bool:
        return u.is_totally_positive() and abs(u.norm()) == 1 and u.is_integral() and self.modulus.contains(u - 1)


def _is_one_mod(x: FieldElement, modulus: FractionalIdeal) -> bool:
    return modulus.contains(x - 1)


def ray_units(field: TotallyRealField, n: int | FractionalIdeal = 1) -> RayUnitGroup:
    """Generators of ``O*_f`` with ``f = (n)`` (or a given integral ideal)."""
    modulus = n if isinstance(n, FractionalIdeal) else FractionalIdeal.principal(field, Fraction(int(n)))
    if isinstance(n, int) and n < 1:
        raise ValueError("level must be >= 1")
    if not modulus.is_integral():
        raise ValueError("modulus must be an integral ideal")
    if field.g == 1:
        return RayUnitGroup(field, modulus, (), 1, None, ())
    if field.g > 2:
        raise UnsupportedDegreeError("ray units only implemented for g <= 2")
    eps = totally_positive_generator(field)
    assert eps is not None
    # Iterate powers modulo the ideal to keep coordinates small.
    m, power = 1, modulus.reduce(eps)
    while not _is_one_mod(power, modulus):
        power = modulus.reduce(power * eps)
        m += 1
        if m > 10**6:  # pragma: no cover - bounded by |(O/f)*|
            raise FieldError("ray unit order search did not terminate")
    gen = eps**m
    with mpmath.workdps(field.precision):
        logs = tuple(float(mpmath.log(abs(x))) for x in gen.embed())
    return RayUnitGroup(field, modulus, (gen,), m, eps, (logs,))
