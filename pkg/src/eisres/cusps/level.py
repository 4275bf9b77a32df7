"""The residue ring O/nO and the level group G(Z/n).

Residues are integer tuples in [0, n)^g: coordinates over the integral
basis of O (whose first element is 1) reduced mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from ..field import FieldElement, TotallyRealField

__all__ = ["Residue", "ResidueRing", "LevelGroupElement", "LevelGroupError", "RingTooLargeError"]

Residue = tuple[int, ...]
MAX_RING_SIZE = 10**4


class LevelGroupError(ValueError):
    """Determinant not in (Z/n)*, or a matrix with entries from another ring."""


class RingTooLargeError(ValueError):
    pass


class ResidueRing:
    """O/nO with multiplication through the structure constants of the integral basis."""

    def __init__(self, field: TotallyRealField, n: int) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if n**field.g > MAX_RING_SIZE:
            raise RingTooLargeError(f"|O/nO| = {n}^{field.g} exceeds {MAX_RING_SIZE}")
        self.field = field
        self.n = int(n)
        self.g = field.g
        basis = field.basis_elements()
        table = []
        for bi in basis:
            row = []
            for bj in basis:
                c = (bi * bj).coords
                if any(x.denominator != 1 for x in c):
                    raise ValueError("integral basis is not closed under multiplication")
                row.append(tuple(int(x) for x in c))
            table.append(row)
        self._table = table

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ResidueRing) and other.field is self.field and other.n == self.n

    def __hash__(self) -> int:
        return hash((id(self.field), self.n))

    @property
    def size(self) -> int:
        return self.n**self.g

    @property
    def zero(self) -> Residue:
        return (0,) * self.g

    @property
    def one(self) -> Residue:
        return (1 % self.n,) + (0,) * (self.g - 1)

    def reduce(self, x: FieldElement | Sequence[int] | int) -> Residue:
        """Residue of an integral element (or integer coordinates, or a rational integer)."""
        if isinstance(x, int):
            return ((x % self.n),) + (0,) * (self.g - 1)
        if isinstance(x, FieldElement):
            if not x.is_integral():
                raise ValueError(f"{x} is not integral")
            x = [int(c) for c in x.coords]
        return tuple(int(c) % self.n for c in x)

    def lift(self, r: Residue) -> FieldElement:
        """The lift with coordinates in [0, n)."""
        return self.field.element(r)

    def add(self, a: Residue, b: Residue) -> Residue:
        return tuple((x + y) % self.n for x, y in zip(a, b))

    def neg(self, a: Residue) -> Residue:
        return tuple(-x % self.n for x in a)

    def sub(self, a: Residue, b: Residue) -> Residue:
        return self.add(a, self.neg(b))

    def mul(self, a: Residue, b: Residue) -> Residue:
        out = [0] * self.g
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for r, c in enumerate(self._table[i][j]):
                    out[r] += x * y * c
        return tuple(v % self.n for v in out)

    def elements(self) -> Iterator[Residue]:
        return iter(product(range(self.n), repeat=self.g))

    def is_unit(self, a: Residue) -> bool:
        # a is a unit mod n iff no prime above n divides it iff N(a) is prime to n
        return gcd(int(self.lift(a).norm()), self.n) == 1

    @cached_property
    def _inverse_table(self) -> dict[Residue, Residue]:
        units = [a for a in self.elements() if self.is_unit(a)]
        inv: dict[Residue, Residue] = {}
        for a in units:
            if a in inv:
                continue
            for b in units:
                if self.mul(a, b) == self.one:
                    inv[a], inv[b] = b, a
                    break
        return inv

    def inverse(self, a: Residue) -> Residue:
        try:
            return self._inverse_table[tuple(a)]
        except KeyError:
            raise ZeroDivisionError(f"{a} is not a unit mod {self.n}") from None

    def rational(self, a: Residue) -> int | None:
        """The class in Z/n if a lies in the image of Z, else None."""
        return a[0] if not any(a[1:]) else None

    def sort_key(self, a: Residue) -> tuple:
        """Order 0 < 1 < (everything else, lexicographic)."""
        return (0 if a == self.zero else 1 if a == self.one else 2, a)


@dataclass(frozen=True)
class LevelGroupElement:
    """(a b; c d) over O/nO with ad - bc ∈ (Z/n)*."""

    ring: ResidueRing
    a: Residue
    b: Residue
    c: Residue
    d: Residue

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, self.ring.reduce(getattr(self, name)))
        det = self.det
        m = self.ring.rational(det)
        if m is None or gcd(m, self.ring.n) != 1:
            raise LevelGroupError(f"determinant {det} is not in (Z/{self.ring.n})*")

    @classmethod
    def from_entries(cls, ring: ResidueRing, entries: Sequence[object]) -> "LevelGroupElement":
        """From four entries (ints, coordinate sequences or integral field elements), row-major."""
        if len(entries) != 4:
            raise LevelGroupError("a 2x2 matrix needs four entries")
        return cls(ring, *(ring.reduce(e if isinstance(e, (int, FieldElement)) else tuple(e)) for e in entries))

    @classmethod
    def identity(cls, ring: ResidueRing) -> "LevelGroupElement":
        return cls(ring, ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def unipotent(cls, ring: ResidueRing, b: Residue) -> "LevelGroupElement":
        return cls(ring, ring.one, b, ring.zero, ring.one)

    @classmethod
    def diagonal(cls, ring: ResidueRing, u: Residue, v: Residue) -> "LevelGroupElement":
        return cls(ring, u, ring.zero, ring.zero, v)

    @property
    def det(self) -> Residue:
        R = self.ring
        return R.sub(R.mul(self.a, self.d), R.mul(self.b, self.c))

    @property
    def det_int(self) -> int:
        return self.ring.rational(self.det)  # type: ignore[return-value]

    @property
    def entries(self) -> tuple[Residue, Residue, Residue, Residue]:
        return (self.a, self.b, self.c, self.d)

    @property
    def bottom_row(self) -> tuple[Residue, Residue]:
        return (self.c, self.d)

    def __mul__(self, other: "LevelGroupElement") -> "LevelGroupElement":
        if other.ring != self.ring:
            raise LevelGroupError("matrices over different rings")
        R = self.ring
        return LevelGroupElement(
            R,
            R.add(R.mul(self.a, other.a), R.mul(self.b, other.c)),
            R.add(R.mul(self.a, other.b), R.mul(self.b, other.d)),
            R.add(R.mul(self.c, other.a), R.mul(self.d, other.c)),
            R.add(R.mul(self.c, other.b), R.mul(self.d, other.d)),
        )

    def inverse(self) -> "LevelGroupElement":
        R = self.ring
        di = R.reduce(pow(self.det_int, -1, R.n))
        return LevelGroupElement(R, R.mul(di, self.d), R.mul(di, R.neg(self.b)), R.mul(di, R.neg(self.c)), R.mul(di, self.a))

    def __pow__(self, e: int) -> "LevelGroupElement":
        base = self if e >= 0 else self.inverse()
        out = LevelGroupElement.identity(self.ring)
        for _ in range(abs(e)):
            out = out * base
        return out

    def is_special(self) -> bool:
        return self.det == self.ring.one

    def sort_key(self) -> tuple:
        return tuple(self.ring.sort_key(x) for x in self.entries)

    def __repr__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.ring.n}"
