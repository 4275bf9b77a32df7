"""Fractional ideals as exact rational lattices in Hermite normal form."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .field import FieldElement, FieldError, TotallyRealField

__all__ = ["InvalidIdealError", "FractionalIdeal", "trace_dual", "std_dual_basis"]


class InvalidIdealError(FieldError):
    pass


def std_dual_basis(rows: linalg.Matrix) -> linalg.Matrix:
    """Basis of the dual lattice w.r.t. the standard dot product on coordinates."""
    return linalg.transpose(linalg.inverse(rows))


class FractionalIdeal:
    """A nonzero fractional ideal, stored by the HNF of its integral-basis coordinates.

    ``basis`` rows are coordinates over the field's integral basis; the HNF
    makes the representation unique per lattice, so equality and hashing are
    structural.
    """

    __slots__ = ("field", "basis", "__dict__")

    def __init__(self, field: TotallyRealField, rows: Sequence[Sequence[object]]) -> None:
        rows = linalg.as_matrix(rows)
        if len(rows) < field.g:
            raise InvalidIdealError("too few generators for a full-rank lattice")
        hnf = linalg.rational_hnf(rows)
        if len(hnf) != field.g:
            raise InvalidIdealError("generators do not span a rank-g lattice")
        self.field = field
        self.basis: linalg.Matrix = hnf

    # constructors -----------------------------------------------------------
    @classmethod
    def unit(cls, field: TotallyRealField) -> "FractionalIdeal":
        return cls(field, linalg.identity(field.g))

    @classmethod
    def from_generators(cls, field: TotallyRealField, gens: Iterable[FieldElement | int | Fraction]) -> "FractionalIdeal":
        """O-module generated by the given elements."""
        rows = []
        for x in gens:
            x = field(x)
            rows.extend(list((x * w).coords) for w in field.basis_elements())
        if not rows:
            raise InvalidIdealError("no generators")
        return cls(field, rows)

    @classmethod
    def principal(cls, field: TotallyRealField, x: FieldElement | int | Fraction) -> "FractionalIdeal":
        x = field(x)
        if x.is_zero():
            raise InvalidIdealError("the zero ideal is not a fractional ideal")
        return cls.from_generators(field, [x])

    # structure ----------------------------------------------------------------
    def basis_elements(self) -> list[FieldElement]:
        return [self.field.element(r) for r in self.basis]

    @cached_property
    def norm(self) -> Fraction:
        """Absolute norm ``[O : a]`` (extended multiplicatively)."""
        return abs(linalg.determinant(self.basis))

    @cached_property
    def embedding_basis(self) -> np.ndarray:
        """Float matrix ``B[i, j] = τ_i(a_j)``."""
        return np.array([e.embed_float() for e in self.basis_elements()]).T

    @cached_property
    def covolume(self) -> float:
        """Covolume in the Minkowski embedding, ``|d_F|^{1/2} N(a)``."""
        return float(abs(self.field.discriminant) ** 0.5 * self.norm)

    def coordinates(self, x: FieldElement) -> list[Fraction]:
        """Coordinates of ``x`` with respect to this lattice's basis."""
        return linalg.solve(linalg.transpose(self.basis), self.field(x).coords)

    def contains(self, x: FieldElement | int | Fraction) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(self.field(x)))

    __contains__ = contains

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for row in self.basis for c in row)

    # operations -------------------------------------------------------------
    def __mul__(self, other: "FractionalIdeal | FieldElement | int | Fraction") -> "FractionalIdeal":
        if not isinstance(other, FractionalIdeal):
            other = FractionalIdeal.principal(self.field, other)
        gens = [a * b for a in self.basis_elements() for b in other.basis_elements()]
        return FractionalIdeal.from_generators(self.field, gens)

    __rmul__ = __mul__

    def __add__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return FractionalIdeal(self.field, self.basis + other.basis)

    def trace_dual(self) -> "FractionalIdeal":
        """``{ρ : Tr(ρ a) ⊆ Z}``; returned in HNF; see :meth:`dual_basis_coords` for the paired basis."""
        return FractionalIdeal(self.field, self.dual_basis_coords())

    def dual_basis_coords(self) -> linalg.Matrix:
        """Rows ρ_i with ``Tr(ρ_i a_j) = δ_ij`` for the HNF basis a_j."""
        t = self.field.trace_form
        try:
            m = linalg.mat_mul(t, linalg.transpose(self.basis))  # T A^T
            return linalg.transpose(linalg.inverse(m))  # rows of (T A^T)^{-1}
        except ZeroDivisionError as exc:  # pragma: no cover - guarded by constructor
            raise InvalidIdealError("singular basis matrix") from exc

    def inverse(self) -> "FractionalIdeal":
        """``{x : x a ⊆ O}``, computed as an intersection of lattices."""
        # x a_j in O  <=>  M_j x in Z^g, i.e. x lies in the column lattice
        # M_j^{-1} Z^g.  Its dual is spanned by the rows of M_j, and the
        # intersection over j is the dual of the sum of those duals.
        rows = [r for a in self.basis_elements() for r in a.mult_matrix()]
        return FractionalIdeal(self.field, std_dual_basis(linalg.rational_hnf(rows)))

    def __truediv__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FractionalIdeal":
        if e < 0:
            return self.inverse() ** (-e)
        out = FractionalIdeal.unit(self.field)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c: FieldElement | int | Fraction) -> "FractionalIdeal":
        return self * c

    def reduce(self, x: FieldElement) -> FieldElement:
        """Canonical representative of ``x`` modulo this lattice (box reduction)."""
        c = list(self.field(x).coords)
        for row in self.basis:
            p = next(i for i, v in enumerate(row) if v != 0)
            q = (c[p] / row[p]).__floor__()
            if q:
                c = [a - q * b for a, b in zip(c, row)]
        return self.field.element(c)

    # comparison -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        return self.field is other.field and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(tuple(map(tuple, self.basis)))

    def __repr__(self) -> str:
        rows = "; ".join(",".join(str(x) for x in r) for r in self.basis)
        return f"FractionalIdeal[{rows}]"


def trace_dual(field: TotallyRealField, a: FractionalIdeal) -> FractionalIdeal:
    """Trace-dual lattice ``a^∨ = {ρ : Tr(ρ a) ⊆ Z}``."""
    if a.field is not field:
        raise InvalidIdealError("ideal belongs to another field")
    return a.trace_dual()
