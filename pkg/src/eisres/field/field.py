"""Totally real number fields, their elements and sign characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Iterable, Sequence

import mpmath
import numpy as np

from . import linalg

__all__ = [
    "FieldError",
    "TotallyRealField",
    "FieldElement",
    "SignCharacter",
    "embed",
    "norm_trace",
]

DEFAULT_PRECISION = 50


class FieldError(ValueError):
    """Raised for invalid field data (non-totally-real polynomial, bad basis...)."""


def _poly_mulmod(a: list[Fraction], b: list[Fraction], mod: tuple[int, ...]) -> list[Fraction]:
    """Multiply power-basis coefficient lists (ascending) modulo a monic polynomial.

    ``mod`` is given in descending order, leading coefficient 1.
    """
    g = len(mod) - 1
    prod = [Fraction(0)] * (2 * g - 1 if g else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # reduce: theta^g = -(c_{g-1} theta^{g-1} + ... + c_0)
    low = list(reversed(mod[1:]))  # c_0 .. c_{g-1}
    for d in range(len(prod) - 1, g - 1, -1):
        c = prod[d]
        if c:
            prod[d] = Fraction(0)
            for i in range(g):
                prod[d - g + i] -= c * low[i]
    return prod[:g]


def _integer_root(poly: tuple[int, ...]) -> int | None:
    """An integer root of a monic integer polynomial, if any.

    For g <= 3 the absence of one proves irreducibility over Q; quartic and
    higher inputs are not checked further.
    """
    c0 = poly[-1]
    if c0 == 0:
        return 0
    cands = {d for i in range(1, isqrt(abs(c0)) + 1) if c0 % i == 0 for d in (i, abs(c0) // i)}
    for d in sorted(cands):
        for r in (d, -d):
            acc = 0
            for c in poly:
                acc = acc * r + c
            if acc == 0:
                return r
    return None


def _squarefree_part(n: int) -> tuple[int, int]:
    """Return (f, s) with n = f^2 s and s squarefree (sign kept in s)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    f, s, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return f, sign * s * n


class TotallyRealField:
    """A totally real field ``Q[θ]/(f)`` with an integral basis.

    Parameters
    ----------
    poly:
        Monic integer polynomial, coefficients in descending order
        (``[1, 0, -2]`` is ``θ^2 - 2``).
    basis:
        Optional integral basis, rows of power-basis coordinates (ascending
        powers of θ).  For ``g <= 2`` the maximal order is found
        automatically when omitted; for larger degrees the power basis is
        assumed to be maximal.
    units:
        Optional fundamental unit generators as integral-basis coordinates.
        Required when ``g > 2``.
    precision:
        Decimal digits used for the embeddings.
    """

    def __init__(
        self,
        poly: Sequence[int],
        basis: Sequence[Sequence[object]] | None = None,
        units: Sequence[Sequence[object]] | None = None,
        precision: int = DEFAULT_PRECISION,
        name: str | None = None,
    ) -> None:
        poly = tuple(int(c) for c in poly)
        if len(poly) < 2 or poly[0] != 1:
            raise FieldError("defining polynomial must be monic of degree >= 1")
        self.poly = poly
        self.g = len(poly) - 1
        if self.g > 1 and _integer_root(poly) is not None:
            raise FieldError(f"polynomial {poly} is reducible (integer root {_integer_root(poly)})")
        self.precision = int(precision)
        if self.precision < 15:
            raise FieldError("precision must be at least 15 digits")
        self.name = name or self._default_name()
        with mpmath.workdps(self.precision + 10):
            roots = mpmath.polyroots([mpmath.mpf(c) for c in poly], maxsteps=200, extraprec=4 * self.precision)
        roots = [mpmath.mpmathify(r) for r in roots]
        for r in roots:
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-self.precision // 2):
                raise FieldError(f"polynomial {poly} is not totally real")
        self.roots = tuple(sorted(mpmath.re(r) for r in roots))
        if any(abs(a - b) < mpmath.mpf(10) ** (-self.precision // 2) for a, b in zip(self.roots, self.roots[1:])):
            raise FieldError("polynomial has repeated roots")

        if basis is None:
            basis = self._maximal_order_basis()
        self.basis = linalg.as_matrix(basis)
        if len(self.basis) != self.g or any(len(r) != self.g for r in self.basis):
            raise FieldError("integral basis must be g rows of g power-basis coordinates")
        if linalg.determinant(self.basis) == 0:
            raise FieldError("integral basis is singular")
        self._basis_inv = linalg.inverse(self.basis)
        # structure constants: _mult[i][j] = integral-basis coords of w_i * w_j
        self._mult = [
            [self._from_power(_poly_mulmod(self.basis[i], self.basis[j], poly)) for j in range(self.g)]
            for i in range(self.g)
        ]
        self.one = self.element(self._from_power([Fraction(1)] + [Fraction(0)] * (self.g - 1)))
        if not self.one.is_integral():
            raise FieldError("1 is not in the span of the integral basis")
        for i in range(self.g):
            for j in range(self.g):
                if any(x.denominator != 1 for x in self._mult[i][j]):
                    raise FieldError("integral basis is not closed under multiplication")
        self._unit_coords = None if units is None else [tuple(Fraction(c) for c in u) for u in units]

    # ------------------------------------------------------------------ setup
    def _default_name(self) -> str:
        if self.g == 1:
            return "Q"
        if self.g == 2:
            b, c = self.poly[1], self.poly[2]
            f, s = _squarefree_part(b * b - 4 * c)
            return f"Q(sqrt{s})"
        return "F[" + ",".join(map(str, self.poly)) + "]"

    def _maximal_order_basis(self) -> list[list[Fraction]]:
        g = self.g
        if g == 1:
            return [[Fraction(1)]]
        if g > 2:
            return linalg.identity(g)
        b, c = self.poly[1], self.poly[2]
        disc = b * b - 4 * c
        f, s = _squarefree_part(disc)
        d0 = s if s % 4 == 1 else 4 * s
        f0sq, rem = divmod(disc, d0)
        f0 = isqrt(f0sq)
        if rem or f0 * f0 != f0sq:
            raise FieldError("could not determine the maximal order")
        # sqrt(d0) = (2θ + b)/f0 in the power basis
        sqrt_d0 = [Fraction(b, f0), Fraction(2, f0)]
        if d0 % 4 == 1:
            omega = [(1 + sqrt_d0[0]) / 2, sqrt_d0[1] / 2]
        else:
            omega = [sqrt_d0[0] / 2, sqrt_d0[1] / 2]
        return [[Fraction(1), Fraction(0)], omega]

    def _from_power(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(linalg.vec_mat(list(coeffs), self._basis_inv))

    # -------------------------------------------------------------- elements
    def element(self, coords: Iterable[object]) -> "FieldElement":
        c = tuple(Fraction(x) for x in coords)
        if len(c) != self.g:
            raise FieldError(f"expected {self.g} coordinates, got {len(c)}")
        return FieldElement(self, c)

    def __call__(self, value: object) -> "FieldElement":
        """Coerce a rational number (or an element of this field)."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError("element belongs to another field")
            return value
        return self.one * Fraction(value)

    def from_power_basis(self, coeffs: Sequence[object]) -> "FieldElement":
        return self.element(self._from_power([Fraction(c) for c in coeffs]))

    @cached_property
    def zero(self) -> "FieldElement":
        return self.element([0] * self.g)

    @cached_property
    def gen(self) -> "FieldElement":
        """The generator θ."""
        if self.g == 1:
            return self(-self.poly[1])
        return self.from_power_basis([0, 1] + [0] * (self.g - 2))

    def basis_elements(self) -> list["FieldElement"]:
        return [self.element([int(i == j) for j in range(self.g)]) for i in range(self.g)]

    # ------------------------------------------------------------ invariants
    @cached_property
    def embedding_matrix(self) -> list[list[mpmath.mpf]]:
        """``E[i][j] = τ_i(ω_j)`` at the field precision."""
        with mpmath.workdps(self.precision):
            return [
                [sum(row[p] * r**p for p in range(self.g)) for row in self.basis] for r in self.roots
            ]

    @cached_property
    def embedding_matrix_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.embedding_matrix])

    @cached_property
    def trace_form(self) -> linalg.Matrix:
        """Exact Gram matrix ``Tr(ω_i ω_j)``."""
        return [[self.element(self._mult[i][j]).trace() for j in range(self.g)] for i in range(self.g)]

    @cached_property
    def discriminant(self) -> int:
        d = linalg.determinant(self.trace_form)
        assert d.denominator == 1
        return int(d)

    @cached_property
    def different(self):
        from .ideal import FractionalIdeal

        return FractionalIdeal.unit(self).trace_dual().inverse()

    @cached_property
    def fundamental_units(self) -> list["FieldElement"]:
        """Generators of the free part of the unit group."""
        from .units import find_fundamental_units

        if self._unit_coords is not None:
            units = [self.element(c) for c in self._unit_coords]
            for u in units:
                if not u.is_integral() or abs(u.norm()) != 1:
                    raise FieldError(f"configured unit {u} does not have norm +-1")
            return units
        return find_fundamental_units(self)

    def __repr__(self) -> str:
        return f"TotallyRealField({self.name}, g={self.g})"

    def __reduce__(self):
        units = None if self._unit_coords is None else [list(u) for u in self._unit_coords]
        return (TotallyRealField, (self.poly, self.basis, units, self.precision, self.name))


class FieldElement:
    """Exact element of a :class:`TotallyRealField` (integral-basis coordinates)."""

    __slots__ = ("field", "coords", "_emb")

    def __init__(self, field: TotallyRealField, coords: tuple[Fraction, ...]) -> None:
        self.field = field
        self.coords = coords
        self._emb = None

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other: object) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.one._scale(Fraction(other))
        return NotImplemented  # type: ignore[return-value]

    def _scale(self, c: Fraction) -> "FieldElement":
        return FieldElement(self.field, tuple(c * x for x in self.coords))

    def __add__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other: object) -> "FieldElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other: object) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other: object) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        g = self.field.g
        mult = self.field._mult
        out = [Fraction(0)] * g
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        ab = a * b
                        for k, m in enumerate(mult[i][j]):
                            if m:
                                out[k] += ab * m
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.mult_matrix()
        return FieldElement(self.field, tuple(linalg.solve(m, self.field.one.coords)))

    def __truediv__(self, other: object) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self._scale(1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "FieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    # invariants -----------------------------------------------------------
    def mult_matrix(self) -> linalg.Matrix:
        """Matrix of multiplication by self on integral-basis coordinate columns."""
        cols = [(self * w).coords for w in self.field.basis_elements()]
        return linalg.transpose([list(c) for c in cols])

    def norm(self) -> Fraction:
        return linalg.determinant(self.mult_matrix())

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_rational(self) -> bool:
        one = self.field.one.coords
        k = next((i for i, c in enumerate(one) if c), 0)
        return self.coords == tuple(one[i] * (self.coords[k] / one[k]) for i in range(len(one)))

    def conjugate(self) -> "FieldElement":
        """Nontrivial Galois conjugate (quadratic fields only)."""
        if self.field.g != 2:
            raise FieldError("conjugate() is only defined for quadratic fields")
        return self.field(self.trace()) - self

    def embed(self) -> list[mpmath.mpf]:
        if self._emb is None:
            e = self.field.embedding_matrix
            with mpmath.workdps(self.field.precision):
                self._emb = [
                    mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * row[j] for j, c in enumerate(self.coords))
                    for row in e
                ]
        return self._emb

    def embed_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.embed()])

    def signs(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ZeroDivisionError("sign of zero")
        out = []
        for x in self.embed():
            if x == 0:  # pragma: no cover - only for precision exhaustion
                raise FieldError("embedding vanishes at working precision")
            out.append(1 if x > 0 else -1)
        return tuple(out)

    def is_totally_positive(self) -> bool:
        return not self.is_zero() and all(s > 0 for s in self.signs())

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*w{i}")
        return "(" + (" + ".join(parts) if parts else "0") + ")"


@dataclass(frozen=True)
class SignCharacter:
    """Sign character ε on (F⊗R)*, one sign per embedding."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("sign character entries must be +1 or -1")

    @classmethod
    def trivial(cls, g: int) -> "SignCharacter":
        return cls((1,) * g)

    @classmethod
    def for_weight(cls, g: int, k: int) -> "SignCharacter":
        """The parity-matched character: trivial for even k, all signs for odd k."""
        return cls((1,) * g if k % 2 == 0 else (-1,) * g)

    @property
    def size(self) -> int:
        """|ε|, the number of nontrivial factors."""
        return sum(1 for s in self.signs if s == -1)

    def __call__(self, x: FieldElement | Sequence[float] | np.ndarray) -> int:
        sg = x.signs() if isinstance(x, FieldElement) else tuple(1 if v > 0 else -1 for v in x)
        out = 1
        for e, s in zip(self.signs, sg):
            if e == -1:
                out *= s
        return out

    def weights(self, embeddings: np.ndarray) -> np.ndarray:
        """Vectorised ε over an (N, g) array of embedding vectors."""
        w = np.ones(embeddings.shape[0])
        for i, e in enumerate(self.signs):
            if e == -1:
                w = w * np.sign(embeddings[:, i])
        return w


def embed(field: TotallyRealField, x: FieldElement) -> list[mpmath.mpf]:
    """Embedding vector ``(τ_1(x), ..., τ_g(x))`` in ascending-root order."""
    return field(x).embed()


def norm_trace(field: TotallyRealField, x: FieldElement) -> tuple[Fraction, Fraction]:
    """Exact norm and trace via the multiplication-by-x matrix."""
    x = field(x)
    return x.norm(), x.trace()
