"""Scalar fields with analytic partial derivatives.

A :class:`ScalarField` is a small closed-form expression built from
constants, coordinate functions, sums, products, integer powers and
exponentials.  Every node knows its own partial derivatives, so derivative
oracles compose mechanically.  Constants may be complex numbers or
:class:`~eisres.forms.jets.JetSeries`, in which case the field is jet-valued.

Points are sequences of real coordinates; the ambient dimension is whatever
the caller uses consistently (2g for the (x, t) space of the torus bundle).
"""

from __future__ import annotations

from numbers import Number
from typing import Mapping, Sequence

import numpy as np

from .jets import JetSeries

__all__ = [
    "ScalarField",
    "Const",
    "Coord",
    "Sum",
    "Product",
    "Power",
    "Exp",
    "const",
    "coord",
    "exp",
    "ZERO",
    "ONE",
    "finite_difference_check",
]

Value = complex | JetSeries


def _is_zero_value(v: object) -> bool:
    if isinstance(v, JetSeries):
        return not np.any(v.data)
    return v == 0


def _is_one_value(v: object) -> bool:
    return not isinstance(v, JetSeries) and v == 1


class ScalarField:
    """Base class; use the module-level constructors to build fields."""

    __slots__ = ("_partials",)

    def __init__(self) -> None:
        self._partials: dict[int, ScalarField] = {}

    # evaluation ---------------------------------------------------------------
    def __call__(self, point: Sequence[float]) -> Value:
        return self._eval(point, {})

    evaluate = __call__

    def _eval(self, point: Sequence[float], memo: dict) -> Value:
        key = id(self)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = self._compute(point, memo)
        return hit

    def _compute(self, point: Sequence[float], memo: dict) -> Value:  # pragma: no cover - abstract
        raise NotImplementedError

    # derivatives ----------------------------------------------------------------
    def partial(self, i: int) -> "ScalarField":
        """Analytic ∂/∂x_i (cached per node)."""
        hit = self._partials.get(i)
        if hit is None:
            hit = self._partials[i] = self._derive(i)
        return hit

    def _derive(self, i: int) -> "ScalarField":  # pragma: no cover - abstract
        raise NotImplementedError

    def gradient(self, n: int) -> list["ScalarField"]:
        return [self.partial(i) for i in range(n)]

    def substitute(self, mapping: Mapping[int, "ScalarField"]) -> "ScalarField":
        """Replace coordinate i by ``mapping[i]`` (coordinates not in the map stay)."""
        return self._subst(mapping, {})

    def _subst(self, mapping, memo) -> "ScalarField":  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        return False

    # algebra ---------------------------------------------------------------------
    def __add__(self, other: object) -> "ScalarField":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "ScalarField":
        return mul(Const(-1), self)

    def __sub__(self, other: object) -> "ScalarField":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: object) -> "ScalarField":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other: object) -> "ScalarField":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "ScalarField":
        if isinstance(other, Number):
            return mul(self, Const(1 / complex(other)))
        other = _lift(other)
        if other is None:
            return NotImplemented
        return mul(self, power(other, -1))

    def __rtruediv__(self, other: object) -> "ScalarField":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return mul(other, power(self, -1))

    def __pow__(self, n: int) -> "ScalarField":
        if int(n) != n:
            raise ValueError("only integer powers are supported")
        return power(self, int(n))


def _lift(x: object) -> ScalarField | None:
    if isinstance(x, ScalarField):
        return x
    if isinstance(x, (Number, JetSeries)):
        return Const(x)
    return None


class Const(ScalarField):
    __slots__ = ("value",)

    def __init__(self, value: Value) -> None:
        super().__init__()
        self.value = value if isinstance(value, JetSeries) else complex(value)

    def _compute(self, point, memo):
        return self.value

    def _derive(self, i):
        return ZERO

    def _subst(self, mapping, memo):
        return self

    @property
    def is_zero(self) -> bool:
        return _is_zero_value(self.value)

    def __repr__(self) -> str:
        return f"Const({self.value!r})"


class Coord(ScalarField):
    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        super().__init__()
        self.index = int(index)

    def _compute(self, point, memo):
        return complex(point[self.index])

    def _derive(self, i):
        return ONE if i == self.index else ZERO

    def _subst(self, mapping, memo):
        return mapping.get(self.index, self)

    def __repr__(self) -> str:
        return f"x{self.index}"


class Sum(ScalarField):
    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[ScalarField]) -> None:
        super().__init__()
        self.terms = tuple(terms)

    def _compute(self, point, memo):
        vals = [t._eval(point, memo) for t in self.terms]
        acc = vals[0]
        for v in vals[1:]:
            acc = acc + v
        return acc

    def _derive(self, i):
        return add(*(t.partial(i) for t in self.terms))

    def _subst(self, mapping, memo):
        key = id(self)
        if key not in memo:
            memo[key] = add(*(t._subst(mapping, memo) for t in self.terms))
        return memo[key]

    def __repr__(self) -> str:
        return "(" + " + ".join(map(repr, self.terms)) + ")"


class Product(ScalarField):
    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[ScalarField]) -> None:
        super().__init__()
        self.factors = tuple(factors)

    def _compute(self, point, memo):
        vals = [f._eval(point, memo) for f in self.factors]
        acc = vals[0]
        for v in vals[1:]:
            acc = acc * v
        return acc

    def _derive(self, i):
        terms = []
        for j, f in enumerate(self.factors):
            d = f.partial(i)
            if d.is_zero:
                continue
            terms.append(mul(*self.factors[:j], d, *self.factors[j + 1 :]))
        return add(*terms)

    def _subst(self, mapping, memo):
        key = id(self)
        if key not in memo:
            memo[key] = mul(*(f._subst(mapping, memo) for f in self.factors))
        return memo[key]

    def __repr__(self) -> str:
        return "*".join(map(repr, self.factors))


class Power(ScalarField):
    __slots__ = ("base", "exponent")

    def __init__(self, base: ScalarField, exponent: int) -> None:
        super().__init__()
        self.base = base
        self.exponent = int(exponent)

    def _compute(self, point, memo):
        b = self.base._eval(point, memo)
        if isinstance(b, JetSeries):
            return b ** self.exponent
        if b == 0 and self.exponent < 0:
            raise ZeroDivisionError("negative power of a vanishing field")
        return b ** self.exponent

    def _derive(self, i):
        d = self.base.partial(i)
        if d.is_zero:
            return ZERO
        return mul(Const(self.exponent), power(self.base, self.exponent - 1), d)

    def _subst(self, mapping, memo):
        key = id(self)
        if key not in memo:
            memo[key] = power(self.base._subst(mapping, memo), self.exponent)
        return memo[key]

    def __repr__(self) -> str:
        return f"({self.base!r})^{self.exponent}"


class Exp(ScalarField):
    __slots__ = ("arg",)

    def __init__(self, arg: ScalarField) -> None:
        super().__init__()
        self.arg = arg

    def _compute(self, point, memo):
        a = self.arg._eval(point, memo)
        if isinstance(a, JetSeries):
            return a.exp()
        return complex(np.exp(a))

    def _derive(self, i):
        d = self.arg.partial(i)
        if d.is_zero:
            return ZERO
        return mul(self, d)

    def _subst(self, mapping, memo):
        key = id(self)
        if key not in memo:
            memo[key] = exp(self.arg._subst(mapping, memo))
        return memo[key]

    def __repr__(self) -> str:
        return f"exp({self.arg!r})"


ZERO = Const(0)
ONE = Const(1)


# smart constructors -----------------------------------------------------------
def const(value: Value) -> ScalarField:
    if not isinstance(value, JetSeries):
        if value == 0:
            return ZERO
        if value == 1:
            return ONE
    return Const(value)


def coord(i: int) -> Coord:
    return Coord(i)


def add(*terms: ScalarField) -> ScalarField:
    flat: list[ScalarField] = []
    c: Value = 0
    for t in terms:
        if isinstance(t, Sum):
            items = t.terms
        else:
            items = (t,)
        for s in items:
            if isinstance(s, Const):
                c = c + s.value
            else:
                flat.append(s)
    if not _is_zero_value(c):
        flat.append(Const(c))
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(flat)


def mul(*factors: ScalarField) -> ScalarField:
    flat: list[ScalarField] = []
    c: Value = 1
    for f in factors:
        items = f.factors if isinstance(f, Product) else (f,)
        for s in items:
            if isinstance(s, Const):
                c = c * s.value
            else:
                flat.append(s)
    if _is_zero_value(c):
        return ZERO
    if not _is_one_value(c):
        flat.insert(0, Const(c))
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Product(flat)


def power(base: ScalarField, n: int) -> ScalarField:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value ** n)
    if isinstance(base, Power):
        return power(base.base, base.exponent * n)
    return Power(base, n)


def exp(arg: ScalarField | Value) -> ScalarField:
    arg = _lift(arg)
    if isinstance(arg, Const):
        v = arg.value
        return Const(v.exp() if isinstance(v, JetSeries) else complex(np.exp(v)))
    return Exp(arg)


def finite_difference_check(f: ScalarField, point: Sequence[float], step: float = 1e-5) -> float:
    """Max |central difference - analytic partial| over all coordinates (scalar fields only)."""
    p = np.asarray(point, dtype=float)
    worst = 0.0
    for i in range(len(p)):
        e = np.zeros_like(p)
        e[i] = step
        fd = (complex(f(p + e)) - complex(f(p - e))) / (2 * step)
        worst = max(worst, abs(fd - complex(f.partial(i)(p))))
    return worst

