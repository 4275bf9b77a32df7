"""Truncated power series in g commuting generators (the jet algebra).

A :class:`JetSeries` stores coefficients densely in an array of shape
``(K+1,)*g``; entries whose multi-index has total degree above ``K`` are
kept at zero.  Iteration over multi-indices is lexicographic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, factorial
from numbers import Number
from typing import Iterator, Sequence

import numpy as np

__all__ = ["JetSeries", "jet_geometric_inverse", "multi_indices", "JetSingularityError"]


class JetSingularityError(ZeroDivisionError):
    pass


@lru_cache(maxsize=None)
def _mask(g: int, K: int) -> np.ndarray:
    grids = np.indices((K + 1,) * g)
    return grids.sum(axis=0) <= K


@lru_cache(maxsize=None)
def multi_indices(g: int, K: int, degree: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Multi-indices of total degree <= K (or exactly ``degree``), lexicographic."""
    out = []
    for m in product(range(K + 1), repeat=g):
        s = sum(m)
        if (degree is None and s <= K) or s == degree:
            out.append(m)
    return tuple(out)


class JetSeries:
    """Element of ``C[[e_1, ..., e_g]] / (degree > K)``."""

    __slots__ = ("g", "K", "data")
    __array_priority__ = 100

    def __init__(self, g: int, K: int, data: np.ndarray | None = None) -> None:
        self.g = int(g)
        self.K = int(K)
        shape = (self.K + 1,) * self.g
        if data is None:
            self.data = np.zeros(shape, dtype=np.complex128)
        else:
            arr = np.asarray(data, dtype=np.complex128)
            if arr.shape != shape:
                raise ValueError(f"jet data must have shape {shape}")
            self.data = np.where(_mask(self.g, self.K), arr, 0)

    # constructors -----------------------------------------------------------
    @classmethod
    def constant(cls, value: complex, g: int, K: int) -> "JetSeries":
        j = cls(g, K)
        j.data[(0,) * g] = value
        return j

    @classmethod
    def generator(cls, i: int, g: int, K: int) -> "JetSeries":
        j = cls(g, K)
        if K >= 1:
            idx = [0] * g
            idx[i] = 1
            j.data[tuple(idx)] = 1
        return j

    @classmethod
    def linear(cls, coeffs: Sequence[complex], K: int, constant: complex = 0) -> "JetSeries":
        """``constant + Σ c_i e_i``."""
        g = len(coeffs)
        j = cls.constant(constant, g, K)
        if K >= 1:
            for i, c in enumerate(coeffs):
                idx = [0] * g
                idx[i] = 1
                j.data[tuple(idx)] = c
        return j

    @classmethod
    def from_dict(cls, coeffs: dict[tuple[int, ...], complex], g: int, K: int) -> "JetSeries":
        j = cls(g, K)
        for m, c in coeffs.items():
            if sum(m) <= K:
                j.data[tuple(m)] = c
        return j

    def _like(self, data: np.ndarray) -> "JetSeries":
        out = JetSeries.__new__(JetSeries)
        out.g, out.K = self.g, self.K
        out.data = data
        return out

    def _check(self, other: "JetSeries") -> None:
        if other.g != self.g or other.K != self.K:
            raise ValueError("jets with different shapes")

    # access -----------------------------------------------------------------
    def coefficient(self, m: Sequence[int]) -> complex:
        m = tuple(m)
        if len(m) != self.g:
            raise ValueError("multi-index has the wrong length")
        if sum(m) > self.K:
            raise ValueError("multi-index above the truncation degree")
        return complex(self.data[m])

    def __getitem__(self, m: Sequence[int]) -> complex:
        return self.coefficient(m)

    @property
    def constant_term(self) -> complex:
        return complex(self.data[(0,) * self.g])

    def items(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        for m in multi_indices(self.g, self.K):
            yield m, complex(self.data[m])

    def homogeneous(self, degree: int) -> dict[tuple[int, ...], complex]:
        return {m: complex(self.data[m]) for m in multi_indices(self.g, self.K, degree)}

    def truncate(self, K: int) -> "JetSeries":
        """Restrict to degree <= K (K may not exceed the current truncation)."""
        if K > self.K:
            raise ValueError("cannot raise the truncation degree")
        sl = tuple(slice(0, K + 1) for _ in range(self.g))
        return JetSeries(self.g, K, self.data[sl])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def allclose(self, other: "JetSeries", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.data - other.data)) <= atol)

    # ring operations ---------------------------------------------------------
    def __add__(self, other: object) -> "JetSeries":
        if isinstance(other, JetSeries):
            self._check(other)
            return self._like(self.data + other.data)
        if isinstance(other, Number):
            d = self.data.copy()
            d[(0,) * self.g] += complex(other)
            return self._like(d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "JetSeries":
        return self._like(-self.data)

    def __sub__(self, other: object) -> "JetSeries":
        if isinstance(other, (JetSeries, Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> "JetSeries":
        return (-self) + other

    def __mul__(self, other: object) -> "JetSeries":
        if isinstance(other, Number):
            return self._like(self.data * complex(other))
        if not isinstance(other, JetSeries):
            return NotImplemented
        self._check(other)
        K, g = self.K, self.g
        out = np.zeros_like(self.data)
        a = self.data
        for m in multi_indices(g, K):
            c = a[m]
            if c == 0:
                continue
            src = tuple(slice(0, K + 1 - mi) for mi in m)
            dst = tuple(slice(mi, K + 1) for mi in m)
            out[dst] += c * other.data[src]
        out[~_mask(g, K)] = 0
        return self._like(out)

    __rmul__ = __mul__

    def inverse(self) -> "JetSeries":
        a0 = self.constant_term
        return jet_geometric_inverse(a0, a0 - self, 0)

    def __truediv__(self, other: object) -> "JetSeries":
        if isinstance(other, Number):
            return self._like(self.data / complex(other))
        if isinstance(other, JetSeries):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: object) -> "JetSeries":
        if isinstance(other, Number):
            return self.inverse() * complex(other)
        return NotImplemented

    def __pow__(self, e: int) -> "JetSeries":
        e = int(e)
        if e < 0:
            a0 = self.constant_term
            return jet_geometric_inverse(a0, a0 - self, -e - 1)
        result = JetSeries.constant(1, self.g, self.K)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exp(self) -> "JetSeries":
        """exp(a_0) · Σ_{j <= K} (x - a_0)^j / j!."""
        a0 = self.constant_term
        nil = self - a0
        term = JetSeries.constant(1, self.g, self.K)
        acc = term
        for j in range(1, self.K + 1):
            term = term * nil * (1.0 / j)
            acc = acc + term
        return acc * complex(np.exp(a0))

    def conjugate(self) -> "JetSeries":
        return self._like(np.conj(self.data))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JetSeries):
            return NotImplemented
        return self.g == other.g and self.K == other.K and np.array_equal(self.data, other.data)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = [f"{c:.6g}*e^{m}" for m, c in self.items() if c != 0]
        return f"JetSeries(g={self.g}, K={self.K}: " + (" + ".join(terms[:8]) or "0") + (" ...)" if len(terms) > 8 else ")")


def jet_geometric_inverse(A: complex, B: JetSeries, m: int) -> JetSeries:
    """Degree-K truncation of ``(A - B)^{-(m+1)} = Σ_k C(k+m, k) B^k / A^{k+m+1}``.

    B must have zero constant term so that the sum terminates at k = K.
    """
    A = complex(A)
    if A == 0:
        raise JetSingularityError("geometric inverse needs A != 0")
    if abs(B.constant_term) > 0:
        raise ValueError("B must have zero constant term")
    out = JetSeries.constant(0, B.g, B.K)
    power = JetSeries.constant(1, B.g, B.K)
    for k in range(B.K + 1):
        out = out + power * (comb(k + m, k) / A ** (k + m + 1))
        power = power * B
    return out


def factorial_jet_weight(m: Sequence[int]) -> int:
    """Π m_i! for a multi-index."""
    out = 1
    for x in m:
        out *= factorial(x)
    return out
