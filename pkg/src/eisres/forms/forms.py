"""Differential forms and vector fields with ScalarField coefficients.

A p-form on R^n is stored as ``{(i_1 < ... < i_p): coefficient}``; missing
keys are zero.  All operations return new objects.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .jets import JetSeries
from .scalar import ONE, ZERO, ScalarField, add, const, mul

__all__ = ["DifferentialForm", "VectorField", "FormDegreeError", "sort_sign"]


class FormDegreeError(ValueError):
    pass


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _lift(c) -> ScalarField:
    return c if isinstance(c, ScalarField) else const(c)


class DifferentialForm:
    """A p-form on R^n with analytic coefficients."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[Sequence[int], ScalarField | complex] | None = None) -> None:
        self.dim = int(dim)
        self.degree = int(degree)
        acc: dict[tuple[int, ...], ScalarField] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != self.degree:
                raise FormDegreeError(f"index {idx} does not have length {self.degree}")
            if any(not 0 <= i < self.dim for i in idx):
                raise IndexError(f"index {idx} out of range for dimension {self.dim}")
            sign, key = sort_sign(idx)
            if sign == 0:
                continue
            c = _lift(c)
            term = c if sign == 1 else -c
            acc[key] = add(acc[key], term) if key in acc else term
        self.terms = {k: v for k, v in sorted(acc.items()) if not v.is_zero}

    # constructors -------------------------------------------------------------------
    @classmethod
    def zero(cls, dim: int, degree: int) -> "DifferentialForm":
        return cls(dim, degree)

    @classmethod
    def function(cls, dim: int, f: ScalarField | complex) -> "DifferentialForm":
        return cls(dim, 0, {(): f})

    @classmethod
    def basis(cls, dim: int, idx: Sequence[int], coefficient: ScalarField | complex = 1) -> "DifferentialForm":
        """``coefficient · dx_{i_1} ∧ ... ∧ dx_{i_p}`` (indices in any order)."""
        return cls(dim, len(idx), {tuple(idx): coefficient})

    @classmethod
    def volume(cls, dim: int, indices: Sequence[int], constant: complex = 1) -> "DifferentialForm":
        return cls.basis(dim, indices, constant)

    # algebra ---------------------------------------------------------------------------
    def _same_shape(self, other: "DifferentialForm") -> None:
        if other.dim != self.dim or other.degree != self.degree:
            raise FormDegreeError("forms of different dimension or degree")

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        self._same_shape(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = add(terms[k], v) if k in terms else v
        return DifferentialForm(self.dim, self.degree, terms)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.dim, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def scale(self, f: ScalarField | complex | JetSeries) -> "DifferentialForm":
        f = _lift(f)
        return DifferentialForm(self.dim, self.degree, {k: mul(f, v) for k, v in self.terms.items()})

    def __mul__(self, f) -> "DifferentialForm":
        if isinstance(f, DifferentialForm):
            return self.wedge(f)
        return self.scale(f)

    __rmul__ = scale

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        if other.dim != self.dim:
            raise FormDegreeError("forms on different spaces")
        out: dict[tuple[int, ...], ScalarField] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                sign, key = sort_sign(i + j)
                if sign == 0:
                    continue
                term = mul(a, b) if sign == 1 else -mul(a, b)
                out[key] = add(out[key], term) if key in out else term
        return DifferentialForm(self.dim, self.degree + other.degree, out)

    __xor__ = wedge

    # calculus -----------------------------------------------------------------------------
    def exterior_d(self) -> "DifferentialForm":
        """d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I."""
        out: dict[tuple[int, ...], ScalarField] = {}
        for idx, f in self.terms.items():
            for j in range(self.dim):
                if j in idx:
                    continue
                df = f.partial(j)
                if df.is_zero:
                    continue
                sign, key = sort_sign((j,) + idx)
                term = df if sign == 1 else -df
                out[key] = add(out[key], term) if key in out else term
        return DifferentialForm(self.dim, self.degree + 1, out)

    d = exterior_d

    def contract(self, X: "VectorField") -> "DifferentialForm":
        """Interior product ι_X; ι_X(f dx_{i_1}∧...∧dx_{i_p}) = Σ_r (-1)^r X_{i_r} f dx_{I \\ i_r}."""
        if self.degree < 1:
            raise FormDegreeError("cannot contract a 0-form")
        if X.dim != self.dim:
            raise FormDegreeError("vector field lives on a different space")
        out: dict[tuple[int, ...], ScalarField] = {}
        for idx, f in self.terms.items():
            for r, i in enumerate(idx):
                comp = X.components[i]
                if comp.is_zero:
                    continue
                key = idx[:r] + idx[r + 1 :]
                term = mul(comp, f)
                if r % 2:
                    term = -term
                out[key] = add(out[key], term) if key in out else term
        return DifferentialForm(self.dim, self.degree - 1, out)

    def lie_derivative(self, X: "VectorField") -> "DifferentialForm":
        """Cartan: L_X = d ι_X + ι_X d."""
        inner = self.contract(X).exterior_d() if self.degree >= 1 else DifferentialForm.zero(self.dim, 0)
        return inner + self.exterior_d().contract(X)

    def substitute(self, mapping: Mapping[int, ScalarField]) -> "DifferentialForm":
        """Substitute into the coefficients only (not a pullback)."""
        return DifferentialForm(self.dim, self.degree, {k: v.substitute(mapping) for k, v in self.terms.items()})

    def pullback(self, phi: Sequence[ScalarField], source_dim: int) -> "DifferentialForm":
        """Symbolic pullback along φ: R^m → R^n given by component fields of y_0..y_{m-1}."""
        if len(phi) != self.dim:
            raise FormDegreeError("map has the wrong number of components")
        mapping = dict(enumerate(phi))
        dphi = [
            DifferentialForm(source_dim, 1, {(k,): phi[i].partial(k) for k in range(source_dim)})
            for i in range(self.dim)
        ]
        out = DifferentialForm.zero(source_dim, self.degree)
        for idx, f in self.terms.items():
            piece = DifferentialForm.function(source_dim, f.substitute(mapping))
            for i in idx:
                piece = piece.wedge(dphi[i])
            out = out + piece
        return out

    # evaluation ----------------------------------------------------------------------------------
    def evaluate(self, point: Sequence[float]) -> dict[tuple[int, ...], complex | JetSeries]:
        return {k: v(point) for k, v in self.terms.items()}

    def components(self, point: Sequence[float]) -> np.ndarray:
        """Dense vector of (complex) coefficients over all increasing index tuples."""
        vals = self.evaluate(point)
        return np.array([complex(vals.get(idx, 0)) for idx in combinations(range(self.dim), self.degree)])

    def pullback_at(self, point: Sequence[float], jacobian: np.ndarray) -> dict[tuple[int, ...], complex | JetSeries]:
        """(φ^*ω) at a source point whose image is ``point`` and with Dφ = ``jacobian`` (n x m)."""
        J = np.asarray(jacobian)
        n, m = J.shape
        if n != self.dim:
            raise FormDegreeError("jacobian has the wrong number of rows")
        vals = self.evaluate(point)
        out: dict[tuple[int, ...], complex | JetSeries] = {}
        for K in combinations(range(m), self.degree):
            acc: complex | JetSeries = 0j
            for I, v in vals.items():
                det = complex(np.linalg.det(J[np.ix_(I, K)])) if self.degree else 1.0
                acc = acc + v * det
            out[K] = acc
        return out

    def is_zero_at(self, point: Sequence[float], tol: float = 0.0) -> bool:
        vals = self.evaluate(point).values()
        return all((v.max_abs() if isinstance(v, JetSeries) else abs(complex(v))) <= tol for v in vals)

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 ({self.degree}-form on R^{self.dim})"
        parts = []
        for k, v in self.terms.items():
            dx = "∧".join(f"dx{i}" for i in k)
            parts.append(f"{v!r}" + (f" {dx}" if dx else ""))
        return " + ".join(parts)


class VectorField:
    """Σ X_i ∂_{x_i} on R^n."""

    __slots__ = ("dim", "components")

    def __init__(self, components: Iterable[ScalarField | complex]) -> None:
        self.components = tuple(_lift(c) for c in components)
        self.dim = len(self.components)

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "VectorField":
        return cls(ONE if j == i else ZERO for j in range(dim))

    @classmethod
    def embedded(cls, dim: int, offset: int, components: Sequence[ScalarField | complex]) -> "VectorField":
        """A field with the given components in coordinates offset, offset+1, ... and zero elsewhere."""
        comps: list[ScalarField | complex] = [ZERO] * dim
        for j, c in enumerate(components):
            comps[offset + j] = c
        return cls(comps)

    def evaluate(self, point: Sequence[float]) -> np.ndarray:
        return np.array([complex(c(point)) for c in self.components])

    def jacobian(self, point: Sequence[float]) -> np.ndarray:
        """DX at a point: entry (i, j) = ∂_j X_i."""
        return np.array([[complex(c.partial(j)(point)) for j in range(self.dim)] for c in self.components])

    def __repr__(self) -> str:
        return "VectorField(" + ", ".join(map(repr, self.components)) + ")"
