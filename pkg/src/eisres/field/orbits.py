"""Unit-orbit representatives of lattice points with bounded norm.

For g = 2 the representatives are the points whose log-ratio coordinate

    c(λ) = log|τ_2(λ)/τ_1(λ)| / log(τ_2(u)/τ_1(u))

lies in the half-open interval [0, 1), where u generates the unit group.
Multiplying by u shifts c by exactly 1, so this picks one point per orbit.
The float scan flags points whose c is within ``TIE_TOL`` of 0 or 1 and
those are settled in exact arithmetic: c is an integer exactly when
``μ = λ u^{-j}`` satisfies ``|τ_1 μ| = |τ_2 μ|``, i.e. ``μ = ±conj(μ)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, sqrt
from typing import Sequence

import mpmath
import numpy as np

from .. import _kernels
from . import linalg
from .field import FieldElement, TotallyRealField
from .ideal import FractionalIdeal
from .units import RayUnitGroup, UnsupportedDegreeError

__all__ = ["OrbitReps", "orbit_representatives", "enumerate_orbit_reps", "lattice_coordinates_matrix"]

TIE_TOL = 1e-8
NORM_TOL = 1e-9


@dataclass(frozen=True)
class OrbitReps:
    """Orbit representatives in a lattice coset ``offset + L``.

    ``coords`` are integer coordinates with respect to ``basis`` (rows of
    integral-basis coordinates), so the element is
    ``offset + Σ coords[i, j] · basis[j]``.
    """

    field: TotallyRealField
    basis: tuple[tuple[Fraction, ...], ...]
    offset: FieldElement | None
    coords: np.ndarray
    embeddings: np.ndarray
    bound: float
    units: RayUnitGroup | None

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    @property
    def norms(self) -> np.ndarray:
        """Signed float norms ``Π τ_i(λ)``."""
        return np.prod(self.embeddings, axis=1)

    def element(self, i: int) -> FieldElement:
        return _element(self.field, self.basis, self.offset, self.coords[i])

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(len(self))]


def _element(field, basis, offset, coord) -> FieldElement:
    vec = [Fraction(0)] * field.g
    for cj, row in zip(coord, basis):
        cj = int(cj)
        if cj:
            vec = [v + cj * r for v, r in zip(vec, row)]
    x = field.element(vec)
    return x if offset is None else x + offset


def lattice_coordinates_matrix(field: TotallyRealField, basis: Sequence[Sequence[Fraction]], u: FieldElement) -> np.ndarray:
    """Integer matrix of multiplication by ``u`` in lattice coordinates (columns)."""
    bt = linalg.transpose([list(r) for r in basis])
    cols = [linalg.solve(bt, (u * field.element(r)).coords) for r in basis]
    for col in cols:
        if any(c.denominator != 1 for c in col):
            raise ValueError("lattice is not stable under the unit")
    return np.array([[int(c) for c in col] for col in cols], dtype=np.int64).T


def _gauss_reduce(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lagrange-Gauss reduction of the columns of a 2x2 float matrix.

    Returns the reduced matrix and the unimodular integer T with B' = B T.
    """
    t = np.eye(2, dtype=np.int64)
    u, v = b[:, 0].copy(), b[:, 1].copy()
    tu, tv = t[:, 0].copy(), t[:, 1].copy()
    if u @ u > v @ v:
        u, v, tu, tv = v, u, tv, tu
    for _ in range(200):
        q = int(round((u @ v) / (u @ u)))
        if q == 0:
            break
        v = v - q * u
        tv = tv - q * tu
        if v @ v < u @ u:
            u, v, tu, tv = v, u, tv, tu
        else:
            break
    return np.stack([u, v], axis=1), np.stack([tu, tv], axis=1)


def _log_ratio(x: FieldElement) -> mpmath.mpf:
    e = x.embed()
    with mpmath.workdps(x.field.precision):
        return mpmath.log(abs(e[1]) / abs(e[0]))


def _is_tie(mu: FieldElement) -> bool:
    c = mu.conjugate()
    return mu == c or mu == -c


def _scan_g2(
    field: TotallyRealField,
    basis: tuple[tuple[Fraction, ...], ...],
    offset: FieldElement | None,
    unit: FieldElement,
    bound: float,
) -> np.ndarray:
    emb_u = unit.embed()
    with mpmath.workdps(field.precision):
        log_period = float(mpmath.log(abs(emb_u[1] / emb_u[0])))
    if log_period <= 0:
        raise ValueError("unit generator must satisfy |τ_2(u)| > |τ_1(u)|")
    bmat = np.array([field.element(r).embed_float() for r in basis]).T
    off = np.zeros(2) if offset is None else offset.embed_float()
    red, t = _gauss_reduce(bmat)
    slack = 1.0 + 1e-6
    x1 = sqrt(bound) * slack
    x2 = sqrt(bound) * np.exp(0.5 * log_period * (1 + 2 * TIE_TOL)) * slack
    inv = np.linalg.inv(red)
    centre = -(inv @ off)[0]
    width = abs(inv[0, 0]) * x1 + abs(inv[0, 1]) * x2
    a_lo, a_hi = int(floor(centre - width)) - 1, int(ceil(centre + width)) + 1
    coords_red, cvals = _kernels.scan_sector(
        red, off, a_lo, a_hi, x1, x2, bound * (1 + NORM_TOL), log_period, TIE_TOL
    )
    coords = coords_red @ t.T
    if coords.shape[0] == 0:
        return coords
    emb = coords @ bmat.T + off
    norms = np.abs(emb[:, 0] * emb[:, 1])
    keep = (cvals > TIE_TOL) & (cvals < 1 - TIE_TOL) & (norms <= bound * (1 - NORM_TOL))
    suspect = np.nonzero(~keep)[0]
    unit_inv = unit.inverse()
    with mpmath.workdps(field.precision):
        lp_hp = mpmath.log(abs(emb_u[1] / emb_u[0]))
    for i in suspect:
        x = _element(field, basis, offset, coords[i])
        if x.is_zero():
            continue
        if abs(x.norm()) > bound:
            continue
        c = cvals[i]
        if abs(c) <= TIE_TOL:
            ok = _is_tie(x) or _log_ratio(x) >= 0
        elif abs(c - 1) <= TIE_TOL:
            ok = (not _is_tie(x * unit_inv)) and _log_ratio(x) < lp_hp
        else:
            ok = True
        keep[i] = ok
    return coords[keep]


def orbit_representatives(
    field: TotallyRealField,
    lattice: FractionalIdeal | Sequence[Sequence[object]],
    units: RayUnitGroup | None,
    bound: float,
    offset: FieldElement | None = None,
) -> OrbitReps:
    """One representative per ``units``-orbit of ``{λ ∈ offset + L, λ ≠ 0 : |N(λ)| <= bound}``.

    ``lattice`` is a fractional ideal (its HNF basis is used) or explicit
    basis rows of integral-basis coordinates.  For an ideal without offset
    the scan runs over the fundamental domain of the full totally positive
    unit group and the result is expanded by ``ε_+^j``, ``j < [O*_+ : U]``.
    """
    is_module = isinstance(lattice, FractionalIdeal)
    basis_rows = lattice.basis if is_module else linalg.as_matrix(lattice)
    basis = tuple(tuple(Fraction(c) for c in r) for r in basis_rows)
    if offset is not None:
        offset = field(offset)
    g = field.g
    if bound <= 0:
        coords = np.zeros((0, g), dtype=np.int64)
    elif g == 1:
        coords = _scan_g1(field, basis, offset, bound)
    elif g == 2:
        if units is None or units.generator is None:
            raise ValueError("g = 2 enumeration needs a unit group of rank 1")
        if is_module and offset is None and units.base is not None:
            base = units.base
            coords = _scan_g2(field, basis, None, base, bound)
            mat = lattice_coordinates_matrix(field, basis, base)
            blocks, cur = [coords], coords
            for _ in range(1, units.exponent):
                cur = cur @ mat.T
                blocks.append(cur)
            coords = np.concatenate(blocks) if blocks else coords
        else:
            coords = _scan_g2(field, basis, offset, units.generator, bound)
    else:
        raise UnsupportedDegreeError("orbit enumeration implemented for g <= 2")
    bmat = np.array([field.element(r).embed_float() for r in basis]).T
    off = np.zeros(g) if offset is None else offset.embed_float()
    emb = coords.astype(np.float64) @ bmat.T + off if coords.shape[0] else np.zeros((0, g))
    return OrbitReps(field, basis, offset, coords.astype(np.int64).reshape(-1, g), emb, float(bound), units)


def _scan_g1(field, basis, offset, bound) -> np.ndarray:
    r = field.element(basis[0]).coords[0] / field.one.coords[0]
    x = Fraction(0) if offset is None else offset.coords[0] / field.one.coords[0]
    r_abs = abs(r)
    bnd = Fraction(bound).limit_denominator(10**12) if not float(bound).is_integer() else Fraction(int(bound))
    lo = ceil((-bnd - x) / r_abs)
    hi = floor((bnd - x) / r_abs)
    ms = [m for m in range(lo, hi + 1) if x + m * r_abs != 0]
    sgn = 1 if r > 0 else -1
    return np.array([[sgn * m] for m in ms], dtype=np.int64).reshape(-1, 1)


def enumerate_orbit_reps(
    field: TotallyRealField,
    lattice: FractionalIdeal | Sequence[Sequence[object]],
    units: RayUnitGroup | None,
    bound: float,
) -> list[FieldElement]:
    """List form of :func:`orbit_representatives` (exact field elements)."""
    return orbit_representatives(field, lattice, units, bound).elements()
