"""Cusps B^1(Z)\\G^1(Z/n), cusp ideals, torsion projections and coinvariants.

Left multiplication by (u, b; 0, u^{-1}) sends the bottom row (c, d) of
h ∈ G^1 to (u^{-1}c, u^{-1}d) and moves the top row through every
completion of that bottom row.  A B^1(Z)-orbit is therefore the set of
matrices whose bottom row lies in one orbit of the image of O^* acting on
unimodular rows, so the orbit decomposition is computed on rows.
:func:`orbit_decomposition` does the same on group elements and serves
as a cross-check for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Sequence

import numpy as np

from ..field import FieldElement, FractionalIdeal, TotallyRealField
from ..nori.context import TorsionDistribution
from .level import LevelGroupElement, Residue, ResidueRing

__all__ = [
    "Cusp",
    "CuspIdeal",
    "unit_residues",
    "b1_generators",
    "random_b1_element",
    "cusp_set",
    "cusp_of",
    "orbit_decomposition",
    "special_group",
    "cusp_ideal",
    "normalize",
    "act",
    "act_point",
    "project",
    "project_normalized",
    "coinvariant_dimension",
]


# units and B^1(Z) ---------------------------------------------------------------------
def unit_residues(ring: ResidueRing) -> frozenset[Residue]:
    """Image of O^* = ±(fundamental units)^Z in (O/nO)^*."""
    gens = [ring.reduce(-1)] + [ring.reduce(u) for u in ring.field.fundamental_units]
    seen = {ring.one}
    frontier = [ring.one]
    while frontier:
        x = frontier.pop()
        for u in gens:
            y = ring.mul(x, u)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def b1_generators(ring: ResidueRing) -> list[LevelGroupElement]:
    """Unipotents (1, ω_i; 0, 1) for the integral basis and diag(u, u^{-1}) for -1 and the fundamental units."""
    gens = [LevelGroupElement.unipotent(ring, ring.reduce(w)) for w in ring.field.basis_elements()]
    for u in [ring.field(-1)] + list(ring.field.fundamental_units):
        r = ring.reduce(u)
        gens.append(LevelGroupElement.diagonal(ring, r, ring.inverse(r)))
    return gens


def random_b1_element(ring: ResidueRing, rng: np.random.Generator, spread: int = 5) -> LevelGroupElement:
    """Image of a random (±ε^j, b; 0, ±ε^{-j}) ∈ B^1(Z)."""
    field = ring.field
    u = field(int(rng.choice([-1, 1])))
    for e in field.fundamental_units:
        u = u * e ** int(rng.integers(-spread, spread + 1))
    b = field.element([int(x) for x in rng.integers(-50, 51, size=field.g)])
    return LevelGroupElement(ring, ring.reduce(u), ring.reduce(b), ring.zero, ring.reduce(u.inverse()))


# rows and completions -------------------------------------------------------------------
def _is_unimodular(ring: ResidueRing, c: Residue, d: Residue) -> bool:
    field = ring.field
    ideal = FractionalIdeal.from_generators(field, [ring.lift(c), ring.lift(d), field(ring.n)])
    return ideal == FractionalIdeal.unit(field)


@lru_cache(maxsize=None)
def _unimodular_rows(ring: ResidueRing) -> tuple[tuple[Residue, Residue], ...]:
    elems = list(ring.elements())
    return tuple((c, d) for c in elems for d in elems if _is_unimodular(ring, c, d))


def _completion(ring: ResidueRing, c: Residue, d: Residue) -> tuple[Residue, Residue]:
    """Some (a, b) with ad - bc = 1."""
    if ring.is_unit(d):
        return ring.inverse(d), ring.zero
    if ring.is_unit(c):
        return ring.zero, ring.neg(ring.inverse(c))
    for a in ring.elements():
        ad = ring.mul(a, d)
        for b in ring.elements():
            if ring.sub(ad, ring.mul(b, c)) == ring.one:
                return a, b
    raise ValueError(f"row {(c, d)} is not unimodular")


def _completions(ring: ResidueRing, c: Residue, d: Residue) -> list[tuple[Residue, Residue]]:
    a0, b0 = _completion(ring, c, d)
    return [(ring.add(a0, ring.mul(t, c)), ring.add(b0, ring.mul(t, d))) for t in ring.elements()]


# cusps -------------------------------------------------------------------------------------
@dataclass(frozen=True)
class Cusp:
    """A B^1(Z)-orbit in G^1(Z/n), identified by its canonical representative.

    ``rows`` are the bottom rows occurring in the orbit; ``size`` counts group
    elements.  The canonical representative is the lexicographically minimal
    matrix for the entry order 0 < 1 < (other residues, lexicographic),
    which makes the identity the representative of its own cusp.
    """

    representative: LevelGroupElement
    rows: frozenset[tuple[Residue, Residue]]
    size: int

    def contains(self, h: LevelGroupElement) -> bool:
        return h.is_special() and h.bottom_row in self.rows

    __contains__ = contains

    @property
    def identifier(self) -> tuple:
        return self.representative.entries


def _row_orbits(ring: ResidueRing) -> list[frozenset[tuple[Residue, Residue]]]:
    units = unit_residues(ring)
    remaining = set(_unimodular_rows(ring))
    orbits = []
    for row in _unimodular_rows(ring):
        if row not in remaining:
            continue
        c, d = row
        orbit = frozenset((ring.mul(u, c), ring.mul(u, d)) for u in units)
        remaining -= orbit
        orbits.append(orbit)
    return orbits


def _canonical(ring: ResidueRing, rows: frozenset[tuple[Residue, Residue]]) -> LevelGroupElement:
    best = None
    for c, d in rows:
        for a, b in _completions(ring, c, d):
            key = tuple(ring.sort_key(x) for x in (a, b, c, d))
            if best is None or key < best[0]:
                best = (key, (a, b, c, d))
    assert best is not None
    return LevelGroupElement(ring, *best[1])


@lru_cache(maxsize=None)
def _cusp_set_cached(ring: ResidueRing) -> tuple[Cusp, ...]:
    cusps = [Cusp(_canonical(ring, rows), rows, len(rows) * ring.size) for rows in _row_orbits(ring)]
    return tuple(sorted(cusps, key=lambda c: c.representative.sort_key()))


def cusp_set(field: TotallyRealField, n: int) -> list[Cusp]:
    """All cusps B^1(Z)\\G^1(Z/n), sorted by canonical representative."""
    if n < 3:
        raise ValueError("level n must be >= 3")
    return list(_cusp_set_cached(ResidueRing(field, n)))


def cusp_of(h: LevelGroupElement) -> Cusp:
    for cusp in _cusp_set_cached(h.ring):
        if cusp.contains(h):
            return cusp
    raise ValueError(f"{h} is not in G^1")


def special_group(ring: ResidueRing, max_size: int = 100) -> list[LevelGroupElement]:
    """All of G^1(Z/n) by brute force over the |O/nO|^4 matrices (small rings only)."""
    if ring.size > max_size:
        raise ValueError(f"|O/nO| = {ring.size} is too large to enumerate G^1")
    elems = list(ring.elements())
    out = []
    for a, d in product(elems, repeat=2):
        ad = ring.mul(a, d)
        for b, c in product(elems, repeat=2):
            if ring.sub(ad, ring.mul(b, c)) == ring.one:
                out.append(LevelGroupElement(ring, a, b, c, d))
    return out


def orbit_decomposition(ring: ResidueRing, generators: Sequence[LevelGroupElement] | None = None) -> list[frozenset[LevelGroupElement]]:
    """Orbits of G^1(Z/n) under left multiplication by the group generated by ``generators``."""
    gens = list(generators) if generators is not None else b1_generators(ring)
    gens = gens + [g.inverse() for g in gens]
    remaining = set(special_group(ring))
    orbits = []
    while remaining:
        start = min(remaining, key=LevelGroupElement.sort_key)
        orbit = {start}
        frontier = [start]
        while frontier:
            h = frontier.pop()
            for s in gens:
                x = s * h
                if x not in orbit:
                    orbit.add(x)
                    frontier.append(x)
        remaining -= orbit
        orbits.append(frozenset(orbit))
    return orbits


# cusp ideal and projections ---------------------------------------------------------------
@dataclass(frozen=True)
class CuspIdeal:
    """𝔟_h = uO + vO for a lift (u, v) of the bottom row of h to a unimodular pair in O^2.

    The projection p_h: O^2 → 𝔟_h is (x, y) ↦ ux + vy.
    """

    h: LevelGroupElement
    u: FieldElement
    v: FieldElement
    ideal: FractionalIdeal

    def project(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.u * x + self.v * y

    @property
    def norm(self) -> Fraction:
        return self.ideal.norm


def _shifts(g: int, radius: int):
    rng = range(-radius, radius + 1)
    pts = sorted(product(rng, repeat=g), key=lambda p: (sum(abs(x) for x in p), p))
    return pts


def cusp_ideal(h: LevelGroupElement, rng: np.random.Generator | None = None, radius: int = 3) -> CuspIdeal:
    """Cusp ideal from a lift of the bottom row of h that is the bottom row of some element of G^1(O).

    Lifts are u = c + n x, v = d + n y with x, y ∈ O; the deterministic
    search runs over small x, y, ``rng`` draws them at random instead.
    A lift generates O exactly when it extends to G^1(O).
    """
    ring = h.ring
    field = ring.field
    c, d = h.bottom_row
    if c == ring.zero and d == ring.zero:
        raise ArithmeticError("second row vanishes; h is not invertible")
    unit = FractionalIdeal.unit(field)
    n = ring.n
    if rng is None:
        cands = ((x, y) for x in _shifts(field.g, radius) for y in _shifts(field.g, radius))
    else:
        cands = ((tuple(int(t) for t in rng.integers(-radius, radius + 1, field.g)), tuple(int(t) for t in rng.integers(-radius, radius + 1, field.g))) for _ in range(10_000))
    for x, y in cands:
        u = field.element([ci + n * xi for ci, xi in zip(c, x)])
        v = field.element([di + n * yi for di, yi in zip(d, y)])
        if u.is_zero() and v.is_zero():
            continue
        ideal = FractionalIdeal.from_generators(field, [u, v])
        if ideal == unit:
            return CuspIdeal(h, u, v, ideal)
    raise ArithmeticError(f"no unimodular lift of the row {(c, d)} found")


def normalize(h: LevelGroupElement) -> LevelGroupElement:
    """h̃ = h d_h^{-1} with d_h = diag(1, det h), so that det h̃ = 1."""
    ring = h.ring
    return h * LevelGroupElement.diagonal(ring, ring.one, ring.reduce(pow(h.det_int, -1, ring.n)))


def _numerators(ring: ResidueRing, sigma: Sequence[Fraction]) -> tuple[Residue, Residue]:
    g = ring.g
    if len(sigma) != 2 * g:
        raise ValueError(f"a point of (1/n O/O)^2 has {2 * g} coordinates")
    num = []
    for x in sigma:
        x = Fraction(x)
        if (x * ring.n).denominator != 1:
            raise ValueError(f"{sigma} is not {ring.n}-torsion")
        num.append(int(x * ring.n) % ring.n)
    return tuple(num[:g]), tuple(num[g:])


def act_point(h: LevelGroupElement, sigma: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """hσ for σ ∈ (1/n O/O)^2, as 2g rational coordinates in [0, 1)."""
    R = h.ring
    s1, s2 = _numerators(R, sigma)
    t1 = R.add(R.mul(h.a, s1), R.mul(h.b, s2))
    t2 = R.add(R.mul(h.c, s1), R.mul(h.d, s2))
    return tuple(Fraction(x, R.n) for x in t1 + t2)


def act(h: LevelGroupElement, alpha: TorsionDistribution) -> TorsionDistribution:
    """Relabel the support of α by σ ↦ hσ."""
    if alpha.level != h.ring.n:
        raise ValueError("distribution and group element have different levels")
    return alpha.map_points(lambda p: act_point(h, p))


def project(h: LevelGroupElement, sigma: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Second coordinate of hσ in (1/n)O/O."""
    return act_point(h, sigma)[h.ring.g :]


def project_normalized(lift: CuspIdeal, sigma: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """p_h̃(σ) = uσ_1 + vσ_2 in (1/n)𝔟/𝔟, in coordinates of the HNF basis of 𝔟, reduced mod 1."""
    field = lift.ideal.field
    g = field.g
    sigma = [Fraction(x) for x in sigma]
    x = field.element(sigma[:g])
    y = field.element(sigma[g:])
    coords = lift.ideal.coordinates(lift.project(x, y))
    return tuple(c - (c.numerator // c.denominator) for c in coords)


# coinvariants ------------------------------------------------------------------------------
def _sym_power(diag: np.ndarray, k: int) -> np.ndarray:
    """Sym^k of a g x g matrix, in the monomial basis of degree k."""
    g = diag.shape[0]
    monos = list(combinations_with_replacement(range(g), k))
    index = {m: i for i, m in enumerate(monos)}
    out = np.zeros((len(monos), len(monos)))
    for j, m in enumerate(monos):
        # expand Π_{i ∈ m} (Σ_r A[r, i] x_r)
        terms = {(): 1.0}
        for i in m:
            new: dict[tuple[int, ...], float] = {}
            for mono, coef in terms.items():
                for r in range(g):
                    if diag[r, i] == 0:
                        continue
                    key = tuple(sorted(mono + (r,)))
                    new[key] = new.get(key, 0.0) + coef * diag[r, i]
            terms = new
        for mono, coef in terms.items():
            out[index[mono], j] += coef
    return out


def coinvariant_dimension(field: TotallyRealField, k: int, cap: int = 12, tol: float = 1e-10) -> int:
    """dim of the coinvariants of the totally positive units acting on Sym^k(O ⊗ R).

    The units act on O ⊗ R = R^g through the embeddings; the codimension of
    the span of (Sym^k(d) - 1)(basis) is found by SVD, each row divided by
    1 + |row of Sym^k(d)| so that rounding noise in an invariant direction
    stays below the tolerance.
    """
    if k < 0 or k > cap:
        raise ValueError(f"k must lie in [0, {cap}]")
    from ..field.units import totally_positive_generator

    g = field.g
    gens = []
    if g > 1:
        eps = totally_positive_generator(field)
        if eps is not None:
            gens.append(eps)
    dim = len(list(combinations_with_replacement(range(g), k)))
    if not gens:
        return dim
    blocks = []
    for u in gens:
        S = _sym_power(np.diag(u.embed_float()), k)
        blocks.append((S - np.eye(dim)) / (1.0 + np.linalg.norm(S, axis=1))[:, None])
    s = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    rank = int(np.sum(s > tol))
    return dim - rank
