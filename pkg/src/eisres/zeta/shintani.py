"""Exact partial zeta values at non-positive integers (Shintani cone method).

For a coset ``x + M`` of a lattice M ⊂ F that is stable under a unit group
U = ⟨ε⟩ of totally positive units, and a sign pattern η, set

    ζ_η(x + M, U, s) = Σ_{ν ∈ (x+M)/U, sign(ν) = η} |N ν|^{-s}.

For g = 2 the η-quadrant modulo U is the half-open cone spanned by
w_1 = r·g_η and w_2 = ε w_1, where r > 0 is rational, g_η has sign η and
r g_η ∈ M.  Writing ν = y_1 w_1 + y_2 w_2 with y ∈ (0,1] × [0,1) + Z_{>=0}^2,

    ζ(-k) = (k!)^2 / 2 · Σ_{points y} Σ_{p+q = 2k+2}  B_p(1-y_1) B_q(1-y_2) / (p! q!)
            · Tr( [Y^k] L_1(Y)^{p-1} L_2(Y)^{q-1} ),   L_j(Y) = w_j + δ Y conj(w_j),

with δ = η_1 η_2.  The Y^k coefficient comes from expanding the two
embeddings of the cone generators and averaging over the two orderings;
the Galois trace collects both orderings at once, which keeps everything
in Q.  For g = 1 this reduces to -B_{k+1}(a)/(k+1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, gcd
from typing import Sequence

from ..field import FieldElement, FractionalIdeal, TotallyRealField
from ..field import linalg
from ..field.units import RayUnitGroup, UnsupportedDegreeError, ray_units
from .bernoulli import bernoulli_poly, hurwitz_negative

__all__ = [
    "shintani_coset_zeta",
    "shintani_zeta",
    "dedekind_zeta_value",
]


def _gen_binom(e: int, j: int) -> Fraction:
    """Generalised binomial coefficient C(e, j) for any integer e and j >= 0."""
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(e - i, i + 1)
    return out


def _cone_coefficients(w1: FieldElement, w2: FieldElement, k: int, delta: int) -> dict[tuple[int, int], Fraction]:
    """K_{p,q} = (k!)^2/2 · Tr([Y^k] L_1^{p-1} L_2^{q-1}) / (p! q!)."""
    field = w1.field
    a = (w1, w2)
    b = (w1.conjugate() * delta, w2.conjugate() * delta)
    ratio = (b[0] / a[0], b[1] / a[1])
    out: dict[tuple[int, int], Fraction] = {}
    pref = Fraction(factorial(k) ** 2, 2)
    for p in range(0, 2 * k + 3):
        q = 2 * k + 2 - p
        e1, e2 = p - 1, q - 1
        lead = (a[0] ** e1) * (a[1] ** e2)
        acc = field.zero
        rp = [ratio[0] ** j for j in range(k + 1)]
        rq = [ratio[1] ** j for j in range(k + 1)]
        for j in range(k + 1):
            c = _gen_binom(e1, j) * _gen_binom(e2, k - j)
            if c:
                acc = acc + rp[j] * rq[k - j] * c
        tr = (lead * acc).trace()
        out[(p, q)] = pref * tr / (factorial(p) * factorial(q))
    return out


def _box_points(field: TotallyRealField, lattice: Sequence[Sequence[Fraction]], offset: FieldElement, w1: FieldElement, w2: FieldElement):
    """Points of offset + M in the half-open box (0,1] x [0,1) of the (w1, w2) cone."""
    bt = linalg.transpose([list(r) for r in lattice])
    coords_w = [linalg.solve(bt, w.coords) for w in (w1, w2)]
    sub = linalg.integer_hnf([[int(c) for c in cw] for cw in coords_w])
    # representatives of Z^2 / sub: upper-triangular HNF gives a box
    d1, d2 = sub[0][0], sub[1][1]
    wmat = linalg.transpose([list(w1.coords), list(w2.coords)])
    winv = linalg.inverse(wmat)
    pts = []
    for i in range(d1):
        for j in range(d2):
            z = [offset.coords[t] + i * Fraction(lattice[0][t]) + j * Fraction(lattice[1][t]) for t in range(2)]
            y1, y2 = linalg.mat_vec(winv, z)
            y1 = y1 - (y1.__ceil__() - 1)  # (0, 1]
            y2 = y2 - y2.__floor__()  # [0, 1)
            pts.append((y1, y2))
    return pts


def _sign_element(field: TotallyRealField, eta: tuple[int, int]) -> FieldElement:
    """An element with sign pattern η (rational multiple of 1 or of a trace-zero element)."""
    if eta[0] == eta[1]:
        return field(eta[0])
    # trace-zero element t has signs (+,-) or (-,+)
    w = next(b for b in field.basis_elements() if not b.is_rational())
    t = w * 2 - w.trace()
    return t if t.signs() == eta else -t


@lru_cache(maxsize=256)
def _coset_zeta_cached(field, lattice, offset_coords, units_gen_coords, k, eta):
    lattice = [list(r) for r in lattice]
    offset = field.element(offset_coords)
    if field.g == 1:
        r = abs(Fraction(lattice[0][0]) / field.one.coords[0])
        x = offset.coords[0] / field.one.coords[0]
        if eta == (-1,):
            x = -x
        a = x / r - (x / r).__ceil__() + 1  # (0, 1]
        return r**k * hurwitz_negative(k, a)
    eps = field.element(units_gen_coords)
    g_eta = _sign_element(field, eta)
    # smallest positive rational r with r*g_eta in M
    coords = linalg.solve(linalg.transpose(lattice), g_eta.coords)
    den = 1
    for c in coords:
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in coords:
        num = gcd(num, (c * den).numerator)
    r = Fraction(den, num)
    w1 = g_eta * r
    w2 = w1 * eps
    delta = eta[0] * eta[1]
    coef = _cone_coefficients(w1, w2, k, delta)
    total = Fraction(0)
    bp_cache: dict[tuple[int, Fraction], Fraction] = {}

    def bp(n: int, y: Fraction) -> Fraction:
        key = (n, y)
        v = bp_cache.get(key)
        if v is None:
            v = bp_cache[key] = bernoulli_poly(n, y)
        return v

    for y1, y2 in _box_points(field, lattice, offset, w1, w2):
        for (p, q), c in coef.items():
            if c:
                total += c * bp(p, 1 - y1) * bp(q, 1 - y2)
    return total


def shintani_coset_zeta(
    field: TotallyRealField,
    lattice: FractionalIdeal | Sequence[Sequence[object]],
    offset: FieldElement | int | Fraction,
    units: RayUnitGroup | None,
    k: int,
    eta: tuple[int, ...] | None = None,
) -> Fraction:
    """Exact ``ζ_η(offset + M, U, -k)`` for ``k >= 0`` (η defaults to totally positive).

    U must be a group of totally positive units preserving the coset.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    g = field.g
    if g > 2:
        raise UnsupportedDegreeError("Shintani oracle implemented for g <= 2")
    eta = tuple(eta) if eta is not None else (1,) * g
    rows = lattice.basis if isinstance(lattice, FractionalIdeal) else linalg.as_matrix(lattice)
    rows_t = tuple(tuple(Fraction(c) for c in r) for r in rows)
    offset = field(offset)
    gen = None
    if g == 2:
        if units is None or units.generator is None:
            raise ValueError("g = 2 needs a unit group")
        gen = units.generator.coords
        u = units.generator
        # the unit must preserve the coset: (u - 1) offset ∈ M and u M = M
        bt = linalg.transpose([list(r) for r in rows_t])
        for c in linalg.solve(bt, ((u - 1) * offset).coords):
            if c.denominator != 1:
                raise ValueError("unit group does not preserve the coset")
    return _coset_zeta_cached(field, rows_t, offset.coords, gen, k, eta)


def shintani_zeta(
    b: FractionalIdeal,
    f: FractionalIdeal,
    x: FieldElement,
    k: int,
    level: int = 1,
) -> Fraction:
    """ζ(b, f, x, -k) := ζ_+(x + f b^{-1}, O*_{n f}, -k) in exact rationals.

    ``level`` n enlarges the modulus so that torsion points x ∈ (1/n)O are
    allowed; the unit group is the totally positive units ≡ 1 mod n f.
    """
    field = b.field
    m = f * b.inverse()
    units = ray_units(field, f * Fraction(level))
    return shintani_coset_zeta(field, m, x, units, k)


def dedekind_zeta_value(field: TotallyRealField, k: int, level: int = 2) -> Fraction:
    """ζ_F(-k) assembled from partial values over the cosets x + nO, x ∈ O/nO.

    With ideal class number 1 every non-zero ideal is μO for μ ∈ O \\ 0
    modulo O*.  Splitting μ by its sign pattern η gives

        ζ_F(s) = [O* : O*_+]^{-1} Σ_η Σ_x ζ_η(x + nO, O*_(n), s) / [O*_+ : O*_(n)],

    which also covers narrow class number 2 (e.g. Q(sqrt3)).  The class
    number itself is assumed to be 1, not checked.
    """
    o = FractionalIdeal.unit(field)
    n_ideal = o * Fraction(level)
    units = ray_units(field, level)
    g = field.g
    signs = {(1,) * g, (-1,) * g}
    for u in field.fundamental_units:
        s = u.signs()
        signs |= {tuple(a * b for a, b in zip(s, t)) for t in signs}
    total = Fraction(0)
    for eta in product((1, -1), repeat=g):
        for idx in _residues(level, g):
            x = field.element(idx)
            total += shintani_coset_zeta(field, n_ideal, x, units, k, eta)
    return total / (units.exponent * len(signs))


def _residues(n: int, g: int):
    if g == 0:
        yield ()
        return
    for head in range(n):
        for tail in _residues(n, g - 1):
            yield (head,) + tail
