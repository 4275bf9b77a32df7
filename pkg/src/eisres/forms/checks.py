"""Numerical verification of exterior-calculus identities.

Coordinates on the torus bundle chart are (x_1..x_g, t_1..t_g), stored as
indices 0..g-1 and g..2g-1.  The vector field attached to ρ ∈ R^g is
q_t(ρ) = Σ t_i^2 ρ_i ∂_{x_i}; vol = c dx_1 ∧ ... ∧ dx_g.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt
from typing import Sequence

import numpy as np

from .forms import DifferentialForm, VectorField
from .jets import JetSeries
from .scalar import ScalarField, coord, const, exp

__all__ = [
    "rho_vector_field",
    "euler_vector_field",
    "volume_form",
    "nori_form",
    "euler_identity_check",
    "pullback_vanishing_residual",
    "d_squared_residual",
    "iota_squared_residual",
    "cartan_residual",
    "random_scalar_field",
    "random_form",
    "random_vector_field",
    "BatteryReport",
    "run_battery",
    "vol_normalization",
    "sup_norm",
]


def rho_vector_field(rho: Sequence[float], g: int | None = None) -> VectorField:
    """q_t(ρ) on the 2g-dimensional (x, t) chart."""
    g = len(rho) if g is None else g
    comps = [const(float(r)) * coord(g + i) ** 2 for i, r in enumerate(rho)]
    return VectorField.embedded(2 * g, 0, comps)


def euler_vector_field(g: int) -> VectorField:
    """ℰ = Σ x_i ∂_{x_i} on R^g."""
    return VectorField([coord(i) for i in range(g)])


def volume_form(dim: int, g: int, constant: complex = 1.0) -> DifferentialForm:
    return DifferentialForm.volume(dim, tuple(range(g)), constant)


def nori_form(rho: Sequence[float], m: int, constant: complex = 1.0) -> DifferentialForm:
    """ι_ρ (d ∘ ι_ρ)^m vol on the (x, t) chart."""
    g = len(rho)
    X = rho_vector_field(rho)
    form = volume_form(2 * g, g, constant)
    for _ in range(m):
        form = form.contract(X).exterior_d()
    return form.contract(X)


def sup_norm(values) -> float:
    """Max modulus over scalar or jet values (jets: max over coefficients)."""
    vals = [v.max_abs() if isinstance(v, JetSeries) else abs(complex(v)) for v in values]
    return max(vals) if vals else 0.0


_sup = sup_norm


def euler_identity_check(rho: Sequence[float], t: Sequence[float], constant: complex = 1.0, x: Sequence[float] | None = None) -> float:
    """Sup-norm of ι_ρ(L_ρ)^{g-1} vol - (g-1)! q_t(ρ)^* ι_ℰ vol at the point (x, t)."""
    g = len(rho)
    if len(t) != g:
        raise ValueError("ρ and t must have the same length")
    if not any(rho):
        raise ValueError("ρ must be non-zero")
    X = rho_vector_field(rho)
    vol = volume_form(2 * g, g, constant)
    lhs = vol
    for _ in range(g - 1):
        lhs = lhs.lie_derivative(X)
    lhs = lhs.contract(X)
    # right side: pull ι_ℰ vol back along x_i = t_i^2 ρ_i (a map from t-space)
    euler_part = volume_form(g, g, constant).contract(euler_vector_field(g))
    q = [const(float(r)) * coord(i) ** 2 for i, r in enumerate(rho)]
    pulled = euler_part.pullback(q, g)
    shift = {i: coord(g + i) for i in range(g)}
    rhs = {tuple(i + g for i in idx): f.substitute(shift) * factorial(g - 1) for idx, f in pulled.terms.items()}
    rhs_form = DifferentialForm(2 * g, g - 1, rhs)
    x = [0.3] * g if x is None else list(x)
    point = list(x) + list(t)
    return _sup((lhs - rhs_form).evaluate(point).values())


def pullback_vanishing_residual(rho: Sequence[float], t: Sequence[float], m: int, constant: complex = 1.0) -> float:
    """Sup-norm of e^* ι_ρ(d ∘ ι_ρ)^m vol at t (e: zero section x = 0)."""
    g = len(rho)
    form = nori_form(rho, m, constant)
    jac = np.vstack([np.zeros((g, g)), np.eye(g)])
    return _sup(form.pullback_at([0.0] * g + list(t), jac).values())


# generic identities ---------------------------------------------------------------
def d_squared_residual(form: DifferentialForm, point: Sequence[float]) -> float:
    return _sup(form.exterior_d().exterior_d().evaluate(point).values())


def iota_squared_residual(form: DifferentialForm, X: VectorField, point: Sequence[float]) -> float:
    if form.degree < 2:
        return 0.0
    return _sup(form.contract(X).contract(X).evaluate(point).values())


def _transport(form: DifferentialForm, X: VectorField, p: np.ndarray, h: float) -> np.ndarray:
    """Components of φ_h^* ω at p, with φ_h(q) = q + h X(q) (first-order flow)."""
    xp = X.evaluate(p).real
    jac = np.eye(len(p)) + h * X.jacobian(p).real
    vals = form.pullback_at(p + h * xp, jac)
    return np.array([vals[k] for k in sorted(vals)])


def cartan_residual(form: DifferentialForm, X: VectorField, point: Sequence[float], h: float = 1e-3) -> float:
    """Relative gap between d ι_X ω + ι_X d ω and the flow-transport derivative.

    The transport derivative is a central difference in h, Richardson
    extrapolated once, so its error is O(h^4).
    """
    p = np.asarray(point, dtype=float)

    def central(step: float) -> np.ndarray:
        return (_transport(form, X, p, step) - _transport(form, X, p, -step)) / (2 * step)

    fd = (4 * central(h / 2) - central(h)) / 3
    lie = form.lie_derivative(X)
    exact = lie.pullback_at(p, np.eye(len(p)))
    ex = np.array([exact[k] for k in sorted(exact)])
    return float(np.max(np.abs(fd - ex)) / max(1.0, float(np.max(np.abs(ex)))))


# random battery -----------------------------------------------------------------------
def random_scalar_field(rng: np.random.Generator, dim: int, scale: float = 0.5) -> ScalarField:
    """(quadratic polynomial) · exp(linear) / (2 + Σ x_i^2)."""
    x = [coord(i) for i in range(dim)]
    poly = const(float(rng.normal()))
    for i in range(dim):
        poly = poly + float(rng.normal()) * x[i]
        for j in range(i, dim):
            poly = poly + float(scale * rng.normal()) * x[i] * x[j]
    lin = const(0.0)
    for i in range(dim):
        lin = lin + float(scale * rng.normal()) * x[i]
    denom = const(2.0)
    for i in range(dim):
        denom = denom + x[i] ** 2
    return poly * exp(lin) / denom


def random_form(rng: np.random.Generator, dim: int, degree: int, density: float = 0.7) -> DifferentialForm:
    from itertools import combinations

    terms = {}
    for idx in combinations(range(dim), degree):
        if rng.random() < density:
            terms[idx] = random_scalar_field(rng, dim)
    if not terms:
        idx = tuple(range(degree))
        terms[idx] = random_scalar_field(rng, dim)
    return DifferentialForm(dim, degree, terms)


def random_vector_field(rng: np.random.Generator, dim: int) -> VectorField:
    return VectorField(random_scalar_field(rng, dim) for _ in range(dim))


@dataclass(frozen=True)
class BatteryReport:
    cases: int
    d_squared: float
    iota_squared: float
    cartan: float
    euler: float
    pullback: float

    @property
    def worst(self) -> float:
        return max(self.d_squared, self.iota_squared, self.cartan, self.euler, self.pullback)


def run_battery(seed: int = 0, cases: int = 100, dims: Sequence[int] = (2, 3, 4)) -> BatteryReport:
    """Max residuals of d^2 = 0, ι^2 = 0, Cartan, the Euler identity and the m < g-1 pullback."""
    rng = np.random.default_rng(seed)
    d2 = i2 = ca = eu = pb = 0.0
    for n in range(cases):
        dim = dims[n % len(dims)]
        degree = int(rng.integers(0, dim))
        form = random_form(rng, dim, degree)
        X = random_vector_field(rng, dim)
        pt = rng.uniform(-1, 1, size=dim)
        d2 = max(d2, d_squared_residual(form, pt))
        i2 = max(i2, iota_squared_residual(form, X, pt))
        ca = max(ca, cartan_residual(form, X, pt))
        g = 1 + n % 2
        rho = rng.normal(size=g)
        t = rng.uniform(0.3, 2.0, size=g)
        eu = max(eu, euler_identity_check(rho, t, x=rng.uniform(-1, 1, size=g)))
        for m in range(g - 1):
            pb = max(pb, pullback_vanishing_residual(rho, t, m))
    return BatteryReport(cases, d2, i2, ca, eu, pb)


def vol_normalization(ideal, nodes: int = 8) -> float:
    """∫ vol over a fundamental cell of the ideal, by Gauss-Legendre on [0,1]^g.

    vol = |d_F|^{-1/2} N(a)^{-1} dx_1 ∧ ... ∧ dx_g; the cell is the image of
    the unit cube under the embedded ideal basis.
    """
    field = ideal.field
    g = field.g
    c = 1.0 / (sqrt(abs(field.discriminant)) * float(ideal.norm))
    vol = volume_form(g, g, c)
    B = np.asarray(ideal.embedding_basis, dtype=float)  # columns: embedded basis vectors
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    xs, ws = (xs + 1) / 2, ws / 2
    total = 0.0
    for idx in np.ndindex(*(nodes,) * g):
        y = np.array([xs[i] for i in idx])
        w = float(np.prod([ws[i] for i in idx]))
        val = vol.pullback_at(B @ y, B)[tuple(range(g))]
        total += w * complex(val).real
    return abs(total)
