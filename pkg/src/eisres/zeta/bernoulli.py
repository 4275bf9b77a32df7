"""Bernoulli numbers and polynomials in exact arithmetic."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = ["bernoulli_number", "bernoulli_poly", "hurwitz_negative"]


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    return -sum((comb(n + 1, k) * bernoulli_number(k) for k in range(n)), Fraction(0)) / (n + 1)


def bernoulli_poly(n: int, x: Fraction | int) -> Fraction:
    """B_n(x) = Σ_k C(n,k) B_k x^{n-k}."""
    x = Fraction(x)
    return sum((comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


def hurwitz_negative(k: int, a: Fraction | int) -> Fraction:
    """Hurwitz ζ(-k, a) = -B_{k+1}(a)/(k+1) for k >= 0."""
    return -bernoulli_poly(k + 1, a) / (k + 1)
