"""The Γ-factor Γ_ε(s) of a sign character."""

from __future__ import annotations

import mpmath

from ..field import SignCharacter

__all__ = ["GammaPoleError", "gamma_factor", "reciprocal_gamma_factor"]


class GammaPoleError(ValueError):
    """s hits a pole of one of the Γ terms."""


def _parts(eps: SignCharacter, s):
    g, e = len(eps.signs), eps.size
    return g, e, mpmath.mpf(s) if not isinstance(s, mpmath.mpc) else s


def gamma_factor(eps: SignCharacter, s) -> mpmath.mpf:
    """π^{-(sg+|ε|)/2} Γ((s+1)/2)^{|ε|} Γ(s/2)^{g-|ε|}."""
    g, e, s = _parts(eps, s)
    for arg, power in (((s + 1) / 2, e), (s / 2, g - e)):
        if power and mpmath.im(arg) == 0 and mpmath.re(arg) <= 0 and mpmath.re(arg) == mpmath.floor(mpmath.re(arg)):
            raise GammaPoleError(f"Γ_ε has a pole at s = {s}")
    return mpmath.pi ** (-(s * g + e) / 2) * mpmath.gamma((s + 1) / 2) ** e * mpmath.gamma(s / 2) ** (g - e)


def reciprocal_gamma_factor(eps: SignCharacter, s) -> mpmath.mpf:
    """1/Γ_ε(s), entire in s (zero exactly at the poles of Γ_ε)."""
    g, e, s = _parts(eps, s)
    return mpmath.pi ** ((s * g + e) / 2) * mpmath.rgamma((s + 1) / 2) ** e * mpmath.rgamma(s / 2) ** (g - e)
