"""Pure numpy implementations of the hot loops.

These mirror ``_ckernels.pyx`` function for function.  They are used when
the compiled extension is unavailable and serve as its reference in the
kernel tests and the benchmark.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["scan_sector", "character_sum", "tree_sum"]

BLOCK = 256


def tree_sum(values: np.ndarray, block: int = BLOCK) -> complex:
    """Deterministic blocked reduction: sequential inside fixed-size blocks,
    then a pairwise tree over the block sums."""
    values = np.asarray(values, dtype=np.complex128)
    if values.size == 0:
        return 0j
    nb = -(-values.size // block)
    padded = np.zeros(nb * block, dtype=np.complex128)
    padded[: values.size] = values
    # cumsum is strictly sequential, so each block sum matches a plain loop.
    sums = np.cumsum(padded.reshape(nb, block), axis=1)[:, -1].tolist()
    while len(sums) > 1:
        nxt = [sums[i] + sums[i + 1] for i in range(0, len(sums) - 1, 2)]
        if len(sums) % 2:
            nxt.append(sums[-1])
        sums = nxt
    return sums[0]


def scan_sector(
    basis: np.ndarray,
    offset: np.ndarray,
    a_lo: int,
    a_hi: int,
    x1: float,
    x2: float,
    bound: float,
    log_period: float,
    tol: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Enumerate ``λ = offset + a·B[:,0] + b·B[:,1]`` (g = 2) with

    ``|λ_1| <= x1``, ``|λ_2| <= x2``, ``0 < |λ_1 λ_2| <= bound`` and
    ``c = log|λ_2/λ_1| / log_period`` in ``[-tol, 1 + tol)``.

    Returns integer coordinates ``(N, 2)`` and the float ``c`` values.
    """
    b00, b01 = float(basis[0, 0]), float(basis[0, 1])
    b10, b11 = float(basis[1, 0]), float(basis[1, 1])
    o0, o1 = float(offset[0]), float(offset[1])
    coords: list[np.ndarray] = []
    cvals: list[np.ndarray] = []
    for a in range(int(a_lo), int(a_hi) + 1):
        lo, hi = -math.inf, math.inf
        for base, coef, lim in ((o0 + a * b00, b01, x1), (o1 + a * b10, b11, x2)):
            if coef == 0.0:
                if abs(base) > lim:
                    lo, hi = 1.0, 0.0
                continue
            u, v = (-lim - base) / coef, (lim - base) / coef
            if u > v:
                u, v = v, u
            lo, hi = max(lo, u), min(hi, v)
        b_lo, b_hi = math.ceil(lo), math.floor(hi)
        if b_lo > b_hi:
            continue
        b = np.arange(b_lo, b_hi + 1, dtype=np.int64)
        l1 = o0 + a * b00 + b * b01
        l2 = o1 + a * b10 + b * b11
        nrm = np.abs(l1 * l2)
        keep = (nrm > 0) & (nrm <= bound)
        if not keep.any():
            continue
        b, l1, l2 = b[keep], l1[keep], l2[keep]
        c = np.log(np.abs(l2) / np.abs(l1)) / log_period
        keep = (c >= -tol) & (c < 1.0 + tol)
        if keep.any():
            bb = b[keep]
            coords.append(np.stack([np.full(bb.size, a, dtype=np.int64), bb], axis=1))
            cvals.append(c[keep])
    if not coords:
        return np.zeros((0, 2), dtype=np.int64), np.zeros(0)
    return np.concatenate(coords), np.concatenate(cvals)


def character_sum(
    coords: np.ndarray,
    numerators: np.ndarray,
    coefficients: np.ndarray,
    n: int,
    sign: int,
    weights: np.ndarray,
) -> complex:
    """``Σ_ρ w_ρ Σ_σ l_σ exp(sign·2πi (m_ρ·c_σ mod n)/n)`` with tree reduction.

    ``coords`` are the integer coordinates m_ρ of ρ in the dual basis and
    ``numerators`` the coordinates c_σ of σ = c_σ/n in the primal basis, so
    the trace pairing is exactly ``m·c/n``.
    """
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    if coords.shape[0] == 0:
        return 0j
    numerators = np.ascontiguousarray(numerators, dtype=np.int64)
    coefficients = np.asarray(coefficients, dtype=np.complex128)
    table = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    idx = np.mod(coords @ numerators.T, n)
    vals = table[idx] @ coefficients
    return tree_sum(np.asarray(weights, dtype=np.float64) * vals)
