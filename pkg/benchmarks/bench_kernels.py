"""Compare the compiled kernels with the numpy fallback.

Run ``python3 benchmarks/bench_kernels.py [--repeat N] [--bound R]``.  For
each kernel it prints the best wall time per backend, the speed-up and the
largest difference between the two outputs (which should be at rounding
level, and exactly zero for the integer enumeration).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from eisres._kernels import backend_module


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def sector_case(bound: float):
    # Q(sqrt2): columns are the two embeddings of 1 and sqrt2, unit 3 + 2 sqrt2.
    r = np.sqrt(2.0)
    basis = np.array([[1.0, r], [1.0, -r]])
    log_period = 2 * np.log(1 + r)
    x = np.sqrt(bound) * np.exp(log_period)
    a_hi = int(x) + 2
    return (basis, np.zeros(2), -a_hi, a_hi, x, x, bound, log_period, 1e-12)


def character_case(size: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    coords = rng.integers(-10_000, 10_000, size=(size, 2))
    numerators = rng.integers(0, 3, size=(9, 2))
    coefficients = rng.normal(size=9)
    weights = rng.uniform(size=size)
    return (coords, numerators, coefficients, 3, -1, weights)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bound", type=float, default=1e4)
    ap.add_argument("--size", type=int, default=200_000)
    args = ap.parse_args(argv)

    mods = {name: backend_module(name) for name in ("cython", "numpy")}
    cases = {
        "scan_sector": lambda m: m.scan_sector(*sector_case(args.bound)),
        "character_sum": lambda m: m.character_sum(*character_case(args.size)),
        "tree_sum": lambda m: m.tree_sum(np.random.default_rng(1).normal(size=args.size) + 0j),
    }
    print(f"{'kernel':<15}{'cython [s]':>12}{'numpy [s]':>12}{'speed-up':>10}{'max |diff|':>14}")
    for name, run in cases.items():
        tc, oc = _best(lambda: run(mods["cython"]), args.repeat)
        tn, on = _best(lambda: run(mods["numpy"]), args.repeat)
        if isinstance(oc, tuple):
            same_coords = np.array_equal(oc[0], on[0])
            diff = float(np.max(np.abs(oc[1] - on[1]))) if same_coords and len(oc[1]) else (0.0 if same_coords else float("inf"))
        else:
            diff = abs(oc - on)
        print(f"{name:<15}{tc:>12.4f}{tn:>12.4f}{tn / tc:>10.1f}{diff:>14.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
