from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisres._kernels import BACKEND, backend_module

cy = pytest.importorskip("eisres._kernels._ckernels")
npk = backend_module("numpy")


def test_backend_selected_at_import():
    assert BACKEND in ("cython", "numpy")
    env = dict(os.environ, EISRES_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import eisres._kernels as k; print(k.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 300))
def test_tree_sum_agrees(size, block):
    x = np.random.default_rng(size).normal(size=size) + 1j * np.random.default_rng(size + 1).normal(size=size)
    assert cy.tree_sum(x, block) == npk.tree_sum(x, block)


def test_tree_sum_empty():
    assert cy.tree_sum(np.zeros(0, dtype=complex)) == 0 == npk.tree_sum(np.zeros(0, dtype=complex))


@pytest.mark.parametrize("bound", [10.0, 500.0, 5000.0])
def test_scan_sector_agrees(bound):
    r = np.sqrt(2.0)
    basis = np.array([[1.0, r], [1.0, -r]])
    L = 2 * np.log(1 + r)
    x = np.sqrt(bound) * np.exp(L)
    args = (basis, np.array([1 / 3, 1 / 3]), -int(x) - 2, int(x) + 2, x, x, bound, L, 1e-12)
    ca, cc = cy.scan_sector(*args)
    na, nc = npk.scan_sector(*args)
    assert np.array_equal(ca, na)
    assert np.allclose(cc, nc, rtol=0, atol=1e-14)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.sampled_from([1, -1]))
def test_character_sum_agrees(seed, n, sign):
    rng = np.random.default_rng(seed)
    coords = rng.integers(-500, 500, size=(400, 2))
    num = rng.integers(0, n, size=(3, 2))
    coef = rng.normal(size=3)
    w = rng.uniform(size=400)
    a = cy.character_sum(coords, num, coef, n, sign, w)
    b = npk.character_sum(coords, num, coef, n, sign, w)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))
