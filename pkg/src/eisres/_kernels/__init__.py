"""Hot kernels with a compiled core and a numpy fallback.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure numpy module is selected.  Set ``EISRES_PURE_PYTHON=1`` to force the
fallback (the kernel tests and the benchmark compare both).
"""

from __future__ import annotations

import os

from . import _fallback

BACKEND: str

if os.environ.get("EISRES_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "numpy"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _fallback
        BACKEND = "numpy"

scan_sector = _impl.scan_sector
character_sum = _impl.character_sum
tree_sum = _impl.tree_sum

__all__ = ["BACKEND", "scan_sector", "character_sum", "tree_sum", "backend_module"]


def backend_module(name: str):
    """Return the kernel module called ``name`` (``"cython"`` or ``"numpy"``)."""
    if name == "numpy":
        return _fallback
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
