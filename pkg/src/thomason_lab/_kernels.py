"""Backend selection for the elimination kernel.

The compiled extension is used when importable; set ``THOMASON_LAB_PURE=1``
to force the pure-Python kernel.  Overflow in the int64 kernel falls back to
exact Python integers transparently.
"""

from __future__ import annotations

import os

import numpy as np

from . import _snf_py

BACKEND = "python"
_ext = None
if os.environ.get("THOMASON_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _snf_ext as _ext

        BACKEND = "cython"
    except ImportError:
        _ext = None


def diagonal_entries(M, backend: str | None = None) -> list[int]:
    backend = backend or BACKEND
    M = np.asarray(M)
    if M.size == 0:
        return []
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernel not available")
        if M.dtype != object:
            try:
                return [int(x) for x in _ext.diagonal_entries(np.array(M, dtype=np.int64, order="C"))]
            except OverflowError:
                pass
    return _snf_py.diagonal_entries([[int(x) for x in row] for row in M.tolist()])


def invariant_factors(M, backend: str | None = None) -> list[int]:
    return _snf_py.divisibility_chain(diagonal_entries(M, backend))
