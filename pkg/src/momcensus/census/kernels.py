"""Backend dispatch for the gluing search.

The accelerated kernel is used by default; setting the environment
variable ``MOMCENSUS_NO_NUMBA`` (to anything nonempty) or passing
``backend="numpy"`` selects the plain-Python reference path instead.
Both paths run the identical algorithm; the benchmark script compares
them head to head.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import PreconditionError
from .dipyramid import Assembly

_ENV_FLAG = "MOMCENSUS_NO_NUMBA"


def backend_name(requested: str | None = None) -> str:
    if requested is not None:
        if requested not in ("numba", "numpy"):
            raise PreconditionError(f"unknown kernel backend {requested!r}")
        return requested
    if os.environ.get(_ENV_FLAG):
        return "numpy"
    try:
        from . import _kernels_numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


def _search_fn(backend: str):
    if backend == "numba":
        from ._kernels_numba import search
    else:
        from ._kernels_numpy import search
    return search


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def run_search(assembly: Assembly, *, euler_only: bool = True,
               first_partner: int = -1, backend: str | None = None,
               initial_capacity: int | None = None) -> tuple[np.ndarray, int]:
    """Run the matching search over one inventory (optionally restricted
    to one first-level branch).

    Returns (canonical matching rows with possible duplicates, raw leaf
    count).  The output buffer grows geometrically on overflow."""
    search = _search_fn(backend_name(backend))
    F = assembly.face_count
    leaves = _double_factorial(F - 1 if first_partner < 0 else F - 3)
    cap = initial_capacity or max(4096, min(leaves, 1 << 19))
    while True:
        out = np.zeros((cap, F), dtype=np.int64)
        n_rows, raw = search(assembly.slot_vertex, assembly.slot_edge,
                             assembly.end_id, assembly.end_vertex,
                             assembly.corner_count, assembly.vertex_count,
                             assembly.edge_count, assembly.sym, assembly.sym_inv,
                             euler_only, first_partner, out)
        if n_rows >= 0:
            return out[:n_rows].copy(), raw
        cap = min(cap * 4, leaves)
