"""Hot integer kernels over Z[zeta_N] with a compiled core and a Python twin.

The compiled extension is used when it imports; set ``MULTINETS_PURE_PYTHON=1``
to force the fallback.  Inputs whose values could overflow 64-bit integers in
the compiled core are routed to the Python implementation automatically.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pycore as python

try:
    if os.environ.get("MULTINETS_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _core as compiled
except ImportError:
    compiled = None

BACKEND = "compiled" if compiled is not None else "python"

_LIMIT = 1 << 62
_MAXPHI = 32


def _growth(poly) -> int:
    phi = len(poly) - 1
    p = max(abs(int(c)) for c in poly)
    return phi * (1 + p) ** max(phi - 1, 0)


def _maxabs(arr) -> int:
    if isinstance(arr, np.ndarray) and arr.dtype != object:
        return int(np.abs(arr).max()) if arr.size else 0
    return max((abs(int(x)) for x in np.asarray(arr, dtype=object).ravel()), default=0)


def _as_int64(arr):
    return np.ascontiguousarray(np.asarray(arr, dtype=object).astype(np.int64))


def unit_hits(table):
    """Exponents (a, b, c) of unit points [z^a : z^b : z^c : 1] on a plane."""
    if compiled is not None:
        arr = np.asarray(table, dtype=object)
        if arr.shape[2] <= _MAXPHI and 4 * _maxabs(arr) < _LIMIT:
            return compiled.unit_hits(_as_int64(arr))
    return python.unit_hits(table)


def meet_incidence(lines, poly):
    """Pairwise meets of integer lines and their incidence with every line."""
    if compiled is not None:
        arr = np.asarray(lines, dtype=object)
        b = _maxabs(arr)
        g = _growth(poly)
        if len(poly) - 1 <= _MAXPHI and 6 * g * g * b * b * b < _LIMIT:
            return compiled.meet_incidence(_as_int64(arr), np.asarray(poly, dtype=np.int64))
    return python.meet_incidence(np.asarray(lines, dtype=object), poly)


def triple_scan(n, N, poly, power_table, budget):
    """Unit-point counts for planes through [1:1:1:1] and pairs of unit points."""
    if compiled is not None and len(poly) - 1 <= _MAXPHI and N <= 256:
        return compiled.triple_scan(
            n, N, np.asarray(poly, dtype=np.int64), np.asarray(power_table, dtype=np.int64), budget
        )
    return python.triple_scan(n, N, poly, power_table, budget)


triple_plane = python.triple_plane

__all__ = ["BACKEND", "compiled", "python", "unit_hits", "meet_incidence", "triple_scan", "triple_plane"]
