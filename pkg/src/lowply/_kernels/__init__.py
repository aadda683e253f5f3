"""Hot inner loops, compiled with numba when available.

Every kernel exists in two flavours: a ``*_numba`` function (the plain
Python body run through ``numba.njit``) and a ``*_numpy`` fallback.  The
public names below are bound at import time according to the
``LOWPLY_BACKEND`` environment variable (``numba`` or ``numpy``).  If numba
cannot be imported the numpy path is used regardless.
"""

import os

from ._jit import NUMBA_AVAILABLE
from . import gf2, search, vsep

_requested = os.environ.get("LOWPLY_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"LOWPLY_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

BACKEND = "numba" if (_requested == "numba" and NUMBA_AVAILABLE) else "numpy"

if BACKEND == "numba":
    independent_rows = gf2.independent_rows_numba
    shortest_cycle = search.shortest_cycle_numba
    vertex_separation_table = vsep.vertex_separation_numba
    min_ply_search = search.min_ply_search_numba
else:
    independent_rows = gf2.independent_rows_numpy
    shortest_cycle = search.shortest_cycle_python
    vertex_separation_table = vsep.vertex_separation_numpy
    min_ply_search = search.min_ply_search_python

__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "independent_rows",
    "shortest_cycle",
    "vertex_separation_table",
    "min_ply_search",
]
