try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    NUMBA_AVAILABLE = False


def maybe_njit(func):
    """Compile ``func`` in nopython mode, or hand back the Python function."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True, nogil=True)(func)
