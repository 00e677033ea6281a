"""Backend selection for the numeric kernels.

Set ``LABELPCOR_DISABLE_NUMBA=1`` to force the pure-numpy path.  When numba
is missing the numpy path is used regardless.
"""

import os
import warnings

NUMBA_ENV = "LABELPCOR_DISABLE_NUMBA"
THREADS_ENV = "LABELPCOR_THREADS"


class PerformanceWarning(UserWarning):
    pass


def _env_flag(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
        # system TBB is often too old for numba; prefer OpenMP
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

    prange = range


def default_backend():
    """Backend used when a caller does not ask for one explicitly."""
    if HAVE_NUMBA and not _env_flag(NUMBA_ENV):
        return "numba"
    return "numpy"


def resolve_backend(backend=None):
    if backend is None:
        return default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}; expected 'numba' or 'numpy'")
    if backend == "numba" and not HAVE_NUMBA:
        warnings.warn("numba is not installed; using numpy", PerformanceWarning)
        return "numpy"
    return backend


def set_threads(n=None):
    """Cap numba worker threads; ``None`` reads ``LABELPCOR_THREADS``."""
    if n is None:
        raw = os.environ.get(THREADS_ENV)
        if not raw:
            return
        n = int(raw)
    if n < 1:
        raise ValueError("thread count must be positive")
    if HAVE_NUMBA:
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


__all__ = ["njit", "prange", "HAVE_NUMBA", "PerformanceWarning",
           "default_backend", "resolve_backend", "set_threads"]
