"""Kernel dispatch: numba-compiled loops vs pure-numpy fallbacks.

Every hot inner loop in this package exists twice: a ``@njit`` version and a
vectorized numpy version with identical semantics. The active path is chosen
once at import time:

* numba available and ``DENSEKP_NUMBA`` unset/truthy -> numba kernels,
* otherwise -> numpy kernels.

Set ``DENSEKP_NUMBA=0`` before importing ``densekp`` to force the numpy path
(useful for debugging and for the benchmark baseline). Both paths of a kernel
are always importable so tests and ``benchmarks/bench_kernels.py`` can compare
them directly in one process.
"""

import os

ENV_FLAG = "DENSEKP_NUMBA"

try:
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        """Identity decorator standing in for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

    def prange(*args):
        return range(*args)


def _flag_enabled() -> bool:
    value = os.environ.get(ENV_FLAG, "1").strip().lower()
    return value not in {"0", "false", "off", "no"}


NUMBA_ENABLED = HAS_NUMBA and _flag_enabled()


def select(numba_impl, numpy_impl):
    """Return the kernel implementation the current process should use."""
    return numba_impl if NUMBA_ENABLED else numpy_impl
