"""Backend selection for the dense contraction kernel.

The Einstein product reduces to a matrix product of mode-split unfoldings,
so a single dense matmul kernel is the hot path of the whole package.
Two implementations are provided:

* ``numba`` -- an ``@njit``-compiled triple loop (default when numba imports),
* ``numpy`` -- plain ``a @ b``.

The initial backend is taken from the ``TENSYL_BACKEND`` environment
variable (``numba`` or ``numpy``); ``set_backend`` switches at runtime,
which the benchmark and the test suite use to compare both paths.
"""

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def _matmul_numpy(a, b):
    return a @ b


if _HAVE_NUMBA:

    @njit(cache=True)
    def _matmul_numba(a, b):
        m, kk = a.shape
        n = b.shape[1]
        out = np.zeros((m, n))
        for j in range(n):
            for t in range(kk):
                btj = b[t, j]
                if btj != 0.0:
                    for i in range(m):
                        out[i, j] += a[i, t] * btj
        return out


_active = None


def set_backend(name):
    """Select the contraction kernel: ``"numba"`` or ``"numpy"``."""
    global _active
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not _HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not importable")
    _active = name


def active_backend():
    return _active


def matmul(a, b):
    """Dense product of two 2-D float64 arrays via the active backend."""
    if _active == "numba":
        return _matmul_numba(np.ascontiguousarray(a), np.ascontiguousarray(b))
    return _matmul_numpy(a, b)


_env = os.environ.get("TENSYL_BACKEND", "").strip().lower()
if _env in ("numba", "numpy"):
    set_backend(_env)
elif _HAVE_NUMBA:
    set_backend("numba")
else:  # pragma: no cover
    set_backend("numpy")
