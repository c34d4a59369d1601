"""Hot numeric kernels: dense coefficient-window convolution mod p.

Polynomial products dominate the runtime of everything above this layer
(symplecticity checks, Euclidean factorization, orbit traces), so the dense
path is JIT-compiled with numba when available.  Setting CQCA_DISABLE_NUMBA
to 1/true/yes/on in the environment selects the pure-numpy fallback at
import time; select_backend() flips it at runtime.  Both implementations
are exported under fixed names so benchmarks/bench_kernels.py and the test
suite can compare them directly.

Inputs are int64 arrays of coefficients already reduced to [0, p).  The
callers guarantee window sizes small enough that int64 accumulation cannot
overflow (see the budget constants in laurent.py).
"""

import os

import numpy as np

__all__ = [
    "HAVE_NUMBA",
    "NUMBA_DISABLED",
    "backend",
    "select_backend",
    "convolve_mod",
    "convolve2d_mod",
    "convolve_mod_numpy",
    "convolve2d_mod_numpy",
    "convolve_mod_numba",
    "convolve2d_mod_numba",
]

NUMBA_DISABLED = os.environ.get("CQCA_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via CQCA_DISABLE_NUMBA")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None


def convolve_mod_numpy(a, b, p):
    """Full 1D convolution of two coefficient windows, reduced mod p."""
    return np.convolve(a, b) % p


def convolve2d_mod_numpy(a, b, p):
    """Full 2D convolution via shift-and-add over the nonzeros of ``a``."""
    out = np.zeros(
        (a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=np.int64
    )
    rows, cols = np.nonzero(a)
    for i, j in zip(rows.tolist(), cols.tolist()):
        out[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
    out %= p
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _convolve_mod_jit(a, b, p):
        n = a.shape[0]
        m = b.shape[0]
        out = np.zeros(n + m - 1, dtype=np.int64)
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(m):
                out[i + j] += ai * b[j]
        for k in range(n + m - 1):
            out[k] %= p
        return out

    @njit(cache=True)
    def _convolve2d_mod_jit(a, b, p):
        n0 = a.shape[0]
        n1 = a.shape[1]
        m0 = b.shape[0]
        m1 = b.shape[1]
        out = np.zeros((n0 + m0 - 1, n1 + m1 - 1), dtype=np.int64)
        for i0 in range(n0):
            for i1 in range(n1):
                aij = a[i0, i1]
                if aij == 0:
                    continue
                for j0 in range(m0):
                    for j1 in range(m1):
                        out[i0 + j0, i1 + j1] += aij * b[j0, j1]
        for k0 in range(n0 + m0 - 1):
            for k1 in range(n1 + m1 - 1):
                out[k0, k1] %= p
        return out

    def convolve_mod_numba(a, b, p):
        return _convolve_mod_jit(a, b, p)

    def convolve2d_mod_numba(a, b, p):
        return _convolve2d_mod_jit(a, b, p)

else:
    convolve_mod_numba = None
    convolve2d_mod_numba = None

_BACKENDS = {"numpy": (convolve_mod_numpy, convolve2d_mod_numpy)}
if HAVE_NUMBA:
    _BACKENDS["numba"] = (convolve_mod_numba, convolve2d_mod_numba)

_active = "numba" if HAVE_NUMBA else "numpy"


def backend() -> str:
    """Name of the currently selected backend ('numba' or 'numpy')."""
    return _active


def select_backend(name: str) -> None:
    """Switch the active backend at runtime ('numba' requires numba importable)."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    _active = name


def convolve_mod(a, b, p):
    return _BACKENDS[_active][0](a, b, p)


def convolve2d_mod(a, b, p):
    return _BACKENDS[_active][1](a, b, p)
