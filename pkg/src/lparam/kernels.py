"""Integer hot loops with a numba backend and a plain numpy fallback.

Backend selection: ``LPARAM_KERNELS=numba`` or ``LPARAM_KERNELS=numpy``.
Without the variable numba is used when it imports, numpy otherwise.
Both backends return identical integer results; only speed differs.
"""

from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("LPARAM_KERNELS", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"LPARAM_KERNELS must be 'numba' or 'numpy', got {_requested!r}")

try:
    if _requested == "numpy":
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    if _requested == "numba":
        raise

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# numpy implementations

def _linext_numpy(pred: np.ndarray) -> int:
    n = pred.shape[0]
    size = 1 << n
    ways = np.zeros(size, dtype=np.int64)
    ways[0] = 1
    masks = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int64)
    for i in range(n):
        pop += (masks >> i) & 1
    for layer in range(n):
        cur = masks[(pop == layer) & (ways > 0)]
        for i in range(n):
            ok = ((cur >> i) & 1 == 0) & ((cur & pred[i]) == pred[i])
            src = cur[ok]
            np.add.at(ways, src | (1 << i), ways[src])
    return int(ways[size - 1])


def _standard_numpy(monos: np.ndarray, gens: np.ndarray) -> np.ndarray:
    if gens.shape[0] == 0:
        return np.ones(monos.shape[0], dtype=np.bool_)
    if monos.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    divisible = (monos[:, None, :] >= gens[None, :, :]).all(axis=-1).any(axis=-1)
    return ~divisible


if HAVE_NUMBA:

    @njit(cache=True)
    def _linext_numba(pred):
        n = pred.shape[0]
        size = 1 << n
        ways = np.zeros(size, dtype=np.int64)
        ways[0] = 1
        for mask in range(size):
            w = ways[mask]
            if w == 0:
                continue
            for i in range(n):
                if (mask >> i) & 1:
                    continue
                if (mask & pred[i]) == pred[i]:
                    ways[mask | (1 << i)] += w
        return ways[size - 1]

    @njit(cache=True)
    def _standard_numba(monos, gens):
        m, nv = monos.shape
        g = gens.shape[0]
        out = np.ones(m, dtype=np.bool_)
        for a in range(m):
            for b in range(g):
                div = True
                for c in range(nv):
                    if monos[a, c] < gens[b, c]:
                        div = False
                        break
                if div:
                    out[a] = False
                    break
        return out


def count_linear_extensions(pred_masks) -> int:
    """Number of linear extensions of a poset on n <= 20 elements.

    ``pred_masks[i]`` is the bitmask of elements that must come before i.
    """
    pred = np.asarray(pred_masks, dtype=np.int64)
    if pred.shape[0] == 0:
        return 1
    if HAVE_NUMBA:
        return int(_linext_numba(pred))
    return _linext_numpy(pred)


def standard_mask(monos, gens) -> np.ndarray:
    """Boolean mask of rows of ``monos`` divisible by no row of ``gens``."""
    monos = np.ascontiguousarray(monos, dtype=np.int64)
    gens = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, monos.shape[1] if monos.ndim == 2 else 0)
    if HAVE_NUMBA:
        return _standard_numba(monos, gens)
    return _standard_numpy(monos, gens)


def reference(name: str):
    """The numpy implementation of a kernel, for cross-checks and benchmarks."""
    return {"count_linear_extensions": lambda p: _linext_numpy(np.asarray(p, dtype=np.int64)) if len(p) else 1,
            "standard_mask": lambda m, g: _standard_numpy(np.asarray(m, dtype=np.int64),
                                                          np.asarray(g, dtype=np.int64).reshape(-1, np.asarray(m).shape[1]))}[name]
