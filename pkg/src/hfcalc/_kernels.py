"""Word-packed GF(2) kernels.

Rows are stored as little-endian bit strings in ``uint64`` words: column ``j``
lives in word ``j >> 6`` at bit ``j & 63``.  Every kernel exists twice, once
compiled with numba and once in plain numpy; ``HFCALC_NO_NUMBA=1`` (or a
missing numba install) selects the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_ONE = np.uint64(1)


def _env_disables_numba() -> bool:
    return os.environ.get("HFCALC_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


try:  # pragma: no cover - exercised implicitly
    if _env_disables_numba():
        raise ImportError("numba disabled by HFCALC_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    njit = None
    HAVE_NUMBA = False


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------

def rref_numpy(words: np.ndarray, ncols: int) -> tuple[int, np.ndarray]:
    """Gauss-Jordan elimination in place on the first ``ncols`` columns.

    Returns ``(rank, pivots)``.  Columns past ``ncols`` are carried along, which
    is how callers track the row transform.
    """
    nrows = words.shape[0]
    pivots = np.empty(nrows, dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = _ONE << np.uint64(col & 63)
        hits = np.flatnonzero(words[rank:, w] & bit)
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
        mask = (words[:, w] & bit) != 0
        mask[rank] = False
        if mask.any():
            words[mask, w:] ^= words[rank, w:]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank].copy()


def rank_numpy(words: np.ndarray, ncols: int) -> int:
    """Rank by forward elimination only (destroys ``words``)."""
    nrows = words.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = _ONE << np.uint64(col & 63)
        hits = np.flatnonzero(words[rank:, w] & bit)
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
        below = rank + 1 + np.flatnonzero(words[rank + 1:, w] & bit)
        if below.size:
            words[below, w:] ^= words[rank, w:]
        rank += 1
    return rank


def matmul_numpy(a: np.ndarray, a_cols: int, b: np.ndarray) -> np.ndarray:
    """Product of packed ``a`` (n x a_cols) with packed ``b`` (a_cols x m)."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for k in range(a_cols):
        w = k >> 6
        bit = _ONE << np.uint64(k & 63)
        mask = (a[:, w] & bit) != 0
        if mask.any():
            out[mask] ^= b[k]
    return out


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

def _rref_loop(words, ncols):
    nrows = words.shape[0]
    nw = words.shape[1]
    pivots = np.empty(nrows, dtype=np.int64)
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = one << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if words[r, w] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nw):
                tmp = words[rank, k]
                words[rank, k] = words[piv, k]
                words[piv, k] = tmp
        for r in range(nrows):
            if r != rank and (words[r, w] & bit):
                for k in range(w, nw):
                    words[r, k] ^= words[rank, k]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank].copy()


def _rank_loop(words, ncols):
    nrows = words.shape[0]
    nw = words.shape[1]
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = one << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if words[r, w] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(w, nw):
                tmp = words[rank, k]
                words[rank, k] = words[piv, k]
                words[piv, k] = tmp
        for r in range(rank + 1, nrows):
            if words[r, w] & bit:
                for k in range(w, nw):
                    words[r, k] ^= words[rank, k]
        rank += 1
    return rank


def _matmul_loop(a, a_cols, b):
    n = a.shape[0]
    nw = b.shape[1]
    out = np.zeros((n, nw), dtype=np.uint64)
    one = np.uint64(1)
    for i in range(n):
        for k in range(a_cols):
            if a[i, k >> 6] & (one << np.uint64(k & 63)):
                for t in range(nw):
                    out[i, t] ^= b[k, t]
    return out


if HAVE_NUMBA:
    rref_numba = njit(cache=True, nogil=True)(_rref_loop)
    rank_numba = njit(cache=True, nogil=True)(_rank_loop)
    matmul_numba = njit(cache=True, nogil=True)(_matmul_loop)
else:  # pragma: no cover
    rref_numba = rank_numba = matmul_numba = None


BACKEND = "numba" if HAVE_NUMBA else "numpy"


def use_backend(name: str) -> None:
    """Switch the active kernels (``"numba"`` or ``"numpy"``) at runtime."""
    global BACKEND, rref, rank_destructive, matmul
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    if name == "numba":
        rref, rank_destructive, matmul = rref_numba, rank_numba, matmul_numba
    else:
        rref, rank_destructive, matmul = rref_numpy, rank_numpy, matmul_numpy


rref = rank_destructive = matmul = None
use_backend(BACKEND)
