"""Hot loops of the finite oracle.

Each kernel has a numba implementation and a pure-numpy one.  Set
``CUBOID_CECH_NO_NUMBA=1`` (or run without numba installed) to use numpy.
"""

from __future__ import annotations

import os

import numpy as np

WORD = 64


def _numba_wanted() -> bool:
    return os.environ.get("CUBOID_CECH_NO_NUMBA", "").strip() not in ("1", "true", "yes")


try:
    if not _numba_wanted():
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - depends on the environment
    njit = None

BACKEND = "numba" if njit is not None else "numpy"


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """0/1 matrix -> rows packed little-endian into uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8)
    rows, cols = dense.shape
    words = max(1, (cols + WORD - 1) // WORD)
    padded = np.zeros((rows, words * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    bits = np.packbits(padded.reshape(rows, words, 8, 8)[:, :, ::-1, ::-1], axis=-1, bitorder="big")
    return bits.reshape(rows, words * 8).view(">u8").astype(np.uint64).reshape(rows, words)


def unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    rows, words = packed.shape
    out = np.zeros((rows, cols), dtype=np.uint8)
    for c in range(cols):
        out[:, c] = (packed[:, c // WORD] >> np.uint64(c % WORD)) & np.uint64(1)
    return out


# -- GF(2) elimination ---------------------------------------------------------


def _rank_numpy(m: np.ndarray, cols: int) -> int:
    m = m.copy()
    rows = m.shape[0]
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        w, b = c // WORD, np.uint64(1) << np.uint64(c % WORD)
        hits = np.nonzero(m[rank:, w] & b)[0]
        if hits.size == 0:
            continue
        p = rank + hits[0]
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        mask = (m[:, w] & b) != 0
        mask[rank] = False
        m[mask] ^= m[rank]
        rank += 1
    return rank


def _rank_loops(m, cols):
    rows, words = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        w = c // 64
        b = np.uint64(1) << np.uint64(c % 64)
        p = -1
        for r in range(rank, rows):
            if m[r, w] & b:
                p = r
                break
        if p < 0:
            continue
        if p != rank:
            for t in range(words):
                tmp = m[p, t]
                m[p, t] = m[rank, t]
                m[rank, t] = tmp
        for r in range(rows):
            if r != rank and (m[r, w] & b):
                for t in range(w, words):
                    m[r, t] ^= m[rank, t]
        rank += 1
    return rank


def _min_assign_numpy(points: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    # infinity is encoded as the axis size; ties go to the smallest index via argmin
    key = np.where(points >= sizes, np.iinfo(np.int64).max, points)
    out = np.argmin(key, axis=1).astype(np.int64)
    out[(points >= sizes).all(axis=1)] = -1
    return out


def _min_assign_loops(points, sizes):
    npts, length = points.shape
    out = np.empty(npts, dtype=np.int64)
    for p in range(npts):
        best = -1
        bv = 0
        for i in range(length):
            v = points[p, i]
            if v < sizes[i] and (best < 0 or v < bv):
                best = i
                bv = v
        out[p] = best
    return out


if njit is not None:
    _rank_numba = njit(cache=True)(_rank_loops)
    _min_assign_numba = njit(cache=True)(_min_assign_loops)


def gf2_rank(packed: np.ndarray, cols: int, backend: str | None = None) -> int:
    backend = backend or BACKEND
    m = np.ascontiguousarray(packed, dtype=np.uint64)
    if m.shape[0] == 0 or cols == 0:
        return 0
    if backend == "numba":
        if njit is None:
            raise RuntimeError("numba backend requested but unavailable")
        return int(_rank_numba(m.copy(), cols))
    return _rank_numpy(m, cols)


def min_assign(points: np.ndarray, sizes, backend: str | None = None) -> np.ndarray:
    """Min-rule piece of each grid point (infinity encoded as the axis size)."""
    backend = backend or BACKEND
    pts = np.ascontiguousarray(points, dtype=np.int64)
    sz = np.asarray(sizes, dtype=np.int64)
    if backend == "numba":
        if njit is None:
            raise RuntimeError("numba backend requested but unavailable")
        return _min_assign_numba(pts, sz)
    return _min_assign_numpy(pts, sz)
