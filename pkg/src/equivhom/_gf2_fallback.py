"""Pure numpy GF(2) elimination kernels.

Same contract as the compiled ``_gf2_ext`` module: rows are bit-packed
into ``uint64`` words, column ``j`` at word ``j // 64``, bit ``j % 64``.
"""
from __future__ import annotations

import numpy as np


def _mask(c: int) -> np.uint64:
    return np.uint64(1 << (c & 63))


def rref(W: np.ndarray, ncols: int) -> list[int]:
    """Reduce ``W`` in place to reduced row echelon form; return pivot columns."""
    m = W.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        w = c >> 6
        mask = _mask(c)
        nz = np.flatnonzero(W[r:, w] & mask)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            W[[r, p], w:] = W[[p, r], w:]
        hit = np.flatnonzero(W[:, w] & mask)
        hit = hit[hit != r]
        if hit.size:
            W[hit, w:] ^= W[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rank(W: np.ndarray, ncols: int) -> int:
    """Forward elimination in place; return the rank."""
    m = W.shape[0]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        w = c >> 6
        mask = _mask(c)
        nz = np.flatnonzero(W[r:, w] & mask)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            W[[r, p], w:] = W[[p, r], w:]
        below = r + 1 + np.flatnonzero(W[r + 1:, w] & mask)
        if below.size:
            W[below, w:] ^= W[r, w:]
        r += 1
    return r


def matmul(A: np.ndarray, acols: int, B: np.ndarray) -> np.ndarray:
    """Return the packed product ``A @ B`` over GF(2)."""
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
    for j in range(acols):
        rows = np.flatnonzero(A[:, j >> 6] & _mask(j))
        if rows.size:
            out[rows] ^= B[j]
    return out
