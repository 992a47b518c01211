# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) elimination kernels over bit-packed uint64 rows.

Column ``j`` of a row lives in word ``j >> 6`` at bit ``j & 63``.
All functions mutate or read C-contiguous ``uint64`` arrays of shape
``(rows, words)``; signatures mirror :mod:`equivhom._gf2_fallback`.
"""
from libc.stdint cimport uint64_t

import numpy as np


def rref(uint64_t[:, ::1] W, Py_ssize_t ncols):
    """Reduce ``W`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t m = W.shape[0], nw = W.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, p, w
    cdef uint64_t mask, tmp
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        w = c >> 6
        mask = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, m):
            if W[i, w] & mask:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(w, nw):
                tmp = W[p, k]
                W[p, k] = W[r, k]
                W[r, k] = tmp
        for i in range(m):
            if i != r and (W[i, w] & mask):
                for k in range(w, nw):
                    W[i, k] ^= W[r, k]
        pivots.append(c)
        r += 1
    return pivots


def rank(uint64_t[:, ::1] W, Py_ssize_t ncols):
    """Forward elimination in place; return the rank."""
    cdef Py_ssize_t m = W.shape[0], nw = W.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, p, w
    cdef uint64_t mask, tmp
    for c in range(ncols):
        if r == m:
            break
        w = c >> 6
        mask = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, m):
            if W[i, w] & mask:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(w, nw):
                tmp = W[p, k]
                W[p, k] = W[r, k]
                W[r, k] = tmp
        for i in range(r + 1, m):
            if W[i, w] & mask:
                for k in range(w, nw):
                    W[i, k] ^= W[r, k]
        r += 1
    return r


def matmul(const uint64_t[:, ::1] A, Py_ssize_t acols, const uint64_t[:, ::1] B):
    """Return the packed product ``A @ B`` over GF(2)."""
    cdef Py_ssize_t m = A.shape[0], nw = B.shape[1]
    cdef Py_ssize_t i, j, k
    out = np.zeros((m, nw), dtype=np.uint64)
    cdef uint64_t[:, ::1] C = out
    for i in range(m):
        for j in range(acols):
            if (A[i, j >> 6] >> (j & 63)) & 1:
                for k in range(nw):
                    C[i, k] ^= B[j, k]
    return out
