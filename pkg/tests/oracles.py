"""Slow, independent reference computations used to cross-check the library."""
from itertools import product

import numpy as np


def int_rank(dense) -> int:
    """GF(2) rank by elimination on Python integers (one int per row)."""
    rows = [int("".join(str(int(b)) for b in r) or "0", 2) for r in np.asarray(dense)]
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def brute_kernel_size(dense) -> int:
    a = np.asarray(dense, dtype=np.int64)
    n = a.shape[1]
    return sum(1 for v in product((0, 1), repeat=n) if not (a @ np.array(v) % 2).any())


def brute_span(vectors, n) -> set:
    vs = [np.asarray(v, dtype=np.uint8) for v in vectors]
    out = set()
    for coeffs in product((0, 1), repeat=len(vs)):
        acc = np.zeros(n, dtype=np.uint8)
        for c, v in zip(coeffs, vs):
            if c:
                acc ^= v
        out.add(tuple(int(x) for x in acc))
    return out


def chain_homology(boundaries, cells) -> list:
    """Betti numbers from boundary matrices via :func:`int_rank`."""
    ranks = [int_rank(b) if np.asarray(b).size else 0 for b in boundaries]
    out = []
    for q, c in enumerate(cells):
        r_out = ranks[q - 1] if q >= 1 else 0
        r_in = ranks[q] if q < len(ranks) else 0
        out.append(c - r_out - r_in)
    return out
