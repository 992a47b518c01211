"""Free resolutions of Z2 over Z2[G].

Convention: ``F_p`` is the free left module on generators ``e_0..e_{n_p-1}``
and the differential is stored column-wise, ``d(e_i) = sum_j r_ji e_j``
with ``r_ji`` in Z2[G]. Expanding to GF(2) uses the basis ``g e_i``
(index ``i * |G| + g``), on which ``d(g e_i) = sum_j sum_{h in r_ji} (g h) e_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterator

import numpy as np

from .gf2 import BitMatrix
from .groups import FiniteGroup, GroupAlgebraElem, norm_element

MAX_GENERATORS = 250_000
MAX_EXPANDED_ENTRIES = 1 << 28

# column i of d_p: list of (row j, support of r_ji)
Column = list[tuple[int, frozenset[int]]]


class ResolutionBudgetError(ValueError):
    """The requested resolution has too many generators in some degree."""


@dataclass(frozen=True, eq=False)
class FreeResolution:
    group: FiniteGroup
    ranks: tuple[int, ...]
    differentials: tuple[tuple[Column, ...], ...]
    kind: str = ""

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def columns(self, p: int) -> tuple[Column, ...]:
        """Sparse columns of ``d_p : F_p -> F_{p-1}`` (``1 <= p <= length``)."""
        return self.differentials[p - 1]

    def entry(self, p: int, j: int, i: int) -> GroupAlgebraElem:
        for row, sup in self.differentials[p - 1][i]:
            if row == j:
                return GroupAlgebraElem(self.group, sup)
        return GroupAlgebraElem.zero(self.group)

    def truncated(self, length: int) -> "FreeResolution":
        if length > self.length:
            raise ValueError("cannot extend a resolution by truncation")
        return FreeResolution(self.group, self.ranks[: length + 1], self.differentials[:length], self.kind)

    def expand(self, p: int) -> BitMatrix:
        """GF(2) matrix of ``d_p`` on the bases ``{g e_i}``."""
        n = self.group.order
        rows, cols = n * self.ranks[p - 1], n * self.ranks[p]
        if rows * cols > MAX_EXPANDED_ENTRIES:
            raise ResolutionBudgetError(
                f"expanding d_{p} needs a {rows}x{cols} matrix (budget {MAX_EXPANDED_ENTRIES} entries)"
            )
        dense = np.zeros((rows, cols), dtype=np.uint8)
        table = self.group.cayley
        gs = np.arange(n)
        for i, col in enumerate(self.columns(p)):
            for j, sup in col:
                for h in sup:
                    dense[j * n + table[gs, h], i * n + gs] ^= 1
        return BitMatrix.from_dense(dense)

    def expand_augmentation(self) -> BitMatrix:
        return BitMatrix.from_dense(np.ones((1, self.group.order * self.ranks[0]), dtype=np.uint8))


def _accumulate(col: dict[int, set[int]], j: int, h: int) -> None:
    col.setdefault(j, set()).symmetric_difference_update({h})


def _finish(col: dict[int, set[int]]) -> Column:
    return [(j, frozenset(s)) for j, s in sorted(col.items()) if s]


def _check_budget(ranks: list[int]) -> None:
    if max(ranks) > MAX_GENERATORS:
        raise ResolutionBudgetError(
            f"resolution needs {max(ranks)} generators in one degree (budget {MAX_GENERATORS})"
        )


def bar_resolution(g: FiniteGroup, length: int, normalized: bool = False) -> FreeResolution:
    """Bar resolution up to degree ``length``.

    ``F_p`` is free on symbols ``[g_1|...|g_p]`` (ranks ``|G|^p``) with
    ``d[g_1|...|g_p] = g_1[g_2|...|g_p] + sum_i [..|g_i g_{i+1}|..] + [g_1|...|g_{p-1}]``.
    With ``normalized=True`` only symbols free of the identity are kept
    (ranks ``(|G|-1)^p``) and terms containing the identity are dropped.
    """
    n = g.order
    letters = [x for x in range(n) if not (normalized and x == g.identity)]
    base = len(letters)
    ranks = [base**p for p in range(length + 1)]
    _check_budget(ranks)
    pos = {x: k for k, x in enumerate(letters)}

    def index(symbol: tuple[int, ...]) -> int | None:
        k = 0
        for x in symbol:
            if x not in pos:
                return None
            k = k * base + pos[x]
        return k

    diffs = []
    for p in range(1, length + 1):
        cols: list[Column] = []
        for symbol in iproduct(letters, repeat=p):
            col: dict[int, set[int]] = {}
            j = index(symbol[1:])
            if j is not None:
                _accumulate(col, j, symbol[0])
            for i in range(p - 1):
                merged = symbol[:i] + (g.mul(symbol[i], symbol[i + 1]),) + symbol[i + 2 :]
                j = index(merged)
                if j is not None:
                    _accumulate(col, j, g.identity)
            j = index(symbol[:-1])
            if j is not None:
                _accumulate(col, j, g.identity)
            cols.append(_finish(col))
        diffs.append(tuple(cols))
    kind = "normalized bar" if normalized else "bar"
    return FreeResolution(g, tuple(ranks), tuple(diffs), kind)


def periodic_resolution(g: FiniteGroup, length: int, generator: int | None = None) -> FreeResolution:
    """Rank-one resolution of a cyclic group: ``d_odd = 1 + t``, ``d_even = N``.

    ``generator`` defaults to the first element of full order.
    """
    t = g.cyclic_generator() if generator is None else generator
    if t is None or g.element_order(t) != g.order:
        raise ValueError("group is not cyclic for the supplied generator")
    one_plus_t = GroupAlgebraElem.of(g, [g.identity, t]).support
    norm = norm_element(g).support
    diffs = []
    for p in range(1, length + 1):
        sup = one_plus_t if p % 2 else norm
        diffs.append(([(0, sup)] if sup else [],))
    return FreeResolution(g, (1,) * (length + 1), tuple(diffs), "periodic")


def tensor_resolution(f: FreeResolution, h: FreeResolution, group: FiniteGroup | None = None) -> FreeResolution:
    """Resolution of Z2 over Z2[G x H] from resolutions over G and H.

    ``group`` must be ``direct_product(f.group, h.group)`` (built if omitted).
    Generators of degree ``p`` are pairs ``(e_i, e'_k)`` with
    ``deg e_i + deg e'_k = p``, ordered by the degree of the left factor.
    """
    from .groups import direct_product

    gh = group if group is not None else direct_product(f.group, h.group)
    m = h.group.order
    length = min(f.length, h.length)

    def offsets(p: int) -> dict[int, int]:
        off, acc = {}, 0
        for a in range(p + 1):
            off[a] = acc
            acc += f.ranks[a] * h.ranks[p - a]
        return off

    ranks = [sum(f.ranks[a] * h.ranks[p - a] for a in range(p + 1)) for p in range(length + 1)]
    _check_budget(ranks)
    diffs = []
    for p in range(1, length + 1):
        off, off_prev = offsets(p), offsets(p - 1)
        cols: list[Column] = []
        for a in range(p + 1):
            b = p - a
            for i in range(f.ranks[a]):
                for k in range(h.ranks[b]):
                    col: dict[int, set[int]] = {}
                    if a > 0:
                        for j, sup in f.columns(a)[i]:
                            row = off_prev[a - 1] + j * h.ranks[b] + k
                            for x in sup:
                                _accumulate(col, row, x * m + h.group.identity)
                    if b > 0:
                        for j, sup in h.columns(b)[k]:
                            row = off_prev[a] + i * h.ranks[b - 1] + j
                            for y in sup:
                                _accumulate(col, row, f.group.identity * m + y)
                    cols.append(_finish(col))
        diffs.append(tuple(cols))
    return FreeResolution(gh, tuple(ranks), tuple(diffs), f"({f.kind}) x ({h.kind})")


def standard_resolution(g: FiniteGroup, length: int, choice: str = "auto") -> FreeResolution:
    """Pick a resolution: ``periodic``, ``bar`` (normalized) or ``auto``.

    ``auto`` uses the periodic resolution for cyclic groups, the tensor
    product of factor resolutions for direct products, and the normalized
    bar resolution otherwise.
    """
    if choice == "periodic":
        return periodic_resolution(g, length)
    if choice == "bar":
        return bar_resolution(g, length, normalized=True)
    if choice == "bar-unnormalized":
        return bar_resolution(g, length, normalized=False)
    if choice != "auto":
        raise ValueError(f"unknown resolution choice {choice!r}")
    if g.cyclic_generator() is not None:
        return periodic_resolution(g, length)
    if g.factors is not None:
        left, right = g.factors
        return tensor_resolution(
            standard_resolution(left, length), standard_resolution(right, length), group=g
        )
    return bar_resolution(g, length, normalized=True)


@dataclass
class ResolutionReport:
    # index 0: augmentation o d_1; index p: d_p o d_{p+1}
    d_squared_zero: list[bool] = field(default_factory=list)
    defects: list[int] = field(default_factory=list)  # index p, 0 <= p < length

    @property
    def valid(self) -> bool:
        return all(self.d_squared_zero) and not any(self.defects)

    def lines(self) -> Iterator[str]:
        for p, ok in enumerate(self.d_squared_zero):
            left = "augmentation" if p == 0 else f"d_{p}"
            yield f"{left} o d_{p + 1} = 0: {'yes' if ok else 'NO'}"
        for p, k in enumerate(self.defects):
            yield f"exactness defect at degree {p}: {k}"


def verify_resolution(f: FreeResolution) -> ResolutionReport:
    """Check ``d^2 = 0`` and exactness of the GF(2) expansion up to ``length - 1``."""
    report = ResolutionReport()
    mats = [f.expand(p) for p in range(1, f.length + 1)]
    for p in range(1, f.length):
        report.d_squared_zero.append((mats[p - 1] @ mats[p]).is_zero())
    aug = f.expand_augmentation()
    if f.length >= 1:
        report.d_squared_zero.insert(0, (aug @ mats[0]).is_zero())
        ranks = [m.rank() for m in mats]
        dims = [f.group.order * r for r in f.ranks]
        report.defects.append((dims[0] - aug.rank()) - ranks[0])
        for p in range(1, f.length):
            report.defects.append((dims[p] - ranks[p - 1]) - ranks[p])
    return report
