"""Equivariant homology ``H_*(G, C_*(X))`` over GF(2).

The total complex of ``F_* (x)_G C_*(X)`` identifies ``F_p (x)_G C_q`` with
``C_q^{n_p}``: basis ``(p, i, c)`` for a generator ``e_i`` of ``F_p`` and a
``q``-cell ``c``. Its differential is

    d(e_i (x) c) = sum_j sum_{h in r_ji} e_j (x) h^{-1} c  +  e_i (x) dc

where ``d(e_i) = sum_j r_ji e_j`` in the resolution. The inverse keeps
``d o d = 0`` for non-abelian groups. Spectral-sequence pages come from
filtering by ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gcw import GCWComplex, homology_dims, homology_module, point_trivial, validate
from .gf2 import BitMatrix, Subspace
from .groups import FiniteGroup
from .resolutions import FreeResolution, standard_resolution

DEFAULT_CUTOFF = 16


class InvalidComplex(ValueError):
    pass


@dataclass(frozen=True)
class TotalComplex:
    """Total complex truncated at ``top`` degrees.

    ``filtration[n][k]`` is the resolution degree ``p`` of basis element
    ``k`` in degree ``n``; basis elements are sorted by ``p`` so each
    filtration stage ``F_p`` is a prefix.
    """

    resolution: FreeResolution
    complex: GCWComplex
    dims: tuple[int, ...]
    filtration: tuple[np.ndarray, ...]
    differentials: tuple[BitMatrix, ...]  # differentials[n-1]: Tot_n -> Tot_{n-1}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> BitMatrix:
        if 1 <= n <= self.top:
            return self.differentials[n - 1]
        rows = self.dims[n - 1] if 0 <= n - 1 <= self.top else 0
        cols = self.dims[n] if 0 <= n <= self.top else 0
        return BitMatrix(rows, cols)

    def homology_dims(self, upto: int) -> list[int]:
        if upto >= self.top:
            raise ValueError("need one more degree than the homology requested")
        ranks = [self.d(n).rank() for n in range(upto + 2)]
        return [self.dims[n] - ranks[n] - ranks[n + 1] for n in range(upto + 1)]

    def cohomology_dims(self, upto: int) -> list[int]:
        """Dims of the dual cochain complex, from the transposed differentials."""
        if upto >= self.top:
            raise ValueError("need one more degree than the cohomology requested")
        coranks = [self.d(n).T.rank() for n in range(upto + 2)]
        return [self.dims[n] - coranks[n + 1] - coranks[n] for n in range(upto + 1)]


def _offsets(f: FreeResolution, x: GCWComplex, n: int) -> dict[int, int]:
    off, acc = {}, 0
    for p in range(max(0, n - x.dim), min(n, f.length) + 1):
        off[p] = acc
        acc += f.ranks[p] * x.cells[n - p]
    off[-1] = acc  # total size
    return off


def total_complex(f: FreeResolution, x: GCWComplex, top: int) -> TotalComplex:
    """Total complex in degrees ``0..top`` (needs ``f.length >= top``)."""
    if not f.group.same_table(x.group):
        raise ValueError("resolution and complex are over different groups")
    if f.length < top:
        raise ValueError(f"resolution length {f.length} is shorter than degree {top}")
    g = x.group
    offs = [_offsets(f, x, n) for n in range(top + 1)]
    dims = tuple(o[-1] for o in offs)
    filt = []
    for n in range(top + 1):
        arr = np.empty(dims[n], dtype=np.intp)
        for p, start in offs[n].items():
            if p >= 0:
                arr[start : start + f.ranks[p] * x.cells[n - p]] = p
        filt.append(arr)
    bounds = [x.boundary(q).to_dense() for q in range(x.dim + 1)]
    diffs = []
    for n in range(1, top + 1):
        rows: list[np.ndarray] = []
        cols: list[np.ndarray] = []
        for p, start in offs[n].items():
            if p < 0:
                continue
            q = n - p
            cq = x.cells[q]
            if cq == 0:
                continue
            cells = np.arange(cq)
            if p >= 1:
                perm = x.actions[q].perm
                target = offs[n - 1][p - 1]
                for i, col in enumerate(f.columns(p)):
                    for j, sup in col:
                        for h in sup:
                            rows.append(target + j * cq + perm[g.inv(h)])
                            cols.append(start + i * cq + cells)
            if q >= 1 and x.cells[q - 1]:
                fr, fc = np.nonzero(bounds[q])
                if fr.size:
                    cq1 = x.cells[q - 1]
                    target = offs[n - 1][p]
                    gens = np.arange(f.ranks[p])[:, None]
                    rows.append((target + gens * cq1 + fr[None, :]).ravel())
                    cols.append((start + gens * cq + fc[None, :]).ravel())
        r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.intp)
        c = np.concatenate(cols) if cols else np.zeros(0, dtype=np.intp)
        diffs.append(BitMatrix.from_coo(dims[n - 1], dims[n], r, c))
    return TotalComplex(f, x, dims, tuple(filt), tuple(diffs))


def _prepare(g: FiniteGroup, x: GCWComplex, cutoff: int, resolution: str | FreeResolution) -> TotalComplex:
    if not g.same_table(x.group):
        raise ValueError("complex is not over the given group")
    rep = validate(x)
    if not rep.ok:
        raise InvalidComplex("; ".join(rep.failures))
    if isinstance(resolution, FreeResolution):
        f = resolution
    else:
        f = standard_resolution(g, cutoff + 1, resolution)
    if f.length < cutoff + 1:
        raise ValueError(f"resolution of length {f.length} cannot reach degree {cutoff}")
    return total_complex(f, x, cutoff + 1)


def equivariant_homology_dims(g: FiniteGroup, x: GCWComplex, cutoff: int = DEFAULT_CUTOFF,
                              resolution: str | FreeResolution = "auto") -> list[int]:
    """``dim H_k(X; G)`` for ``0 <= k <= cutoff``."""
    return _prepare(g, x, cutoff, resolution).homology_dims(cutoff)


def cohomology_dims(g: FiniteGroup, x: GCWComplex, cutoff: int = DEFAULT_CUTOFF,
                    resolution: str | FreeResolution = "auto") -> list[int]:
    """Equivariant cohomology dims; over a field these are dual to the homology."""
    return _prepare(g, x, cutoff, resolution).cohomology_dims(cutoff)


def group_homology_dims(g: FiniteGroup, cutoff: int = DEFAULT_CUTOFF,
                        resolution: str | FreeResolution = "auto") -> list[int]:
    """``dim H_k(G, Z2)``."""
    return equivariant_homology_dims(g, point_trivial(g), cutoff, resolution)


def group_homology_with_coefficients(f: FreeResolution, matrices: Sequence[BitMatrix],
                                     upto: int) -> list[int]:
    """``dim H_p(G, M)`` for a module given by one action matrix per element.

    ``matrices[g]`` acts on column vectors of ``M``. Computed from the
    complex ``F_p (x)_G M = M^{n_p}``.
    """
    g = f.group
    h = matrices[0].rows if matrices else 0
    if h == 0:
        return [0] * (upto + 1)
    if f.length < upto + 1:
        raise ValueError("resolution too short")
    dense = [m.to_dense() for m in matrices]
    ranks = [0]
    for p in range(1, upto + 2):
        block = np.zeros((f.ranks[p - 1] * h, f.ranks[p] * h), dtype=np.uint8)
        for i, col in enumerate(f.columns(p)):
            for j, sup in col:
                acc = np.zeros((h, h), dtype=np.uint8)
                for x in sup:
                    acc ^= dense[g.inv(x)]
                block[j * h : (j + 1) * h, i * h : (i + 1) * h] ^= acc
        ranks.append(BitMatrix.from_dense(block).rank())
    return [f.ranks[p] * h - ranks[p] - ranks[p + 1] for p in range(upto + 1)]


# -- spectral sequence ----------------------------------------------------------

@dataclass(frozen=True)
class SpectralPage:
    """``dims[p][q] = dim E^r_{p,q}``; ``None`` where ``p + q`` exceeds the cutoff."""

    r: int
    dims: tuple[tuple[int | None, ...], ...]

    def entry(self, p: int, q: int) -> int | None:
        return self.dims[p][q]

    def row(self, q: int) -> list[int | None]:
        return [col[q] for col in self.dims]

    def diagonal_sum(self, k: int) -> int:
        return sum(
            self.dims[p][k - p]
            for p in range(len(self.dims))
            if 0 <= k - p < len(self.dims[p]) and self.dims[p][k - p] is not None
        )

    def same_dims(self, other: "SpectralPage") -> bool:
        return self.dims == other.dims


class _Filtered:
    """Subspace arithmetic for the column filtration of a total complex."""

    def __init__(self, tot: TotalComplex):
        self.tot = tot
        self._dense = {n: tot.d(n).to_dense() for n in range(0, tot.top + 1)}
        self._cache: dict[tuple[int, int, int], Subspace] = {}

    def prefix(self, n: int, p: int) -> int:
        """Size of ``F_p Tot_n``."""
        if p < 0:
            return 0
        return int(np.searchsorted(self.tot.filtration[n], p, side="right"))

    def Z(self, n: int, p: int, r: int) -> Subspace:
        """``{x in F_p Tot_n : d x in F_{p-r} Tot_{n-1}}``."""
        key = (n, p, r)
        if key in self._cache:
            return self._cache[key]
        dim_n = self.tot.dims[n]
        k = self.prefix(n, p)
        if n == 0:
            sub = Subspace.coordinate(dim_n, range(k))
        else:
            lo = self.prefix(n - 1, p - r)
            block = self._dense[n][lo:, :k]
            ker = BitMatrix.from_dense(block).kernel_basis().basis
            emb = np.zeros((ker.rows, dim_n), dtype=np.uint8)
            emb[:, :k] = ker.to_dense()
            sub = Subspace(dim_n, BitMatrix.from_dense(emb))
        self._cache[key] = sub
        return sub

    def page_entry(self, n: int, p: int, r: int) -> int:
        """``dim E^r_{p, n-p}`` for ``r >= 1``."""
        z = self.Z(n, p, r)
        denom = self.Z(n, p - 1, r - 1)
        if n + 1 <= self.tot.top:
            above = self.Z(n + 1, p + r - 1, r - 1)
            denom = denom + above.image_under(self.tot.d(n + 1))
        return z.dim - denom.dim


def spectral_pages(g: FiniteGroup, x: GCWComplex, r_max: int | None = None,
                   cutoff: int = DEFAULT_CUTOFF,
                   resolution: str | FreeResolution = "auto") -> list[SpectralPage]:
    """Pages ``E^1..E^{r_max}`` of the column-filtration spectral sequence.

    ``d^r`` maps ``(p, q)`` to ``(p - r, q + r - 1)``, so it vanishes once
    ``r > dim X + 1``; ``r_max=None`` stops at that stable page ``E^{dim X + 2}``.
    """
    tot = _prepare(g, x, cutoff, resolution)
    filt = _Filtered(tot)
    last = stable_page_index(x) if r_max is None else r_max
    pages = []
    for r in range(1, last + 1):
        cols = []
        for p in range(cutoff + 1):
            cols.append(tuple(
                filt.page_entry(p + q, p, r) if p + q <= cutoff else None
                for q in range(x.dim + 1)
            ))
        pages.append(SpectralPage(r, tuple(cols)))
    return pages


def stable_page_index(x: GCWComplex) -> int:
    return x.dim + 2


def infinity_page(g: FiniteGroup, x: GCWComplex, cutoff: int = DEFAULT_CUTOFF,
                  resolution: str | FreeResolution = "auto") -> SpectralPage:
    return spectral_pages(g, x, None, cutoff, resolution)[-1]


def e2_from_homology(g: FiniteGroup, x: GCWComplex, cutoff: int = DEFAULT_CUTOFF,
                     resolution: str = "auto") -> list[list[int]]:
    """``[q][p] -> dim H_p(G, H_q(X))`` computed from the homology modules directly."""
    f = standard_resolution(g, cutoff + 1, resolution)
    out = []
    for q in range(x.dim + 1):
        mod = homology_module(x, q)
        out.append(group_homology_with_coefficients(f, mod.matrices, cutoff))
    return out


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n + 1`` coefficients of the product of two generating series."""
    return [
        sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b))
        for k in range(n + 1)
    ]


__all__ = [
    "TotalComplex",
    "SpectralPage",
    "total_complex",
    "equivariant_homology_dims",
    "cohomology_dims",
    "group_homology_dims",
    "group_homology_with_coefficients",
    "spectral_pages",
    "infinity_page",
    "stable_page_index",
    "e2_from_homology",
    "convolve",
    "homology_dims",
]
