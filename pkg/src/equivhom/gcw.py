"""Finite G-CW complexes with GF(2) cellular chains.

A complex stores, for each dimension ``q``, the number of ``q``-cells, the
boundary matrix ``d_q`` (shape ``c_{q-1} x c_q``) and a permutation action
of the group on the ``q``-cells. A plain CW complex is a complex over the
trivial group.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix, Subspace, solve
from .groups import (
    FiniteGroup,
    HomomorphismError,
    PermAction,
    cyclic,
    diagonal,
    direct_product,
    group_from_json,
    trivial_group,
)


class NonFreeAction(ValueError):
    """A non-identity element fixes a cell."""

    def __init__(self, dim: int, cell: int, element: int):
        super().__init__(f"element {element} fixes {dim}-cell {cell}")
        self.dim = dim
        self.cell = cell
        self.element = element


class DescriptorError(ValueError):
    """Malformed JSON complex descriptor."""


@dataclass(frozen=True, eq=False)
class GCWComplex:
    group: FiniteGroup
    cells: tuple[int, ...]
    boundaries: tuple[BitMatrix, ...]  # boundaries[q-1] is d_q
    actions: tuple[PermAction, ...]

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def boundary(self, q: int) -> BitMatrix:
        """``d_q``; zero matrices outside ``1..dim``."""
        if 1 <= q <= self.dim:
            return self.boundaries[q - 1]
        rows = self.cells[q - 1] if 0 <= q - 1 <= self.dim else 0
        cols = self.cells[q] if 0 <= q <= self.dim else 0
        return BitMatrix(rows, cols)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * c for q, c in enumerate(self.cells))

    def is_trivial_action(self) -> bool:
        return all(
            np.array_equal(a.perm, np.tile(np.arange(a.degree), (self.group.order, 1)))
            for a in self.actions
        )

    def is_cell_free(self) -> bool:
        try:
            _check_free(self)
        except NonFreeAction:
            return False
        return True

    def forget_action(self) -> "GCWComplex":
        return plain_complex(self.cells, self.boundaries)


def plain_complex(cells: Sequence[int], boundaries: Sequence[BitMatrix]) -> GCWComplex:
    g = trivial_group()
    return GCWComplex(
        g, tuple(int(c) for c in cells), tuple(boundaries),
        tuple(PermAction.trivial(g, int(c)) for c in cells),
    )


def make_complex(group: FiniteGroup, cells: Sequence[int], boundaries: Sequence[BitMatrix],
                 generator_perms: Sequence[Sequence[Sequence[int]]] | None = None) -> GCWComplex:
    """Build a complex from per-dimension, per-generator cell permutations.

    ``generator_perms[q][k]`` is the permutation of ``q``-cells induced by
    ``group.generators[k]``; ``None`` means the trivial action.
    """
    cells = tuple(int(c) for c in cells)
    if generator_perms is None:
        actions = tuple(PermAction.trivial(group, c) for c in cells)
    else:
        if len(generator_perms) != len(cells):
            raise ValueError("need one list of generator permutations per dimension")
        actions = tuple(
            PermAction.from_generator_perms(group, c, perms)
            for c, perms in zip(cells, generator_perms)
        )
    return GCWComplex(group, cells, tuple(boundaries), actions)


# -- validation ---------------------------------------------------------------

@dataclass
class ComplexReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        return ["complex valid"] if self.ok else list(self.failures)


def validate(x: GCWComplex) -> ComplexReport:
    """Check shapes, ``d o d = 0``, homomorphism and equivariance of the action."""
    rep = ComplexReport()
    if len(x.boundaries) != x.dim:
        rep.failures.append(f"expected {x.dim} boundary matrices, got {len(x.boundaries)}")
        return rep
    if len(x.actions) != len(x.cells):
        rep.failures.append("need one action per dimension")
        return rep
    for q in range(1, x.dim + 1):
        b = x.boundaries[q - 1]
        if b.shape != (x.cells[q - 1], x.cells[q]):
            rep.failures.append(f"d_{q} has shape {b.shape}, expected {(x.cells[q - 1], x.cells[q])}")
    if rep.failures:
        return rep
    for q in range(2, x.dim + 1):
        if not (x.boundaries[q - 2] @ x.boundaries[q - 1]).is_zero():
            rep.failures.append(f"d_{q - 1} o d_{q} != 0")
    for q, a in enumerate(x.actions):
        if a.degree != x.cells[q] or a.group is not x.group and not a.group.same_table(x.group):
            rep.failures.append(f"action on {q}-cells does not match the complex")
            continue
        if not a.is_homomorphism():
            rep.failures.append(f"action on {q}-cells is not a homomorphism")
    if rep.failures:
        return rep
    for q in range(1, x.dim + 1):
        d = x.boundaries[q - 1].to_dense()
        lo, hi = x.actions[q - 1].perm, x.actions[q].perm
        for g in range(x.group.order):
            # P_{q-1}(g) d = d P_q(g)  <=>  d[g a, g b] = d[a, b]
            moved = np.zeros_like(d)
            moved[np.ix_(lo[g], hi[g])] = d
            if not np.array_equal(moved, d):
                rep.failures.append(f"boundary d_{q} is not equivariant for element {g}")
                break
    return rep


# -- homology -------------------------------------------------------------------

def homology_dims(x: GCWComplex) -> list[int]:
    """GF(2) Betti numbers of the underlying complex (action ignored)."""
    ranks = [x.boundary(q).rank() for q in range(x.dim + 2)]
    return [x.cells[q] - ranks[q] - ranks[q + 1] for q in range(x.dim + 1)]


def permutation_matrix(action: PermAction, g: int) -> BitMatrix:
    n = action.degree
    return BitMatrix.from_coo(n, n, action.perm[g], np.arange(n))


@dataclass(frozen=True)
class HomologyModule:
    """``H_q`` with a chosen basis and the induced GF(2) action matrices."""

    dim: int
    representatives: BitMatrix  # rows are cycles
    matrices: tuple[BitMatrix, ...]  # one per group element, acting on column vectors


def homology_module(x: GCWComplex, q: int) -> HomologyModule:
    """The G-module ``H_q(X; Z2)`` with the action induced by the cell permutations."""
    n = x.cells[q]
    cycles = x.boundary(q).kernel_basis()
    bounds = x.boundary(q + 1).image() if q < x.dim else Subspace.zero(n)
    reps: list[BitMatrix] = []
    span = bounds
    for k in range(cycles.dim):
        v = cycles.basis.row(k)
        if not span.contains(v):
            reps.append(v)
            span = span + Subspace.span(v)
    h = len(reps)
    rep_mat = BitMatrix.from_rows(reps, n) if reps else BitMatrix(0, n)
    # columns: boundary basis then representatives
    stacked = BitMatrix.from_rows([bounds.basis, rep_mat], n).T
    nb = bounds.dim
    mats = []
    for g in range(x.group.order):
        if h == 0:
            mats.append(BitMatrix(0, 0))
            continue
        moved = permutation_matrix(x.actions[q], g) @ rep_mat.T
        coeffs = solve(stacked, moved)
        mats.append(coeffs.select_rows(range(nb, nb + h)))
    return HomologyModule(h, rep_mat, tuple(mats))


# -- constructions ------------------------------------------------------------

def _check_free(x: GCWComplex) -> None:
    for q, a in enumerate(x.actions):
        for g in range(x.group.order):
            if g == x.group.identity:
                continue
            fixed = np.flatnonzero(a.perm[g] == np.arange(a.degree))
            if fixed.size:
                raise NonFreeAction(q, int(fixed[0]), g)


def quotient_free(x: GCWComplex) -> GCWComplex:
    """Orbit complex of a cell-free action (a plain complex)."""
    _check_free(x)
    orbit_of: list[np.ndarray] = []
    reps: list[list[int]] = []
    for a in x.actions:
        lookup = np.full(a.degree, -1, dtype=np.intp)
        r = []
        for orb in a.orbits():
            lookup[orb] = len(r)
            r.append(orb[0])
        orbit_of.append(lookup)
        reps.append(r)
    cells = [len(r) for r in reps]
    bounds = []
    for q in range(1, x.dim + 1):
        d = x.boundaries[q - 1].to_dense()
        rows, cols = [], []
        for k, b in enumerate(reps[q]):
            faces = np.flatnonzero(d[:, b])
            rows.extend(orbit_of[q - 1][faces])
            cols.extend([k] * len(faces))
        bounds.append(BitMatrix.from_coo(cells[q - 1], cells[q], rows, cols))
    return plain_complex(cells, bounds)


def product(x: GCWComplex, y: GCWComplex) -> GCWComplex:
    """Cellular product over ``G x H`` with ``d(a x b) = da x b + a x db``.

    ``n``-cells are ordered by the dimension of the left factor, then
    lexicographically by (left cell, right cell).
    """
    gh = direct_product(x.group, y.group)
    top = x.dim + y.dim
    index: list[dict[tuple[int, int, int], int]] = []
    cells = []
    for n in range(top + 1):
        idx = {}
        for p in range(max(0, n - y.dim), min(n, x.dim) + 1):
            for a in range(x.cells[p]):
                for b in range(y.cells[n - p]):
                    idx[(p, a, b)] = len(idx)
        index.append(idx)
        cells.append(len(idx))
    bounds = []
    for n in range(1, top + 1):
        rows, cols = [], []
        for (p, a, b), k in index[n].items():
            q = n - p
            if p >= 1:
                for f in np.flatnonzero(x.boundary(p).to_dense()[:, a]):
                    rows.append(index[n - 1][(p - 1, int(f), b)])
                    cols.append(k)
            if q >= 1:
                for f in np.flatnonzero(y.boundary(q).to_dense()[:, b]):
                    rows.append(index[n - 1][(p, a, int(f))])
                    cols.append(k)
        bounds.append(BitMatrix.from_coo(cells[n - 1], cells[n], rows, cols))
    m = y.group.order
    actions = []
    for n in range(top + 1):
        perm = np.empty((gh.order, cells[n]), dtype=np.intp)
        for (p, a, b), k in index[n].items():
            ga = x.actions[p].perm[:, a]
            hb = y.actions[n - p].perm[:, b]
            for g in range(x.group.order):
                for h in range(m):
                    perm[g * m + h, k] = index[n][(p, int(ga[g]), int(hb[h]))]
        actions.append(PermAction(gh, cells[n], perm))
    return GCWComplex(gh, tuple(cells), tuple(bounds), tuple(actions))


def pullback(x: GCWComplex, group: FiniteGroup, hom: Sequence[int]) -> GCWComplex:
    """Restrict the action along a homomorphism ``group -> x.group`` (as an index list)."""
    return GCWComplex(group, x.cells, x.boundaries, tuple(a.pullback(group, hom) for a in x.actions))


def diagonal_product(x: GCWComplex, y: GCWComplex) -> GCWComplex:
    """``x * y`` with ``G`` acting diagonally (both factors over the same ``G``)."""
    if not x.group.same_table(y.group):
        raise ValueError("diagonal product needs both factors over the same group")
    return pullback(product(x, y), x.group, diagonal(x.group))


def with_trivial_factor(x: GCWComplex, y: GCWComplex) -> GCWComplex:
    """``x * y`` over ``G x {e}``: ``G`` acts on ``x`` only."""
    return product(x, plain_complex(y.cells, y.boundaries))


# -- builders -----------------------------------------------------------------

def _z2(group: FiniteGroup | None) -> FiniteGroup:
    if group is None:
        return cyclic(2)
    if group.order != 2:
        raise ValueError("builder needs a group of order 2")
    return group


def point_trivial(group: FiniteGroup) -> GCWComplex:
    return make_complex(group, [1], [])


def free_orbit_points(group: FiniteGroup) -> GCWComplex:
    """One free orbit: ``g`` sends point ``h`` to point ``g h``."""
    n = group.order
    perm = np.array(group.cayley, dtype=np.intp)
    return GCWComplex(group, (n,), (), (PermAction(group, n, perm),))


def sphere_antipodal(d: int, group: FiniteGroup | None = None) -> GCWComplex:
    """``S^d`` with two cells ``e_k^+, e_k^-`` per dimension, swapped by the involution.

    ``d e_k^{+-} = e_{k-1}^+ + e_{k-1}^-``.
    """
    g = _z2(group)
    cells = [2] * (d + 1)
    bounds = [BitMatrix.from_dense([[1, 1], [1, 1]]) for _ in range(d)]
    swap = [[[1, 0]] for _ in range(d + 1)]
    return make_complex(g, cells, bounds, swap)


def sphere_with_fixed_point(d: int, group: FiniteGroup | None = None) -> GCWComplex:
    """``S^d`` with a reflection: the equator is fixed, the hemispheres swapped.

    For ``d >= 2`` the equator ``S^{d-1}`` is one 0-cell and one
    ``(d-1)``-cell; for ``d = 1`` it is two fixed points.
    """
    if d < 1:
        raise ValueError("sphere_with_fixed_point needs d >= 1")
    g = _z2(group)
    if d == 1:
        return circle_two_fixed(g)
    cells = [0] * (d + 1)
    cells[0] = 1
    cells[d - 1] += 1
    cells[d] = 2
    bounds = [BitMatrix(cells[q - 1], cells[q]) for q in range(1, d + 1)]
    bounds[d - 1] = BitMatrix.from_dense([[1, 1]])
    perms = [[list(range(c))] for c in cells]
    perms[d] = [[1, 0]]
    return make_complex(g, cells, bounds, perms)


def circle_two_fixed(group: FiniteGroup | None = None) -> GCWComplex:
    """Circle with two fixed vertices and two swapped edges."""
    g = _z2(group)
    return make_complex(
        g, [2, 2], [BitMatrix.from_dense([[1, 1], [1, 1]])], [[[0, 1]], [[1, 0]]]
    )


def sphere_trivial(d: int, group: FiniteGroup) -> GCWComplex:
    """``S^d`` as one 0-cell and one ``d``-cell, both fixed."""
    if d < 1:
        raise ValueError("sphere_trivial needs d >= 1")
    cells = [1] + [0] * (d - 1) + [1]
    return make_complex(group, cells, [BitMatrix(cells[q - 1], cells[q]) for q in range(1, d + 1)])


def circle(n_vertices: int = 1) -> GCWComplex:
    """Plain circle with ``n`` vertices and ``n`` edges."""
    n = n_vertices
    entries = [(i, i) for i in range(n)] + [((i + 1) % n, i) for i in range(n)]
    return plain_complex([n, n], [BitMatrix.from_entries(n, n, entries)])


def cyclic_rotation_circle(n: int) -> GCWComplex:
    """Circle with ``n`` vertices and edges, rotated freely by ``Z/n``."""
    g = cyclic(n)
    c = circle(n)
    rot = [(i + 1) % n for i in range(n)]
    return make_complex(g, [n, n], c.boundaries, [[rot], [rot]])


BUILDERS = {
    "point_trivial": lambda g, **kw: point_trivial(g),
    "free_orbit_points": lambda g, **kw: free_orbit_points(g),
    "sphere_antipodal": lambda g, d, **kw: sphere_antipodal(int(d), g),
    "sphere_with_fixed_point": lambda g, d, **kw: sphere_with_fixed_point(int(d), g),
    "circle_two_fixed": lambda g, **kw: circle_two_fixed(g),
    "sphere_trivial": lambda g, d, **kw: sphere_trivial(int(d), g),
}


def from_json(desc: dict, group: FiniteGroup | None = None) -> GCWComplex:
    """Build a complex from a JSON descriptor.

    Either ``{"builder": name, ...params}`` or
    ``{"group": ..., "cells": [c0, ...], "boundary": [[[row, col], ...], ...],
    "action": [[perm per generator] per dimension]}``. A ``group`` entry
    overrides the ``group`` argument; ``action`` may be omitted for a
    trivial action. ``"product"`` and ``"diagonal_product"`` combine two
    descriptors.
    """
    if not isinstance(desc, dict):
        raise DescriptorError("complex descriptor must be an object")
    try:
        if "group" in desc:
            group = group_from_json(desc["group"])
        if "builder" in desc:
            name = desc["builder"]
            if name not in BUILDERS:
                raise DescriptorError(f"unknown builder {name!r}")
            params = {k: v for k, v in desc.items() if k not in ("builder", "group")}
            g = group if group is not None else (cyclic(2) if name != "point_trivial" else trivial_group())
            return BUILDERS[name](g, **params)
        if "product" in desc:
            left, right = desc["product"]
            return product(from_json(left, group), from_json(right, group))
        if "diagonal_product" in desc:
            left, right = desc["diagonal_product"]
            return diagonal_product(from_json(left, group), from_json(right, group))
        if group is None:
            group = trivial_group()
        cells = [int(c) for c in desc["cells"]]
        raw = desc.get("boundary", [[] for _ in cells[1:]])
        if len(raw) != len(cells) - 1:
            raise DescriptorError("need one boundary list per dimension >= 1")
        bounds = []
        for q, entries in enumerate(raw, start=1):
            for r, c in entries:
                if not (0 <= r < cells[q - 1] and 0 <= c < cells[q]):
                    raise DescriptorError(f"boundary entry {(r, c)} out of range in dimension {q}")
            bounds.append(BitMatrix.from_entries(cells[q - 1], cells[q], [tuple(e) for e in entries]))
        perms = desc.get("action")
        return make_complex(group, cells, bounds, perms)
    except (KeyError, TypeError, IndexError) as exc:
        raise DescriptorError(f"malformed complex descriptor: {exc}") from exc
    except HomomorphismError as exc:
        raise DescriptorError(f"action does not define a group action: {exc}") from exc


def to_json(x: GCWComplex) -> dict:
    """Descriptor with per-generator permutations (group not included)."""
    return {
        "cells": list(x.cells),
        "boundary": [
            [[int(r), int(c)] for r, c in zip(*np.nonzero(b.to_dense()))] for b in x.boundaries
        ],
        "action": [[a.perm[g].tolist() for g in x.group.generators] for a in x.actions],
    }
