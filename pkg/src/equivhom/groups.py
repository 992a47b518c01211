"""Finite groups as Cayley tables, group-algebra elements over GF(2) and
permutation actions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

import numpy as np

ORDER_CAP = 128

T = TypeVar("T")


class GroupOrderError(ValueError):
    """A construction would exceed the configured order cap."""


class HomomorphismError(ValueError):
    """Generator images do not extend to a group homomorphism."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on elements ``0..order-1`` given by its multiplication table.

    ``cayley[g, h]`` is the index of ``g*h``. ``generators`` lists element
    indices that generate the group; they fix how generator-wise data
    (cell permutations, matrices) is extended to every element.
    ``factors`` is set by :func:`direct_product` so resolutions can be
    built factor-wise.
    """

    cayley: np.ndarray
    generators: tuple[int, ...]
    identity: int = 0
    name: str = ""
    factors: tuple["FiniteGroup", "FiniteGroup"] | None = field(default=None, repr=False)

    def __post_init__(self):
        table = np.ascontiguousarray(self.cayley, dtype=np.intp)
        table.flags.writeable = False
        object.__setattr__(self, "cayley", table)
        n = table.shape[0]
        inv = np.empty(n, dtype=np.intp)
        for g in range(n):
            hits = np.flatnonzero(table[g] == self.identity)
            if hits.size != 1:
                raise ValueError(f"element {g} has no unique inverse")
            inv[g] = hits[0]
        inv.flags.writeable = False
        object.__setattr__(self, "inverse", inv)

    inverse: np.ndarray = field(init=False, repr=False)

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k % self.element_order(g)):
            x = self.mul(x, g)
        return x

    def is_trivial(self) -> bool:
        return self.order == 1

    def cyclic_generator(self) -> int | None:
        """An element of full order, or ``None`` if the group is not cyclic."""
        for g in range(self.order):
            if self.element_order(g) == self.order:
                return g
        return None

    def check_associativity(self) -> bool:
        t = self.cayley
        # (gh)k == g(hk) for all triples, vectorized over g and h
        left = t[t]  # left[g, h, k] = (g h) k  via t[t[g,h], k]
        right = t[:, t]  # right[g, h, k] = g (h k)
        return bool(np.array_equal(left, right))

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.order == other.order and bool(np.array_equal(self.cayley, other.cayley))

    def extend_hom(self, gen_images: Sequence[T], compose: Callable[[T, T], T], unit: T,
                   key: Callable[[T], Hashable] = lambda x: x) -> list[T]:
        """Extend images of ``self.generators`` to all elements.

        ``compose(a, b)`` must realize the image of a product ``g*h`` as
        ``compose(image(g), image(h))``. Raises :class:`HomomorphismError`
        when two words for the same element disagree.
        """
        if len(gen_images) != len(self.generators):
            raise HomomorphismError(
                f"expected {len(self.generators)} generator images, got {len(gen_images)}"
            )
        images: list[T | None] = [None] * self.order
        images[self.identity] = unit
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s, img_s in zip(self.generators, gen_images):
                y = self.mul(s, x)
                cand = compose(img_s, images[x])
                if images[y] is None:
                    images[y] = cand
                    queue.append(y)
                elif key(images[y]) != key(cand):
                    raise HomomorphismError(f"generator images disagree on element {y}")
        if any(im is None for im in images):
            raise HomomorphismError("generators do not generate the group")
        return images  # type: ignore[return-value]

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    if n > ORDER_CAP:
        raise GroupOrderError(f"order {n} exceeds cap {ORDER_CAP}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, generators=(1,) if n > 1 else (), name=f"Z/{n}")


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(x) = p(q(x))."""
    return tuple(p[i] for i in q)


def from_generators(perms: Sequence[Sequence[int]], cap: int = ORDER_CAP) -> tuple[FiniteGroup, "PermAction"]:
    """Close a set of permutations under composition.

    Element 0 is the identity; the returned action sends each element to
    its permutation.
    """
    perms = [tuple(int(i) for i in p) for p in perms]
    degrees = {len(p) for p in perms}
    if len(degrees) > 1:
        raise ValueError("generators have different degrees")
    degree = degrees.pop() if degrees else 0
    for p in perms:
        if sorted(p) != list(range(degree)):
            raise ValueError(f"{list(p)} is not a permutation")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in perms:
            y = _compose(s, x)
            if y not in index:
                if len(elements) >= cap:
                    raise GroupOrderError(f"closure exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    n = len(elements)
    table = np.empty((n, n), dtype=np.intp)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[_compose(a, b)]
    gens = tuple(index[s] for s in perms)
    group = FiniteGroup(table, generators=gens, name=f"Perm(degree {degree}, order {n})")
    action = PermAction(group, degree, np.array(elements, dtype=np.intp).reshape(n, degree))
    return group, action


def direct_product(g: FiniteGroup, h: FiniteGroup, cap: int = ORDER_CAP) -> FiniteGroup:
    """Product group; element ``(a, b)`` has index ``a * |H| + b``."""
    n, m = g.order, h.order
    if n * m > cap:
        raise GroupOrderError(f"order {n * m} exceeds cap {cap}")
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = g.cayley[a[:, None], a[None, :]] * m + h.cayley[b[:, None], b[None, :]]
    gens = tuple(x * m + h.identity for x in g.generators) + tuple(
        g.identity * m + y for y in h.generators
    )
    return FiniteGroup(
        table,
        generators=gens,
        identity=g.identity * m + h.identity,
        name=f"({g.name or 'G'} x {h.name or 'H'})",
        factors=(g, h),
    )


def product_index(g: FiniteGroup, h: FiniteGroup, a: int, b: int) -> int:
    return a * h.order + b


def diagonal(g: FiniteGroup) -> np.ndarray:
    """Indices of ``(x, x)`` inside ``direct_product(g, g)``, ordered by ``x``."""
    return np.arange(g.order) * g.order + np.arange(g.order)


@dataclass(frozen=True, eq=False)
class GroupAlgebraElem:
    """Element of Z2[G]; coefficients are 0/1 so it is its support set."""

    group: FiniteGroup
    support: frozenset[int]

    @classmethod
    def of(cls, group: FiniteGroup, elements: Iterable[int]) -> "GroupAlgebraElem":
        acc: set[int] = set()
        for x in elements:
            acc ^= {int(x)}
        return cls(group, frozenset(acc))

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupAlgebraElem":
        return cls(group, frozenset())

    @classmethod
    def one(cls, group: FiniteGroup) -> "GroupAlgebraElem":
        return cls(group, frozenset({group.identity}))

    def __add__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        return GroupAlgebraElem(self.group, self.support ^ other.support)

    def __mul__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        acc: set[int] = set()
        for a in self.support:
            for b in other.support:
                acc ^= {self.group.mul(a, b)}
        return GroupAlgebraElem(self.group, frozenset(acc))

    def is_zero(self) -> bool:
        return not self.support

    def conjugate(self) -> "GroupAlgebraElem":
        """Image under the anti-involution g -> g^{-1}."""
        return GroupAlgebraElem(self.group, frozenset(self.group.inv(x) for x in self.support))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        return self.support == other.support and self.group.same_table(other.group)

    def __hash__(self) -> int:
        return hash(self.support)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(x) for x in sorted(self.support)) + "}"


def norm_element(g: FiniteGroup) -> GroupAlgebraElem:
    """Sum of all group elements."""
    return GroupAlgebraElem(g, frozenset(range(g.order)))


@dataclass(frozen=True, eq=False)
class PermAction:
    """Action of ``group`` on ``{0..degree-1}``; ``perm[g, i]`` is the image of ``i``."""

    group: FiniteGroup
    degree: int
    perm: np.ndarray

    def __post_init__(self):
        p = np.ascontiguousarray(self.perm, dtype=np.intp).reshape(self.group.order, self.degree)
        p.flags.writeable = False
        object.__setattr__(self, "perm", p)

    @classmethod
    def trivial(cls, group: FiniteGroup, degree: int) -> "PermAction":
        return cls(group, degree, np.tile(np.arange(degree), (group.order, 1)))

    @classmethod
    def from_generator_perms(cls, group: FiniteGroup, degree: int,
                             gen_perms: Sequence[Sequence[int]]) -> "PermAction":
        imgs = group.extend_hom(
            [tuple(int(i) for i in p) for p in gen_perms], _compose, tuple(range(degree))
        )
        return cls(group, degree, np.array(imgs, dtype=np.intp).reshape(group.order, degree))

    def __call__(self, g: int, i: int) -> int:
        return int(self.perm[g, i])

    def homomorphism_defects(self) -> list[tuple[int, int]]:
        """Pairs (g, h) with perm(g*h) != perm(g) o perm(h)."""
        bad = []
        if self.degree == 0:
            return bad
        if not np.array_equal(self.perm[self.group.identity], np.arange(self.degree)):
            bad.append((self.group.identity, self.group.identity))
        for g in range(self.group.order):
            for h in range(self.group.order):
                gh = self.group.mul(g, h)
                if not np.array_equal(self.perm[gh], self.perm[g][self.perm[h]]):
                    bad.append((g, h))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.homomorphism_defects()

    def is_faithful(self) -> bool:
        ident = np.arange(self.degree)
        return sum(np.array_equal(row, ident) for row in self.perm) == 1

    def stabilizer(self, i: int) -> list[int]:
        return [g for g in range(self.group.order) if self.perm[g, i] == i]

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            orb = sorted({int(x) for x in self.perm[:, i]})
            seen.update(orb)
            out.append(orb)
        return out

    def pullback(self, group: FiniteGroup, hom: Sequence[int]) -> "PermAction":
        """Restrict along ``hom`` (a list mapping each element of ``group`` into ``self.group``)."""
        return PermAction(group, self.degree, self.perm[np.asarray(hom, dtype=np.intp)])


def group_from_json(desc: dict) -> FiniteGroup:
    """Build a group from ``{"kind": "cyclic" | "perm_generators" | "product" | "trivial", ...}``."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError("group descriptor must be an object with a 'kind'")
    kind = desc["kind"]
    if kind == "cyclic":
        return cyclic(int(desc["n"]))
    if kind == "trivial":
        return trivial_group()
    if kind == "perm_generators":
        gens = desc["generators"]
        degree = int(desc.get("degree", len(gens[0]) if gens else 0))
        if any(len(p) != degree for p in gens):
            raise ValueError("generator length differs from declared degree")
        group, _ = from_generators(gens) if gens else (trivial_group(), None)
        return group
    if kind == "product":
        return direct_product(group_from_json(desc["left"]), group_from_json(desc["right"]))
    raise ValueError(f"unknown group kind {kind!r}")
