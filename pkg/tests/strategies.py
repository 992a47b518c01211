"""Hypothesis strategies: random simplicial complexes closed under a finite group."""
from itertools import combinations

from hypothesis import strategies as st

from equivhom.gcw import make_complex, plain_complex
from equivhom.gf2 import BitMatrix
from equivhom.groups import cyclic, direct_product, from_generators, trivial_group

S3 = from_generators([[1, 0, 2], [1, 2, 0]])[0]
GROUPS = {
    "Z1": trivial_group(),
    "Z2": cyclic(2),
    "Z3": cyclic(3),
    "Z4": cyclic(4),
    "V4": direct_product(cyclic(2), cyclic(2)),
    "S3": S3,
}


def coset_action(group, h):
    """Left action of ``group`` on the cosets of the cyclic subgroup generated by ``h``."""
    sub = {group.identity}
    x = h
    while x not in sub:
        sub.add(x)
        x = group.mul(x, h)
    cosets, index = [], {}
    for g in range(group.order):
        if g in index:
            continue
        c = frozenset(group.mul(g, s) for s in sub)
        for y in c:
            index[y] = len(cosets)
        cosets.append(min(c))
    return [[index[group.mul(g, rep)] for rep in cosets] for g in range(group.order)]


def build_simplicial(group, vertex_perm, seeds):
    """G-closed simplicial complex generated by ``seeds`` (sets of vertices).

    ``vertex_perm[g][v]`` is the image of vertex ``v`` under ``g``.
    """
    nv = len(vertex_perm[0])
    simplices = {frozenset([v]) for v in range(nv)}
    for s in seeds:
        for g in range(group.order):
            img = frozenset(vertex_perm[g][v] for v in s)
            for k in range(1, len(img) + 1):
                simplices.update(frozenset(f) for f in combinations(sorted(img), k))
    top = max(len(s) for s in simplices) - 1
    by_dim = [sorted((tuple(sorted(s)) for s in simplices if len(s) == q + 1)) for q in range(top + 1)]
    index = [{s: i for i, s in enumerate(cells)} for cells in by_dim]
    bounds = []
    for q in range(1, top + 1):
        entries = [(index[q - 1][f], i) for i, s in enumerate(by_dim[q]) for f in combinations(s, q)]
        bounds.append(BitMatrix.from_entries(len(by_dim[q - 1]), len(by_dim[q]), entries))
    perms = []
    for q, cells in enumerate(by_dim):
        per_gen = []
        for g in group.generators:
            per_gen.append([index[q][tuple(sorted(vertex_perm[g][v] for v in s))] for s in cells])
        perms.append(per_gen)
    return make_complex(group, [len(c) for c in by_dim], bounds, perms)


def _seeds(nv, max_seeds):
    if nv < 2:
        return st.just([])
    return st.lists(st.sets(st.integers(0, nv - 1), min_size=2, max_size=3), min_size=1, max_size=max_seeds)


@st.composite
def g_complexes(draw, groups=("Z1", "Z2", "Z3", "V4"), max_orbits=3, max_seeds=4, free=False):
    """Random valid G-CW complex (a G-closed simplicial complex) over one of ``groups``."""
    name = draw(st.sampled_from(groups))
    g = GROUPS[name]
    orbits = draw(st.lists(st.integers(0, g.order - 1), min_size=2 if free else 1, max_size=max_orbits))
    vertex_perm = [[] for _ in range(g.order)]
    members: list[list[int]] = []
    offset = 0
    for h in orbits:
        if free or g.order == 1:
            act = [list(g.cayley[x]) for x in range(g.order)]  # regular orbit
        else:
            act = coset_action(g, h)
        size = len(act[0])
        for x in range(g.order):
            vertex_perm[x].extend(offset + v for v in act[x])
        members.append(list(range(offset, offset + size)))
        offset += size
    if free:
        # a simplex meeting each orbit at most once cannot be fixed by a non-identity element
        seeds = []
        for _ in range(draw(st.integers(1, max_seeds))):
            picked = draw(st.sets(st.sampled_from(range(len(members))), min_size=2, max_size=min(3, len(members))))
            seeds.append({draw(st.sampled_from(members[k])) for k in sorted(picked)})
    else:
        seeds = draw(_seeds(offset, max_seeds))
    return build_simplicial(g, vertex_perm, seeds)


@st.composite
def plain_complexes(draw, max_vertices=5, max_seeds=4):
    nv = draw(st.integers(1, max_vertices))
    seeds = draw(_seeds(nv, max_seeds))
    g = trivial_group()
    x = build_simplicial(g, [list(range(nv))], seeds)
    return plain_complex(x.cells, x.boundaries)
