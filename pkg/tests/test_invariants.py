from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equivhom.groups import cyclic, direct_product, from_generators
from equivhom.invariants import (
    ActionError,
    LinearGroupAction,
    QuotientMapError,
    RatPoly,
    act,
    action_from_json,
    algebra_equal,
    in_span,
    induced_quotient_map,
    invariant_dim,
    invariant_generators,
    is_invariant,
    jacobian_rank_at,
    molien_series,
    orbit_separation_check,
    product_action,
    product_action_check,
    quotient_eval,
    random_rational_points,
    relations,
    reynolds,
)

Z2 = cyclic(2)
x, y = RatPoly.zero(2).gens()


def reflection():
    return LinearGroupAction.from_generators(Z2, 2, [[[-1, 0], [0, 1]]])


def antipodal(d):
    return LinearGroupAction.from_generators(Z2, d, [[[-1 if i == j else 0 for j in range(d)] for i in range(d)]])


def rotation_z3():
    # permutation of coordinates, an order-3 rotation of R^3
    return LinearGroupAction.from_generators(cyclic(3), 3, [[[0, 0, 1], [1, 0, 0], [0, 1, 0]]])


def swap():
    return LinearGroupAction.from_generators(Z2, 2, [[[0, 1], [1, 0]]])


def sign_changes():
    v4 = direct_product(Z2, Z2)
    return LinearGroupAction.from_generators(v4, 2, [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]])


def s3_permutation():
    s3, _ = from_generators([[1, 0, 2], [1, 2, 0]])
    return LinearGroupAction.from_generators(
        s3, 3, [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]])


ACTIONS = {
    "reflection": reflection,
    "antipodal1": lambda: antipodal(1),
    "antipodal2": lambda: antipodal(2),
    "antipodal3": lambda: antipodal(3),
    "swap": swap,
    "sign_changes": sign_changes,
    "rotation_z3": rotation_z3,
}
_GENS = {}


def generators(name):
    if name not in _GENS:
        _GENS[name] = invariant_generators(ACTIONS[name]())
    return _GENS[name]


def rational():
    return st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def action_and_poly(draw):
    name = draw(st.sampled_from(sorted(ACTIONS)))
    a = ACTIONS[name]()
    n = draw(st.integers(1, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, 3)) for _ in range(a.dim))
        terms[e] = draw(rational())
    return name, a, RatPoly(a.dim, terms)


def test_action_on_polynomials():
    a = reflection()
    assert act(1, x, a) == -x and act(1, y, a) == y
    assert reynolds(x, a).is_zero() and reynolds(x * x, a) == x * x


def test_reflection_generators():
    gs = invariant_generators(reflection())
    assert gs.gens == [y, x * x] and gs.complete and gs.degrees == [1, 2]
    assert relations(gs, 4) == []
    assert quotient_eval(gs, (3, 2)) == (2, 9)
    assert jacobian_rank_at(gs, (1, 1)) == 2 and jacobian_rank_at(gs, (0, 1)) == 1


def test_antipodal_plane_generators_and_relation():
    gs = invariant_generators(antipodal(2))
    assert gs.gens == [x * x, x * y, y * y] and gs.complete
    rel = relations(gs, 4)
    z1, z2, z3 = RatPoly.zero(3).gens()
    assert len(rel) == 1 and in_span(z1 * z3 - z2 * z2, rel)
    assert jacobian_rank_at(gs, (1, 2)) == 2


def test_certificate_lines():
    lines = invariant_generators(reflection()).lines(["x", "y"])
    assert lines[0] == "p1 = y" and lines[1] == "p2 = x^2"
    assert "degree 2: products span 2, invariants 2" in lines


def test_separation_examples():
    gs = invariant_generators(reflection())
    assert orbit_separation_check(gs, reflection(), [(1, 2), (-1, 2), (Fraction(1, 2), 3), (0, 1)]).ok
    bad = orbit_separation_check([y], reflection(), [(1, 2), (2, 2)])
    assert not bad.ok and bad.violations[0][2] == "different orbits, same image"


def test_induced_maps():
    a, b = antipodal(1), antipodal(2)
    (t,) = RatPoly.zero(1).gens()
    ga, gb = invariant_generators(a), invariant_generators(b)
    (z,) = RatPoly.zero(1).gens()
    assert induced_quotient_map([t, t], a, b, ga, gb) == [z, z, z]
    zero = RatPoly.zero(1)
    assert induced_quotient_map([t, zero], a, b, ga, gb) == [z, zero, zero]
    with pytest.raises(QuotientMapError):
        induced_quotient_map([t * t, t], a, b, ga, gb)


def test_product_action():
    rep = product_action_check(antipodal(1), reflection())
    assert rep.complete and len(rep.gens) == 3
    ab = product_action(antipodal(1), reflection())
    assert ab.group.order == 4 and ab.dim == 3


def test_algebra_equal():
    assert algebra_equal([x * x, y], [y, x * x + y])
    assert not algebra_equal([x * x, y], [y])
    assert algebra_equal(invariant_generators(antipodal(2)).gens, [x * x, x * y + x * x, y * y])


@pytest.mark.parametrize("name", sorted(ACTIONS) + ["s3_permutation"])
def test_molien_matches_invariant_dims(name):
    a = ACTIONS[name]() if name in ACTIONS else s3_permutation()
    molien = molien_series(a, 5)
    assert [invariant_dim(a, k) for k in range(6)] == molien


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_generators_are_complete(name):
    gs = generators(name)
    assert gs.complete and all(is_invariant(g, gs.action) for g in gs.gens)


def test_s3_generators_are_power_sums_up_to_algebra():
    a = s3_permutation()
    gs = invariant_generators(a)
    u, v, w = RatPoly.zero(3).gens()
    power_sums = [u + v + w, u * u + v * v + w * w, u ** 3 + v ** 3 + w ** 3]
    assert gs.complete and gs.degrees == [1, 2, 3]
    assert algebra_equal(gs.gens, power_sums)


def test_json_actions():
    a = action_from_json({"group": {"kind": "cyclic", "n": 2}, "dim": 2, "matrices": [[[-1, 0], [0, "1"]]]})
    assert a.matrices[1] == reflection().matrices[1]
    with pytest.raises(ActionError):
        action_from_json({"group": {"kind": "cyclic", "n": 2}, "dim": 1, "matrices": [[[2]]]})
    with pytest.raises(ActionError):
        action_from_json({"group": {"kind": "cyclic", "n": 2}, "dim": 1, "matrices": [[[-1.0]]]})
    with pytest.raises(ActionError):
        action_from_json({"group": {"kind": "cyclic", "n": 2}, "dim": 2, "matrices": [[[-1]]]})


def test_polynomial_json_roundtrip():
    p = x * x - Fraction(1, 3) * y + 2
    assert RatPoly.from_json(2, p.to_json()) == p


@given(action_and_poly())
def test_reynolds_idempotent_and_invariant(case):
    _, a, f = case
    r = reynolds(f, a)
    assert is_invariant(r, a) and reynolds(r, a) == r


@given(st.sampled_from(sorted(ACTIONS)), st.integers(0, 2 ** 32 - 1))
def test_orbit_separation_random(name, seed):
    a = ACTIONS[name]()
    rng = np.random.default_rng(seed)
    pts = random_rational_points(rng, a.dim, 25)
    # add orbit mates so both directions of the check are exercised
    pts += [a.apply(int(rng.integers(a.group.order)), p) for p in pts]
    assert orbit_separation_check(generators(name), a, pts).ok


@given(st.sampled_from(sorted(ACTIONS)), st.lists(rational(), min_size=3, max_size=3))
def test_jacobian_full_rank_at_free_points(name, coords):
    a = ACTIONS[name]()
    pt = tuple(coords[: a.dim])
    if len(a.stabilizer(pt)) == 1:
        assert jacobian_rank_at(generators(name), pt) == a.dim


@given(st.sampled_from(sorted(ACTIONS)), st.lists(rational(), min_size=3, max_size=3))
def test_relations_vanish_on_image(name, coords):
    gs = generators(name)
    img = quotient_eval(gs, coords[: gs.action.dim])
    for r in relations(gs, 4):
        assert r(img) == 0
