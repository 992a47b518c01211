import numpy as np
import pytest
from hypothesis import given

from equivhom.gcw import (
    DescriptorError,
    NonFreeAction,
    circle,
    circle_two_fixed,
    cyclic_rotation_circle,
    free_orbit_points,
    from_json,
    homology_dims,
    homology_module,
    make_complex,
    point_trivial,
    product,
    quotient_free,
    sphere_antipodal,
    sphere_trivial,
    sphere_with_fixed_point,
    to_json,
    validate,
)
from equivhom.equiv_homology import convolve
from equivhom.gf2 import BitMatrix
from equivhom.groups import cyclic, trivial_group

from oracles import chain_homology
from strategies import g_complexes, plain_complexes

Z2 = cyclic(2)


def test_validate_examples():
    assert validate(sphere_antipodal(1)).ok
    vertices_only = make_complex(Z2, [2, 2], [BitMatrix.from_dense([[1, 1], [1, 1]])], [[[1, 0]], [[0, 1]]])
    assert validate(vertices_only).ok  # d e_i = v0 + v1 is invariant under the vertex swap
    skew = make_complex(Z2, [2, 2], [BitMatrix.from_dense([[1, 0], [0, 1]])], [[[1, 0]], [[0, 1]]])
    rep = validate(skew)
    assert not rep.ok and any("equivariant" in f for f in rep.failures)
    assert validate(point_trivial(Z2)).ok


def test_validate_catches_bad_boundary():
    bad = make_complex(trivial_group(), [1, 1, 1], [BitMatrix.from_dense([[1]]), BitMatrix.from_dense([[1]])])
    assert any("o d_2" in f for f in validate(bad).failures)
    shape = make_complex(trivial_group(), [1, 2], [BitMatrix.from_dense([[1]])])
    assert not validate(shape).ok


def test_product_examples():
    y = sphere_antipodal(1)
    p = product(point_trivial(trivial_group()), y)
    assert p.cells == y.cells and homology_dims(p) == homology_dims(y)
    s0 = free_orbit_points(Z2)
    assert product(s0, s0).cells == (4,)
    torus = product(sphere_antipodal(1), sphere_antipodal(1))
    assert torus.cells == (4, 8, 4)
    assert validate(torus).ok and torus.group.order == 4
    assert homology_dims(torus) == [1, 2, 1]


def test_quotient_examples():
    q = quotient_free(sphere_antipodal(1))
    assert q.cells == (1, 1) and q.boundaries[0].is_zero()
    assert homology_dims(quotient_free(sphere_antipodal(2))) == [1, 1, 1]
    with pytest.raises(NonFreeAction):
        quotient_free(circle_two_fixed())


def test_homology_examples():
    assert homology_dims(point_trivial(trivial_group())) == [1]
    assert homology_dims(circle()) == [1, 1]
    assert homology_dims(circle(5)) == [1, 1]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_sphere_builders(d):
    for x in (sphere_antipodal(d), sphere_with_fixed_point(d), sphere_trivial(d, Z2)):
        assert validate(x).ok
        assert homology_dims(x) == [1] + [0] * (d - 1) + [1]
    assert sphere_antipodal(2).cells == (2, 2, 2)


def test_small_builders():
    c = circle_two_fixed()
    assert validate(c).ok and homology_dims(c) == [1, 1]
    assert c.actions[0].perm[1].tolist() == [0, 1] and c.actions[1].perm[1].tolist() == [1, 0]
    p = point_trivial(Z2)
    assert p.cells == (1,) and p.is_trivial_action()
    r = cyclic_rotation_circle(5)
    assert validate(r).ok and r.is_cell_free()
    assert homology_dims(quotient_free(r)) == [1, 1]


def test_homology_module_of_flip():
    # reflection of the circle acts trivially on H_1 over GF(2)
    m = homology_module(circle_two_fixed(), 1)
    assert m.dim == 1 and all(mat.to_dense().tolist() == [[1]] for mat in m.matrices)


def test_json_roundtrip_and_errors():
    x = sphere_with_fixed_point(3)
    y = from_json(to_json(x), Z2)
    assert y.cells == x.cells and validate(y).ok
    assert all(np.array_equal(a.perm, b.perm) for a, b in zip(x.actions, y.actions))
    with pytest.raises(DescriptorError):
        from_json({"builder": "torus"})
    with pytest.raises(DescriptorError):
        from_json({"cells": [1, 1], "boundary": [[[0, 3]]]})
    with pytest.raises(DescriptorError):
        from_json({"cells": [2], "action": [[[1, 0]]], "group": {"kind": "cyclic", "n": 3}})


@given(g_complexes(groups=("Z1", "Z2", "Z3", "Z4", "V4", "S3")))
def test_random_complexes_valid_and_homology_matches_oracle(x):
    assert validate(x).ok
    dense = [b.to_dense() for b in x.boundaries]
    assert homology_dims(x) == chain_homology(dense, list(x.cells))
    assert sum((-1) ** q * h for q, h in enumerate(homology_dims(x))) == x.euler_characteristic()


@given(g_complexes(groups=("Z2", "Z3", "V4", "S3"), free=True))
def test_free_quotient_euler_characteristic(x):
    q = quotient_free(x)
    assert validate(q).ok
    assert q.euler_characteristic() * x.group.order == x.euler_characteristic()


@given(plain_complexes(), plain_complexes())
def test_kunneth_plain_homology(x, y):
    p = product(x, y)
    assert validate(p).ok
    hx, hy = homology_dims(x), homology_dims(y)
    n = len(hx) + len(hy) - 2
    assert homology_dims(p) == convolve(hx, hy, n)
