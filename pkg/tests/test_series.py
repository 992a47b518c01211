import pytest
from hypothesis import given, strategies as st

from equivhom.equiv_homology import group_homology_dims
from equivhom.groups import cyclic
from equivhom.series import TruncSeries

N = 16


def series(cutoff=8):
    return st.lists(st.integers(-50, 50), min_size=cutoff + 1, max_size=cutoff + 1).map(lambda c: TruncSeries(tuple(c)))


def test_telescoping():
    one_minus_u = TruncSeries.from_dims([1, -1], N)
    assert TruncSeries.geometric(N) * one_minus_u == TruncSeries.one(N)


def test_shift():
    assert TruncSeries.geometric(6).shift(2).to_json() == [0, 0, 1, 1, 1, 1, 1]


def test_u_minus_one_times_geometric():
    s = TruncSeries.from_dims([-1, 1], N) * TruncSeries.geometric(N)
    assert s.to_json() == [-1] + [0] * N
    assert s.render() == "-1 + O(u^17)"


def test_group_homology_of_z2_is_geometric():
    assert TruncSeries.from_dims(group_homology_dims(cyclic(2), N)) == TruncSeries.geometric(N)


def test_rendering():
    assert TruncSeries((1, 2, 0, -3, 1)).render() == "1 + 2*u - 3*u^3 + u^4 + O(u^5)"
    assert TruncSeries((0, -1)).render(show_order=False) == "-u"
    assert str(TruncSeries.zero(3)) == "0 + O(u^4)"


def test_mixed_cutoffs_truncate():
    a, b = TruncSeries.geometric(3), TruncSeries.geometric(6)
    assert (a + b).cutoff == 3
    assert a == b  # equal up to the smaller cutoff
    with pytest.raises(ValueError):
        a.truncate(5)
    with pytest.raises(ValueError):
        a.shift(-1)
    with pytest.raises(ValueError):
        TruncSeries(())


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncSeries.zero(8) and -(-a) == a
    assert a * TruncSeries.one(8) == a


@given(series(), st.integers(0, 5), st.integers(0, 5))
def test_shift_is_multiplication_by_monomial(a, d, e):
    assert a.shift(d) == a * TruncSeries.monomial(d, 8)
    assert a.shift(d).shift(e) == a.shift(d + e)
