import pytest
from hypothesis import given
from hypothesis import strategies as st

from quandlekit.errors import InternalError, InvalidParameter
from quandlekit.grouprings import GroupRingValue

vals = st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=5).map(
    lambda d: GroupRingValue(7, d))


@given(vals, vals, vals)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == GroupRingValue.zero(7)


@given(vals)
def test_json_roundtrip(a):
    assert GroupRingValue.from_json(a.to_json()) == a


def test_pretty_and_reduction():
    v = GroupRingValue.from_exponents(3, [0, -1, -4, 0])
    assert v == GroupRingValue(3, {0: 2, 2: 2})
    assert v.pretty() == "2 + 2t^2"
    assert GroupRingValue(5, {1: -1}).pretty() == "-t"
    assert GroupRingValue(5).pretty() == "0"


def test_division_and_ratio():
    v = GroupRingValue(3, {0: 3, 2: 6})
    assert v.exact_div(3) == GroupRingValue(3, {0: 1, 2: 2})
    with pytest.raises(InternalError):
        v.exact_div(4)
    assert v.ratio_to(GroupRingValue(3, {0: 1, 2: 2})) == 3
    assert v.ratio_to(GroupRingValue(3, {0: 1, 1: 2})) is None


def test_mixed_moduli():
    with pytest.raises(InvalidParameter):
        GroupRingValue(3) + GroupRingValue(5)
    with pytest.raises(InvalidParameter):
        GroupRingValue(0)
