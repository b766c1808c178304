import pytest

from xdescent import DifferenceSet, Greater, count_exact
from xdescent.successions import (
    SuccessionFamily,
    complement_map,
    reverse_succession_free_count,
    succession_free_count,
    verify_complement_bijection,
)

KNOWN = [1, 1, 3, 11, 53, 309, 2119, 16687, 148329]


def test_known_values():
    assert [succession_free_count(n) for n in range(1, 10)] == KNOWN
    assert reverse_succession_free_count(3) == 3
    assert reverse_succession_free_count(6) == 309


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        succession_free_count(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_matches_oracle(n):
    labels = range(1, n + 1)
    assert succession_free_count(n) == count_exact(DifferenceSet({1}), labels, ())
    assert reverse_succession_free_count(n) == count_exact(DifferenceSet({-1}), labels, ())


@pytest.mark.slow
def test_matches_oracle_at_nine():
    assert count_exact(DifferenceSet({1}), range(1, 10), ()) == succession_free_count(9)


@pytest.mark.parametrize("n", range(1, 7))
def test_complement_bijection(n):
    assert verify_complement_bijection(n)


def test_complement_map_is_involution():
    assert complement_map((2, 4, 1, 3)) == (3, 1, 4, 2)


def test_family_detection():
    assert SuccessionFamily.of(DifferenceSet({1})) is SuccessionFamily.FORWARD
    assert SuccessionFamily.of(DifferenceSet({-1})) is SuccessionFamily.REVERSE
    assert SuccessionFamily.of(DifferenceSet({1, -1})) is None
    assert SuccessionFamily.of(Greater()) is None
    assert SuccessionFamily.REVERSE.spec() == DifferenceSet({-1})
