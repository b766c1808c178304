import itertools
import math
import random

import pytest

from xdescent import (
    ContentVector,
    DifferenceSet,
    Greater,
    PeriodicMod,
    ResidueDigraph,
    canonical_content,
    count_exact,
    d_empty,
    d_periodic,
    transfer_series,
    word_count_empty,
    word_count_with_I,
)
from xdescent.errors import NotApplicable, SizeLimit
from xdescent.periodic import empty_table, factorial_weight, residue_word
from xdescent.relation import Complement, Intersection, Union, all_position_sets

from conftest import EVEN_ODD, MOD3_SUCC, SAME_PARITY

H_MOD3 = ResidueDigraph.from_matrix(MOD3_SUCC.f)

MOD3_TABLE = [
    # n, content, A_H, d
    (1, (0, 1, 0), 1, 1),
    (2, (0, 1, 1), 1, 1),
    (3, (1, 1, 1), 3, 3),
    (4, (1, 2, 1), 4, 8),
    (5, (1, 2, 2), 6, 24),
    (6, (2, 2, 2), 12, 96),
    (7, (2, 3, 2), 19, 456),
    (8, (2, 3, 3), 33, 2376),
    (9, (3, 3, 3), 66, 14256),
    (10, (3, 4, 3), 111, 95904),
]


def brute_words(H: ResidueDigraph, counts) -> int:
    letters = [r for r, c in enumerate(counts) for _ in range(c)]
    return sum(
        all(H.has_edge(a, b) for a, b in zip(w, w[1:]))
        for w in set(itertools.permutations(letters))
    )


def random_residue_digraph(rng: random.Random, m: int) -> ResidueDigraph:
    return ResidueDigraph.from_edges(
        m, [(r, s) for r in range(m) for s in range(m) if rng.random() < 0.5]
    )


def test_canonical_content():
    assert canonical_content(3, 7) == ContentVector((2, 3, 2))
    assert str(canonical_content(3, 10)) == "(3,4,3)"
    assert canonical_content(1, 5) == ContentVector((5,))


def test_word_count_examples():
    assert word_count_empty(H_MOD3, ContentVector((2, 3, 2))) == 19
    swap = ResidueDigraph.from_edges(2, [(0, 1), (1, 0)])
    assert word_count_empty(swap, ContentVector((2, 2))) == 2
    assert word_count_empty(swap, ContentVector((2, 1))) == 1
    assert word_count_empty(swap, ContentVector((3, 1))) == 0
    for r in range(3):
        unit = ContentVector(tuple(int(k == r) for k in range(3)))
        assert word_count_empty(ResidueDigraph.from_edges(3, []), unit) == 1
    assert word_count_empty(H_MOD3, ContentVector((0, 0, 0))) == 0


def test_word_count_content_mismatch():
    with pytest.raises(ValueError):
        word_count_empty(H_MOD3, ContentVector((1, 1)))


@pytest.mark.parametrize("seed", range(20))
def test_word_count_matches_brute_force(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    H = random_residue_digraph(rng, m)
    counts = tuple(rng.randint(0, 3) for _ in range(m))
    if sum(counts) == 0 or sum(counts) > 8:
        counts = (1,) * m
    assert word_count_empty(H, ContentVector(counts)) == brute_words(H, counts)


def test_mod3_table_matches_known_values():
    rows = empty_table(MOD3_SUCC, 10)
    got = [(r.n, r.content.counts, r.words, r.count) for r in rows]
    assert got == MOD3_TABLE


def test_word_count_with_I_examples():
    assert word_count_with_I(EVEN_ODD.f, 4, (), canonical_content(2, 4)) == 1
    content = canonical_content(3, 4)
    assert content.counts == (1, 2, 1)
    words = word_count_with_I(MOD3_SUCC.f, 4, {2}, content)
    assert words * factorial_weight(content) == count_exact(MOD3_SUCC, range(1, 5), {2})
    assert word_count_with_I(MOD3_SUCC.f, 4, {4}, content) == 0
    with pytest.raises(ValueError):
        word_count_with_I(MOD3_SUCC.f, 5, (), content)


def test_d_periodic_examples():
    assert d_periodic(MOD3_SUCC, 10) == 95904
    assert d_periodic(SAME_PARITY, 4) == 8
    assert d_periodic(EVEN_ODD, 5) == 12


def test_d_periodic_rejects_nonperiodic():
    with pytest.raises(NotApplicable):
        d_periodic(Greater(), 4)
    with pytest.raises(NotApplicable):
        d_periodic(DifferenceSet({1}), 4)


@pytest.mark.parametrize("spec", [MOD3_SUCC, SAME_PARITY, EVEN_ODD])
def test_empty_counts_three_ways(spec):
    for n in range(1, 9):
        truth = count_exact(spec, range(1, n + 1), ())
        assert d_periodic(spec, n) == truth
        assert d_empty(spec, n) == truth


COMBINED = [
    MOD3_SUCC,
    SAME_PARITY,
    EVEN_ODD,
    Complement(MOD3_SUCC),
    Union((SAME_PARITY, MOD3_SUCC)),
    Intersection((Complement(EVEN_ODD), MOD3_SUCC)),
    PeriodicMod.from_rule(4, lambda r, s: (r + s) % 4 == 1),
]


@pytest.mark.parametrize("spec", COMBINED)
def test_general_I_matches_oracle(spec):
    for n in range(1, 8):
        for I in all_position_sets(n):
            assert d_periodic(spec, n, I) == count_exact(spec, range(1, n + 1), I)


@pytest.mark.parametrize("m", [2, 3])
def test_each_residue_word_has_factorial_fiber(m):
    for n in range(1, 7):
        content = canonical_content(m, n)
        fibers: dict[tuple[int, ...], int] = {}
        for perm in itertools.permutations(range(1, n + 1)):
            word = residue_word(perm, m)
            fibers[word] = fibers.get(word, 0) + 1
        assert set(fibers.values()) == {factorial_weight(content)}


def test_parity_closed_forms():
    for n in range(1, 9):
        h, k = n // 2, (n + 1) // 2
        same = 2 * math.factorial(h) ** 2 if n % 2 == 0 else math.factorial(h) * math.factorial(k)
        assert d_periodic(SAME_PARITY, n) == same
        assert d_periodic(EVEN_ODD, n) == math.factorial(h) * math.factorial(k)


def test_series_examples():
    series = transfer_series(H_MOD3, 7)
    assert series.coefficient(7, (2, 3, 2)) == 19
    for r in range(3):
        assert series.coefficient(1, tuple(int(k == r) for k in range(3))) == 1
    assert all(n == content.total for n, content, _ in series.terms())


@pytest.mark.parametrize("seed", range(20))
def test_series_matches_content_dp(seed):
    rng = random.Random(500 + seed)
    m = rng.randint(1, 4)
    H = random_residue_digraph(rng, m)
    degree = 6
    series = transfer_series(H, degree)
    for n in range(1, degree + 1):
        for counts in itertools.product(range(n + 1), repeat=m):
            if sum(counts) == n:
                assert series.coefficient(n, counts) == word_count_empty(H, ContentVector(counts))


def test_series_limits(monkeypatch):
    with pytest.raises(ValueError):
        transfer_series(H_MOD3, 0)
    monkeypatch.setenv("XDESCENT_BUDGET", "series=3")
    with pytest.raises(SizeLimit):
        transfer_series(H_MOD3, 4)
