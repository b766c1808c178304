import itertools
import random

import pytest

from xdescent import (
    DifferenceSet,
    Digraph,
    Greater,
    Less,
    TournamentClass,
    classify_tournament_relation,
    count_exact,
    count_paths,
    count_paths_signed,
    count_paths_tournament,
    d_empty,
)
from xdescent.errors import NotTournament, ParseError, SizeLimit
from xdescent.relation import FinitePairs, Union

from conftest import BATTERY, MOD3_SUCC


def brute_paths(D: Digraph) -> int:
    return sum(
        all(D.has_edge(a, b) for a, b in zip(order, order[1:]))
        for order in itertools.permutations(range(1, D.n + 1))
    )


def random_digraph(rng: random.Random, n: int, p: float = 0.5) -> Digraph:
    return Digraph.from_edges(
        n, [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and rng.random() < p]
    )


def random_tournament(rng: random.Random, n: int) -> Digraph:
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            edges.append((i, j) if rng.random() < 0.5 else (j, i))
    return Digraph.from_edges(n, edges)


THREE_CYCLE = Digraph.from_edges(3, [(1, 2), (2, 3), (3, 1)])


def test_count_paths_examples():
    assert count_paths(Digraph.complete(3)) == 6
    for n in range(1, 9):
        assert count_paths(Digraph.transitive_tournament(n)) == 1
    assert count_paths(THREE_CYCLE) == 3
    assert count_paths(Digraph(0, ())) == 0


def test_tournament_formula_examples():
    assert count_paths_tournament(Digraph.transitive_tournament(4)) == 1
    # identity contributes 1, the single admissible 3-cycle contributes 2
    assert count_paths_tournament(THREE_CYCLE) == 3


def test_signed_formula_examples():
    assert count_paths_signed(Digraph.complete(3)) == 6
    assert count_paths_signed(Digraph.transitive_tournament(3)) == 1
    assert count_paths_signed(Digraph.from_edges(2, [])) == 0


def test_not_tournament():
    with pytest.raises(NotTournament):
        count_paths_tournament(Digraph.complete(3))


def test_size_limits(monkeypatch):
    monkeypatch.setenv("XDESCENT_BUDGET", "signed=3,tournament=3,hampath=3")
    with pytest.raises(SizeLimit):
        count_paths_signed(Digraph.complete(4))
    with pytest.raises(SizeLimit):
        count_paths_tournament(Digraph.transitive_tournament(4))
    with pytest.raises(SizeLimit):
        count_paths(Digraph.complete(4))


@pytest.mark.parametrize("seed", range(100))
def test_signed_matches_dp_and_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    D = random_digraph(rng, n, rng.choice([0.3, 0.5, 0.7]))
    expected = count_paths(D)
    assert count_paths_signed(D) == expected
    if n <= 6:
        assert brute_paths(D) == expected


@pytest.mark.parametrize("seed", range(100))
def test_tournament_formula_matches_dp(seed):
    rng = random.Random(1000 + seed)
    D = random_tournament(rng, rng.randint(1, 7))
    total = count_paths(D)
    assert count_paths_tournament(D) == total
    assert total % 2 == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_tournaments_odd_and_nonempty(n):
    rng = random.Random(n)
    for _ in range(200):
        total = count_paths(random_tournament(rng, n))
        assert total >= 1 and total % 2 == 1


def test_d_empty_examples():
    for n in range(1, 9):
        assert d_empty(Less(), n) == 1
    assert d_empty(DifferenceSet({1}), 4) == 11
    assert d_empty(MOD3_SUCC, 7) == 456


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_d_empty_matches_oracle(name):
    spec = BATTERY[name]
    for n in range(1, 9):
        assert d_empty(spec, n) == count_exact(spec, range(1, n + 1), ())


def test_classification():
    # Greater: G_n has i -> j iff i < j
    assert classify_tournament_relation(Greater(), 8) is TournamentClass.ASCENTS_LIKE
    assert classify_tournament_relation(Less(), 8) is TournamentClass.DESCENTS_LIKE
    assert classify_tournament_relation(Union((DifferenceSet({1}), FinitePairs({(2, 9)}))), 5) is TournamentClass.NOT_TOURNAMENT
    # G_3 = 3 -> 1 -> 2 plus 3 -> 2: transitive, but ordered by neither
    spec = FinitePairs({(2, 1), (1, 3), (2, 3)})
    assert classify_tournament_relation(spec, 3) is TournamentClass.TRANSITIVE_OTHER
    cyclic = FinitePairs({(2, 1), (3, 2), (1, 3)})
    assert classify_tournament_relation(cyclic, 3) is TournamentClass.GENUINE_TOURNAMENT


def test_transitive_other_still_counts_like_descents():
    spec = FinitePairs({(2, 1), (1, 3), (2, 3)})
    for I in [(), (1,), (2,), (1, 2)]:
        assert count_exact(spec, [1, 2, 3], I) == count_exact(Greater(), [1, 2, 3], I)


def test_digraph_text_round_trip():
    D = random_digraph(random.Random(5), 6)
    assert Digraph.from_text(D.to_text()) == D
    assert Digraph.from_text("3\n1 2\n# comment\n2 3\n") == Digraph.from_edges(3, [(1, 2), (2, 3)])
    with pytest.raises(ParseError):
        Digraph.from_text("3\n1\n")


def test_digraph_rejects_loops():
    with pytest.raises(ValueError):
        Digraph(2, (0b01, 0))
