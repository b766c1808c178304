"""Hamiltonian paths of G_n(X), counted three independent ways.

``count_paths`` is a bitmask dynamic program.  ``count_paths_tournament`` and
``count_paths_signed`` evaluate the cycle-sum formulas of Grinberg and
Stanley; they enumerate only the admissible permutations, so each is a direct
evaluation of its sum rather than a filter over all of S_n.
"""

from __future__ import annotations

from enum import Enum

from . import limits
from .digraph import Digraph
from .errors import NotTournament
from .relation import RelationSpec, restriction_digraph


def count_paths(D: Digraph) -> int:
    """Number of directed Hamiltonian paths of ``D`` (0 vertices: 0)."""
    n = D.n
    if n == 0:
        return 0
    if D.is_transitive_tournament():
        return 1  # the unique linear order; no DP needed at any size
    limits.check_size("hampath", n)
    adj = D.adjacency
    full = (1 << n) - 1
    # ways[mask][v]: paths visiting exactly ``mask`` and ending at ``v``
    ways = [None] * (1 << n)
    for v in range(n):
        row = [0] * n
        row[v] = 1
        ways[1 << v] = row
    for mask in range(1, full):
        row = ways[mask]
        if row is None:
            continue
        free = full & ~mask
        for v in range(n):
            c = row[v]
            if not c:
                continue
            nxt = adj[v] & free
            while nxt:
                low = nxt & -nxt
                w = low.bit_length() - 1
                target = ways[mask | low]
                if target is None:
                    target = ways[mask | low] = [0] * n
                target[w] += c
                nxt ^= low
        ways[mask] = None  # each mask is read once; release it
    last = ways[full]
    return sum(last) if last else 0


def _cycles_from(start: int, remaining: int, adj: tuple[int, ...]):
    """Yield ``(length, used_mask)`` for directed cycles through ``start``.

    The other cycle vertices are drawn from ``remaining`` (all larger than
    ``start``), so each cycle is produced once, rooted at its minimum.
    """
    stack = [(start, 1 << start, 1)]
    while stack:
        v, used, length = stack.pop()
        if length >= 2 and adj[v] >> start & 1:
            yield length, used
        nxt = adj[v] & remaining & ~used
        while nxt:
            low = nxt & -nxt
            stack.append((low.bit_length() - 1, used | low, length + 1))
            nxt ^= low


def count_paths_tournament(D: Digraph) -> int:
    """Sum of ``2**nsc(w)`` over odd-order ``w`` whose nontrivial cycles lie in the complement.

    Fixed points carry no condition; every cycle of length >= 2 must have odd
    length and be a directed cycle of the complement of ``D``.
    """
    n = D.n
    limits.check_size("tournament", n)
    bad = D.tournament_violation()
    if bad is not None:
        raise NotTournament(f"vertices {bad} carry zero or two arcs")
    if n == 0:
        return 0
    comp = D.complement().adjacency
    full = (1 << n) - 1
    memo: dict[int, int] = {}

    def total(uncovered: int) -> int:
        if not uncovered:
            return 1
        if uncovered in memo:
            return memo[uncovered]
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        rest = uncovered ^ low
        acc = total(rest)  # v is a fixed point
        for length, used in _cycles_from(v, rest, comp):
            if length % 2:
                acc += 2 * total(uncovered & ~used)
        memo[uncovered] = acc
        return acc

    return total(full)


def count_paths_signed(D: Digraph) -> int:
    """Signed sum over permutations whose cycles are all D-cycles or all complement-cycles.

    Each permutation contributes ``(-1)**phi`` where ``phi`` adds ``len - 1``
    over its nontrivial complement-cycles.  Fixed points are always allowed.
    """
    n = D.n
    limits.check_size("signed", n)
    if n == 0:
        return 0
    adj = D.adjacency
    comp = D.complement().adjacency
    full = (1 << n) - 1
    memo: dict[int, int] = {}

    def total(uncovered: int) -> int:
        if not uncovered:
            return 1
        if uncovered in memo:
            return memo[uncovered]
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        rest = uncovered ^ low
        acc = total(rest)
        for _, used in _cycles_from(v, rest, adj):
            acc += total(uncovered & ~used)
        for length, used in _cycles_from(v, rest, comp):
            sign = -1 if (length - 1) % 2 else 1
            acc += sign * total(uncovered & ~used)
        memo[uncovered] = acc
        return acc

    return total(full)


def d_empty(spec: RelationSpec, n: int) -> int:
    """d_X(empty; n), the number of X-descent-free permutations of ``[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    return count_paths(restriction_digraph(spec, n))


def empty_counts(spec: RelationSpec, n: int) -> list[int]:
    """``[1, d_X(empty;1), ..., d_X(empty;n)]``; index 0 holds the empty arrangement."""
    return [1] + [d_empty(spec, k) for k in range(1, n + 1)]


class TournamentClass(str, Enum):
    """Orientation of G_n(X) when it is a transitive tournament.

    ``DESCENTS_LIKE``: edges run from larger to smaller labels.
    ``ASCENTS_LIKE``: edges run from smaller to larger labels.
    ``TRANSITIVE_OTHER``: acyclic, but ordered by neither; a nested family can
    place a new vertex strictly inside the existing order (3 -> 1 -> 2).
    """

    DESCENTS_LIKE = "DescentsLike"
    ASCENTS_LIKE = "AscentsLike"
    GENUINE_TOURNAMENT = "GenuineTournament"
    TRANSITIVE_OTHER = "TransitiveOther"
    NOT_TOURNAMENT = "NotTournament"


def classify_tournament_relation(spec: RelationSpec, n_max: int) -> TournamentClass:
    """Classify G_n(X) for ``n <= n_max``; certified only up to ``n_max``.

    Every transitive class gives ``d_X(I;n) = d(I;n) = d([n-1] - I; n)`` at
    each fixed ``n``, since any transitive tournament is a relabelling of the
    natural one.
    """
    D = restriction_digraph(spec, n_max)
    if not D.is_tournament():
        return TournamentClass.NOT_TOURNAMENT
    # A tournament is transitive iff its out-degrees are 0, 1, ..., n-1.
    if not D.is_transitive_tournament():
        return TournamentClass.GENUINE_TOURNAMENT
    if D == Digraph.transitive_tournament(n_max):
        return TournamentClass.DESCENTS_LIKE
    if all(D.has_edge(i, j) for i in range(1, n_max + 1) for j in range(i + 1, n_max + 1)):
        return TournamentClass.ASCENTS_LIKE
    return TournamentClass.TRANSITIVE_OTHER
