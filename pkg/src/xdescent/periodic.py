"""Counting for relations that only look at residues modulo m.

A permutation of [n] is read as a word of residues.  Its content is forced
(``canonical_content``), the X-descent set is a property of the word alone,
and each admissible word is hit by exactly ``prod(l_r!)`` permutations.  So
the work is counting residue words with a fixed content and prescribed
transition types.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import limits
from .errors import NotApplicable
from .relation import PeriodicMod, RelationSpec, ResidueMatrix, as_periodic, positions


@dataclass(frozen=True)
class ContentVector:
    """Residue multiplicities ``(l_0, ..., l_{m-1})`` of a word."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts or any(c < 0 for c in self.counts):
            raise ValueError("content needs m >= 1 nonnegative entries")

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.counts)) + ")"


def canonical_content(m: int, n: int) -> ContentVector:
    """Residues of the labels ``1..n`` modulo ``m``."""
    counts = [0] * m
    for t in range(1, n + 1):
        counts[t % m] += 1
    return ContentVector(tuple(counts))


def factorial_weight(content: ContentVector) -> int:
    """Number of ways to put the actual labels into the residue slots."""
    return math.prod(math.factorial(c) for c in content.counts)


@dataclass(frozen=True)
class ResidueDigraph:
    """H: edge ``r -> s`` iff ``f(r, s) = 0``.  Loops are allowed."""

    m: int
    edges: tuple[tuple[bool, ...], ...] = field(repr=False)

    @classmethod
    def from_matrix(cls, f: ResidueMatrix) -> "ResidueDigraph":
        return cls(f.m, tuple(tuple(v == 0 for v in row) for row in f.entries))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]]) -> "ResidueDigraph":
        grid = [[False] * m for _ in range(m)]
        for r, s in edges:
            grid[r][s] = True
        return cls(m, tuple(map(tuple, grid)))

    def has_edge(self, r: int, s: int) -> bool:
        return self.edges[r][s]


def _transition(f: ResidueMatrix, descent: bool) -> list[list[int]]:
    """Allowed successors of each residue at a step that is / is not a descent."""
    want = 1 if descent else 0
    return [[s for s in range(f.m) if f.entries[r][s] == want] for r in range(f.m)]


def word_count_empty(H: ResidueDigraph, content: ContentVector) -> int:
    """A_H(l): words of content ``l`` whose every step is an edge of H.

    Uses the end-letter recursion A(l; r) = sum over s -> r of A(l - e_r; s)
    with A(e_r; r) = 1.  Empty content gives 0.
    """
    if content.m != H.m:
        raise ValueError(f"content has {content.m} residues, H has {H.m}")
    if content.total == 0:
        return 0
    preds = [[s for s in range(H.m) if H.edges[s][r]] for r in range(H.m)]
    memo: dict[tuple[tuple[int, ...], int], int] = {}

    def ending(vec: tuple[int, ...], r: int) -> int:
        if vec[r] == 0:
            return 0
        key = (vec, r)
        if key in memo:
            return memo[key]
        smaller = vec[:r] + (vec[r] - 1,) + vec[r + 1:]
        if not any(smaller):
            value = 1
        else:
            value = sum(ending(smaller, s) for s in preds[r])
        memo[key] = value
        return value

    # iterative warm-up by total size keeps recursion depth bounded
    for vec in _contents_below(content.counts):
        for r in range(H.m):
            ending(vec, r)
    return sum(ending(content.counts, r) for r in range(H.m))


def _contents_below(top: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Every vector dominated by ``top``, in nondecreasing total."""
    vecs = list(itertools.product(*(range(c + 1) for c in top)))
    vecs.sort(key=sum)
    return iter(vecs)


def word_count_with_I(
    f: ResidueMatrix, n: int, I: Iterable[int], content: ContentVector
) -> int:
    """Words of the given content whose step ``i`` has ``f = 1`` exactly when ``i`` is in I.

    Forward DP over positions; the state is (letters used so far, last letter).
    """
    I = positions(I)
    if content.m != f.m:
        raise ValueError(f"content has {content.m} residues, f has {f.m}")
    if content.total != n:
        raise ValueError(f"content sums to {content.total}, expected {n}")
    if n == 0 or any(i > n - 1 for i in I):
        return 0
    m = f.m
    step = {True: _transition(f, True), False: _transition(f, False)}
    top = content.counts
    layer: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
    for r in range(m):
        if top[r]:
            used = tuple(1 if s == r else 0 for s in range(m))
            layer[used, r] += 1
    for i in range(1, n):
        nxt_layer: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
        allowed = step[i in I]
        for (used, r), ways in layer.items():
            for s in allowed[r]:
                if used[s] < top[s]:
                    nu = used[:s] + (used[s] + 1,) + used[s + 1:]
                    nxt_layer[nu, s] += ways
        layer = nxt_layer
    return sum(layer.values())


def _periodic_or_raise(spec: RelationSpec) -> PeriodicMod:
    per = as_periodic(spec)
    if per is None:
        raise NotApplicable(f"{type(spec).__name__} relation is not residue-periodic")
    return per


def d_periodic(spec: RelationSpec, n: int, I: Iterable[int] = ()) -> int:
    """d_X(I; n) = (number of admissible residue words) * prod(l_r(n)!)."""
    per = _periodic_or_raise(spec)
    content = canonical_content(per.m, n)
    return word_count_with_I(per.f, n, I, content) * factorial_weight(content)


@dataclass(frozen=True)
class EmptyRow:
    n: int
    content: ContentVector
    words: int
    count: int


def empty_table(spec: RelationSpec, n_max: int) -> list[EmptyRow]:
    """Rows ``n, content, A_H, d_X(empty; n)`` for ``n = 1..n_max``."""
    per = _periodic_or_raise(spec)
    H = ResidueDigraph.from_matrix(per.f)
    rows = []
    for n in range(1, n_max + 1):
        content = canonical_content(per.m, n)
        words = word_count_empty(H, content)
        rows.append(EmptyRow(n, content, words, words * factorial_weight(content)))
    return rows


def residue_word(perm: Iterable[int], m: int) -> tuple[int, ...]:
    return tuple(a % m for a in perm)


# ------------------------------------------------------------ series


@dataclass
class TruncatedSeries:
    """Coefficients of ``F(x; y)`` up to ``x**max_degree``.

    ``coefficients[(n, l)]`` is the coefficient of ``x**n * y**l``; only
    nonzero terms are stored and ``sum(l) == n`` always holds.
    """

    m: int
    max_degree: int
    coefficients: dict[tuple[int, tuple[int, ...]], int]

    def coefficient(self, n: int, content: ContentVector | Iterable[int]) -> int:
        counts = content.counts if isinstance(content, ContentVector) else tuple(content)
        return self.coefficients.get((n, counts), 0)

    def terms(self) -> list[tuple[int, ContentVector, int]]:
        return [
            (n, ContentVector(l), c)
            for (n, l), c in sorted(self.coefficients.items())
        ]


def transfer_series(H: ResidueDigraph, max_degree: int) -> TruncatedSeries:
    """Expand ``x 1^T (I - x M(y))^{-1} 1`` with ``M(y)[r][s] = [r -> s] y_s``.

    Row vectors are multivariate polynomials in ``y``; the first letter's
    weight ``y_{w_1}`` is put in at degree one, then each application of
    ``x M(y)`` appends one letter.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    limits.check_size("series", max_degree, "max_degree")
    m = H.m
    unit = [tuple(1 if k == r else 0 for k in range(m)) for r in range(m)]
    # row[r]: polynomial (monomial -> coefficient) for words ending in r
    row: list[dict[tuple[int, ...], int]] = [{unit[r]: 1} for r in range(m)]
    coeffs: dict[tuple[int, tuple[int, ...]], int] = {}
    for degree in range(1, max_degree + 1):
        if degree > 1:
            nxt: list[dict[tuple[int, ...], int]] = [defaultdict(int) for _ in range(m)]
            for r in range(m):
                for s in range(m):
                    if not H.edges[r][s]:
                        continue
                    for mono, c in row[r].items():
                        grown = mono[:s] + (mono[s] + 1,) + mono[s + 1:]
                        nxt[s][grown] += c
            row = [dict(p) for p in nxt]
        for poly in row:
            for mono, c in poly.items():
                coeffs[degree, mono] = coeffs.get((degree, mono), 0) + c
    return TruncatedSeries(m, max_degree, {k: v for k, v in coeffs.items() if v})
