"""Recursions and closed forms for d_X(I; n) built on the descent-free counts.

Four routes to the same number:

* :func:`subset_sum_count` peels off the last prescribed descent and sums over
  which labels land in the prefix.  Valid for every relation.
* :func:`binomial_count` and :func:`ie_closed_form` assume the count depends
  only on the number of labels, which collapses the subset sum to binomials.
* :func:`insertion_count` deletes the largest label; it needs the largest
  label to behave uniformly (``(n+1, i)`` in X, ``(i, n+1)`` not in X).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import limits
from .errors import HypothesisFailed, NotCertified, NotConstant
from .hampath import count_paths, d_empty
from .relation import (
    Property,
    PropertyCertificate,
    RelationSpec,
    induced_digraph,
    labels_of,
    positions,
)


def _drop_max(I: frozenset[int]) -> tuple[int, frozenset[int]]:
    m = max(I)
    return m, I - {m}


# ---------------------------------------------------------------- subset sum


class SubsetSumCounter:
    """Memoised subset-sum recursion over one ambient label set.

    Sub-label-sets are bitmasks over ``labels``; the memo is keyed on
    ``(mask, I)`` and may grow to ``2**n * 2**n`` entries in the worst case,
    hence the ambient cap.
    """

    def __init__(self, spec: RelationSpec, labels: Iterable[int]):
        self.spec = spec
        self.labels = labels_of(labels)
        limits.check_size("subset", len(self.labels), "|S|")
        self._empty: dict[int, int] = {0: 1}
        self._memo: dict[tuple[int, frozenset[int]], int] = {}

    def _labels(self, mask: int) -> list[int]:
        return [a for k, a in enumerate(self.labels) if mask >> k & 1]

    def _descent_free(self, mask: int) -> int:
        got = self._empty.get(mask)
        if got is None:
            got = self._empty[mask] = count_paths(
                induced_digraph(self.spec, self._labels(mask))
            )
        return got

    def _count(self, mask: int, I: frozenset[int]) -> int:
        if not I:
            return self._descent_free(mask)
        size = bin(mask).count("1")
        m, rest = _drop_max(I)
        if m > size - 1:
            return 0
        key = (mask, I)
        got = self._memo.get(key)
        if got is not None:
            return got
        bits = [1 << k for k in range(len(self.labels)) if mask >> k & 1]
        total = 0
        for chosen in itertools.combinations(bits, m):
            prefix = sum(chosen)
            left = self._count(prefix, rest)
            if left:
                total += left * self._descent_free(mask ^ prefix)
        total -= self._count(mask, rest)
        self._memo[key] = total
        return total

    def count(self, I: Iterable[int] = (), S: Iterable[int] | None = None) -> int:
        """d_X(I; S) for ``S`` inside the ambient labels (default: all of them)."""
        if S is None:
            mask = (1 << len(self.labels)) - 1
        else:
            index = {a: k for k, a in enumerate(self.labels)}
            mask = sum(1 << index[a] for a in labels_of(S))
        return self._count(mask, positions(I))


def subset_sum_count(spec: RelationSpec, S: Iterable[int], I: Iterable[int] = ()) -> int:
    """d_X(I; S) by the subset-sum recursion, valid for any relation."""
    return SubsetSumCounter(spec, S).count(I)


# ------------------------------------------------- standardization-invariant


def _require_invariance(spec, certificate: PropertyCertificate | None, waive: bool) -> None:
    if waive:
        return
    if certificate is None:
        raise NotCertified("standardization invariance is neither certified nor waived")
    if certificate.property is not Property.STANDARDIZATION_INVARIANT:
        raise NotCertified(f"certificate is for {certificate.property.value}")
    if certificate.spec != spec:
        raise NotCertified("certificate was issued for a different relation")
    if not certificate.holds:
        raise NotCertified(f"standardization invariance fails: witness {certificate.witness}")


def _check_empty_counts(empty_counts: Sequence[int], n: int) -> None:
    if len(empty_counts) <= n:
        raise ValueError(f"empty_counts must cover sizes 0..{n}, got {len(empty_counts)} values")


def binomial_count(
    spec: RelationSpec,
    n: int,
    I: Iterable[int],
    empty_counts: Sequence[int],
    certificate: PropertyCertificate | None = None,
    waive: bool = False,
) -> int:
    """d_X(I; n) = C(n, m) d_X(I-; m) d_X(empty; n-m) - d_X(I-; n), recursively.

    ``empty_counts[k]`` must be d_X(empty; k) for ``1 <= k <= n``; index 0 is
    the empty arrangement and should be 1.
    """
    _require_invariance(spec, certificate, waive)
    _check_empty_counts(empty_counts, n)

    @lru_cache(maxsize=None)
    def d(J: frozenset[int], size: int) -> int:
        if not J:
            return empty_counts[size]
        m, rest = _drop_max(J)
        if m > size - 1:
            return 0
        return math.comb(size, m) * d(rest, m) * empty_counts[size - m] - d(rest, size)

    return d(positions(I), n)


def ie_closed_form(
    spec: RelationSpec,
    n: int,
    I: Iterable[int],
    empty_counts: Sequence[int],
    certificate: PropertyCertificate | None = None,
    waive: bool = False,
) -> int:
    """Signed sum over sub-selections of the prescribed positions.

    Each selection ``p_1 < ... < p_r`` contributes
    ``(-1)**(k-r) * C(n, p_r) C(p_r, p_{r-1}) ... C(p_2, p_1)`` times the
    descent-free counts of the gaps ``p_1, p_2 - p_1, ..., n - p_r``.
    """
    _require_invariance(spec, certificate, waive)
    _check_empty_counts(empty_counts, n)
    pos = sorted(positions(I))
    if pos and pos[-1] > n:
        return 0
    k = len(pos)
    total = 0
    for r in range(k + 1):
        for chosen in itertools.combinations(pos, r):
            cuts = (0,) + chosen + (n,)
            term = 1
            for lo, hi in zip(cuts[1:-1], cuts[2:]):
                term *= math.comb(hi, lo)
            for lo, hi in zip(cuts, cuts[1:]):
                term *= empty_counts[hi - lo]
            total += -term if (k - r) % 2 else term
    return total


# ----------------------------------------------------------------- insertion


def check_insertion_hypothesis(spec: RelationSpec, n: int, base: int = 1) -> None:
    """Raise :class:`HypothesisFailed` unless every step from ``base`` up to ``n`` qualifies."""
    for top in range(base + 1, n + 1):
        for i in range(1, top):
            if not spec._member(top, i):
                raise HypothesisFailed(f"({top}, {i}) is not in X", (top, i))
            if spec._member(i, top):
                raise HypothesisFailed(f"({i}, {top}) is in X", (i, top))


def minimal_insertion_base(spec: RelationSpec, n: int) -> int:
    """Smallest ``base`` for which :func:`check_insertion_hypothesis` passes."""
    for top in range(n, 1, -1):
        try:
            check_insertion_hypothesis(spec, top, top - 1)
        except HypothesisFailed:
            return top
    return 1


def insertion_count(spec: RelationSpec, n: int, I: Iterable[int], base: int = 1) -> int:
    """d_X(I; n) by repeatedly removing the largest label.

    Cancellation free.  The hypothesis is checked for every size above
    ``base``; arrangements of ``[base]`` are counted by brute force.  With
    ``base == 1`` the hypothesis at all sizes forces X to agree with the
    classical descent relation on ``[n]``.
    """
    from .oracle import full_profile

    if n < 1 or base < 1:
        raise ValueError("n and base must be positive")
    check_insertion_hypothesis(spec, n, base)
    base = min(base, n)
    bottom = full_profile(spec, range(1, base + 1))

    @lru_cache(maxsize=None)
    def d(J: frozenset[int], size: int) -> int:
        if J and max(J) > size - 1:
            return 0
        if size == base:
            return bottom.get(J, 0)
        prev = size - 1
        js = sorted(J)
        total = d(J, prev)
        for t, j in enumerate(js):
            if j - 1 in J:
                continue  # j not in I'
            head = js[:t]
            tail = [x - 1 for x in js[t + 1:]]
            total += d(frozenset(x for x in head + tail if x), prev)
            if j != 1:
                total += d(frozenset(head + [j - 1] + tail), prev)
        return total

    return d(positions(I), n)


# ------------------------------------------------------------- polynomiality


@dataclass(frozen=True)
class PolynomialInN:
    """Exact polynomial in ``n``, constant term first, trusted for ``n >= valid_from``."""

    coefficients: tuple[Fraction, ...]
    valid_from: int

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coefficients) if c]
        return nz[-1] if nz else -1

    def evaluate(self, n: int) -> int:
        value = sum(c * n**k for k, c in enumerate(self.coefficients))
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral value {value} at n={n}")
        return int(value)

    __call__ = evaluate

    def __str__(self) -> str:
        terms = [f"({c})*n^{k}" for k, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _binomial_in_n(p: int) -> list[Fraction]:
    """C(n, p) as a polynomial in n."""
    poly = [Fraction(1)]
    for i in range(p):
        poly = _poly_mul(poly, [Fraction(-i), Fraction(1)])
    scale = math.factorial(p)
    return [c / scale for c in poly]


def polynomial_profile(
    spec: RelationSpec,
    I: Iterable[int],
    c: int,
    certificate: PropertyCertificate | None = None,
    waive: bool = False,
    window: int = 8,
) -> PolynomialInN:
    """The polynomial n -> d_X(I; n) when d_X(empty; n) == c for all n.

    Only the last gap ``n - p_r`` depends on ``n``; it is filled with ``c``.
    At ``n = max(I)`` the true gap is empty (count 1), so the polynomial is
    trusted from ``max(I)`` when ``c == 1`` and from ``max(I) + 1`` otherwise.
    """
    _require_invariance(spec, certificate, waive)
    for k in range(1, window + 1):
        got = d_empty(spec, k)
        if got != c:
            raise NotConstant(f"d_X(empty; {k}) = {got}, expected {c}")
    pos = sorted(positions(I))
    k = len(pos)
    if not pos:
        return PolynomialInN((Fraction(c),), 1)
    acc = [Fraction(0)] * (pos[-1] + 1)
    for r in range(k + 1):
        for chosen in itertools.combinations(pos, r):
            const = Fraction(c) ** (r + 1)
            for lo, hi in zip(chosen, chosen[1:]):
                const *= math.comb(hi, lo)
            if (k - r) % 2:
                const = -const
            lead = _binomial_in_n(chosen[-1]) if chosen else [Fraction(1)]
            for d, coef in enumerate(lead):
                acc[d] += const * coef
    while len(acc) > 1 and not acc[-1]:
        acc.pop()
    valid_from = pos[-1] if c == 1 else pos[-1] + 1
    return PolynomialInN(tuple(acc), valid_from)
