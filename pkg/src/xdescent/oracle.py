"""Brute-force ground truth: enumerate every arrangement of the labels.

Deliberately naive.  Every faster method in the package is tested against it.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import permutations
from typing import Iterable

from . import limits
from .relation import RelationSpec, labels_of, positions


def _pair_table(spec: RelationSpec, S: tuple[int, ...]) -> dict[tuple[int, int], bool]:
    return {(a, b): spec._member(a, b) for a in S for b in S if a != b}


def _descent_mask(word: tuple[int, ...], table) -> int:
    mask = 0
    for i in range(len(word) - 1):
        if table[word[i], word[i + 1]]:
            mask |= 1 << i
    return mask


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def count_exact(spec: RelationSpec, S: Iterable[int], I: Iterable[int] = ()) -> int:
    """Number of arrangements of ``S`` whose X-descent set is exactly ``I``.

    Positions outside ``[|S|-1]`` can never be descents, so such an ``I``
    yields 0.
    """
    S = labels_of(S)
    I = positions(I)
    limits.check_size("oracle", len(S), "|S|")
    if any(i > len(S) - 1 for i in I):
        return 0
    target = sum(1 << (i - 1) for i in I)
    table = _pair_table(spec, S)
    return sum(1 for w in permutations(S) if _descent_mask(w, table) == target)


def full_profile(spec: RelationSpec, S: Iterable[int]) -> dict[frozenset[int], int]:
    """Map every realised X-descent set on ``S`` to its count.

    Sets that no arrangement realises are absent; the values sum to ``|S|!``.
    """
    S = labels_of(S)
    limits.check_size("oracle", len(S), "|S|")
    table = _pair_table(spec, S)
    tally = Counter(_descent_mask(w, table) for w in permutations(S))
    profile = {_mask_to_set(mask): c for mask, c in tally.items()}
    assert sum(profile.values()) == math.factorial(len(S))
    return profile
