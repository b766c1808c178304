"""Closed forms for succession-free and reverse-succession-free permutations."""

from __future__ import annotations

import math
from enum import Enum
from itertools import permutations

from .relation import DifferenceSet, xdescent_set


class SuccessionFamily(Enum):
    FORWARD = 1   # pi_{i+1} = pi_i + 1
    REVERSE = -1  # pi_{i+1} = pi_i - 1

    def spec(self) -> DifferenceSet:
        return DifferenceSet(frozenset({self.value}))

    @classmethod
    def of(cls, spec) -> "SuccessionFamily | None":
        """The family ``spec`` is exactly, or None."""
        if isinstance(spec, DifferenceSet) and len(spec.deltas) == 1:
            (d,) = spec.deltas
            if d in (1, -1):
                return cls(d)
        return None


def succession_free_count(n: int) -> int:
    """sum_{k=0}^{n-1} (-1)^k C(n-1, k) (n-k)!"""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(
        (-1) ** k * math.comb(n - 1, k) * math.factorial(n - k) for k in range(n)
    )


def reverse_succession_free_count(n: int) -> int:
    # value complement pi -> n+1-pi swaps the two kinds of succession
    return succession_free_count(n)


def complement_map(perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(perm)
    return tuple(n + 1 - a for a in perm)


def verify_complement_bijection(n: int) -> bool:
    """Check on S_n that the value complement is an involution exchanging
    forward and reverse succession positions one for one."""
    if n > 7:
        raise ValueError("bijection check is exhaustive; keep n <= 7")
    fwd = SuccessionFamily.FORWARD.spec()
    rev = SuccessionFamily.REVERSE.spec()
    for perm in permutations(range(1, n + 1)):
        image = complement_map(perm)
        if complement_map(image) != perm:
            return False
        if xdescent_set(fwd, perm) != xdescent_set(rev, image):
            return False
        if xdescent_set(rev, perm) != xdescent_set(fwd, image):
            return False
    return True
