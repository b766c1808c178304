"""Finite, evaluable descriptions of a relation X on the positive integers.

A relation is never materialised; every counting routine only asks
``contains(spec, a, b)`` for distinct labels ``a, b <= n``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .digraph import Digraph
from .errors import DiagonalQuery, ParseError, RepeatedLabel
from . import limits


class RelationSpec:
    """Base class; subclasses are frozen dataclasses and therefore hashable."""

    def _member(self, a: int, b: int) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def __contains__(self, pair) -> bool:
        a, b = pair
        return contains(self, a, b)

    def __invert__(self) -> "Complement":
        return Complement(self)

    def __or__(self, other: "RelationSpec") -> "Union":
        return Union((self, other))

    def __and__(self, other: "RelationSpec") -> "Intersection":
        return Intersection((self, other))


@dataclass(frozen=True)
class FinitePairs(RelationSpec):
    pairs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))
        for a, b in self.pairs:
            if a < 1 or b < 1:
                raise ValueError(f"pair {(a, b)} has a non-positive label")

    def _member(self, a, b):
        return (a, b) in self.pairs


@dataclass(frozen=True)
class Greater(RelationSpec):
    """``(a, b)`` in X iff ``a > b``: the classical descents."""

    def _member(self, a, b):
        return a > b


@dataclass(frozen=True)
class Less(RelationSpec):
    """``(a, b)`` in X iff ``a < b``: ascents."""

    def _member(self, a, b):
        return a < b


@dataclass(frozen=True)
class DifferenceSet(RelationSpec):
    """``(a, b)`` in X iff ``b - a`` is one of ``deltas``."""

    deltas: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deltas", frozenset(self.deltas))
        if 0 in self.deltas:
            raise ValueError("deltas must be nonzero")

    def _member(self, a, b):
        return (b - a) in self.deltas


@dataclass(frozen=True)
class ResidueMatrix:
    """A 0/1 function on pairs of residues modulo ``m``."""

    m: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.m < 1:
            raise ValueError("modulus must be positive")
        if len(rows) != self.m or any(len(row) != self.m for row in rows):
            raise ValueError(f"residue matrix must be {self.m}x{self.m}")
        if any(v not in (0, 1) for row in rows for v in row):
            raise ValueError("residue matrix entries must be 0 or 1")

    @classmethod
    def from_rule(cls, m: int, rule: Callable[[int, int], bool]) -> "ResidueMatrix":
        return cls(m, tuple(tuple(int(bool(rule(r, s))) for s in range(m)) for r in range(m)))

    def __call__(self, r: int, s: int) -> int:
        return self.entries[r % self.m][s % self.m]


@dataclass(frozen=True)
class PeriodicMod(RelationSpec):
    """``(a, b)`` in X iff ``f(a mod m, b mod m) = 1``."""

    f: ResidueMatrix

    @property
    def m(self) -> int:
        return self.f.m

    @classmethod
    def from_rule(cls, m: int, rule: Callable[[int, int], bool]) -> "PeriodicMod":
        return cls(ResidueMatrix.from_rule(m, rule))

    def _member(self, a, b):
        return self.f(a, b) == 1


@dataclass(frozen=True)
class Union(RelationSpec):
    parts: tuple[RelationSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def _member(self, a, b):
        return any(p._member(a, b) for p in self.parts)


@dataclass(frozen=True)
class Intersection(RelationSpec):
    """An empty intersection is every off-diagonal pair."""

    parts: tuple[RelationSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def _member(self, a, b):
        return all(p._member(a, b) for p in self.parts)


@dataclass(frozen=True)
class Complement(RelationSpec):
    """Complement relative to the off-diagonal pairs."""

    of: RelationSpec

    def _member(self, a, b):
        return not self.of._member(a, b)


# ---------------------------------------------------------------- membership


def contains(spec: RelationSpec, a: int, b: int) -> bool:
    if a == b:
        raise DiagonalQuery(f"membership of the diagonal pair ({a}, {a}) is undefined")
    return spec._member(a, b)


def xdescent_set(spec: RelationSpec, word: Sequence[int]) -> frozenset[int]:
    """1-based positions ``i`` with ``(word[i], word[i+1])`` in X."""
    if len(set(word)) != len(word):
        raise RepeatedLabel(f"word {list(word)} repeats a label")
    return frozenset(
        i + 1 for i in range(len(word) - 1) if spec._member(word[i], word[i + 1])
    )


def restriction_digraph(spec: RelationSpec, n: int) -> Digraph:
    """G_n(X): edge ``i -> j`` iff ``i != j`` and ``(i, j)`` is not in X."""
    return induced_digraph(spec, range(1, n + 1))


def induced_digraph(spec: RelationSpec, labels: Iterable[int]) -> Digraph:
    """Non-X digraph on an arbitrary label set, relabelled by rank."""
    labels = sorted(labels)
    rows = []
    for a in labels:
        row = 0
        for k, b in enumerate(labels):
            if a != b and not spec._member(a, b):
                row |= 1 << k
        rows.append(row)
    return Digraph(len(labels), tuple(rows))


def positions(I: Iterable[int] | None) -> frozenset[int]:
    """Normalise a position set; positions are 1-based."""
    if I is None:
        return frozenset()
    out = frozenset(int(i) for i in I)
    if any(i < 1 for i in out):
        raise ValueError(f"positions must be >= 1, got {sorted(out)}")
    return out


def check_positions(I: Iterable[int], n: int) -> frozenset[int]:
    """Like :func:`positions` but also insists on ``I`` being inside ``[n-1]``."""
    out = positions(I)
    bad = [i for i in out if i > n - 1]
    if bad:
        raise ValueError(f"positions {sorted(bad)} are outside [1, {n - 1}]")
    return out


def labels_of(S: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(S))
    if len(set(out)) != len(out) or any(a < 1 for a in out):
        raise ValueError("labels must be distinct positive integers")
    return out


def all_position_sets(n: int) -> list[frozenset[int]]:
    """Every ``I`` inside ``[n-1]``, ordered by size and then lexicographically."""
    base = range(1, n)
    return [
        frozenset(c)
        for k in range(n)
        for c in itertools.combinations(base, k)
    ]


def is_order_invariant(spec: RelationSpec) -> bool:
    """True when membership depends only on the relative order of ``a`` and ``b``.

    Such relations are standardization-invariant for every ``n``; this is a
    syntactic sufficient condition, not a decision procedure.
    """
    if isinstance(spec, (Greater, Less)):
        return True
    if isinstance(spec, FinitePairs):
        return not spec.pairs
    if isinstance(spec, DifferenceSet):
        return not spec.deltas
    if isinstance(spec, PeriodicMod):
        vals = {v for row in spec.f.entries for v in row}
        return len(vals) == 1
    if isinstance(spec, Complement):
        return is_order_invariant(spec.of)
    if isinstance(spec, (Union, Intersection)):
        return all(is_order_invariant(p) for p in spec.parts)
    return False


def as_periodic(spec: RelationSpec) -> PeriodicMod | None:
    """Rewrite ``spec`` as a single :class:`PeriodicMod`, or return None.

    Boolean combinations of periodic relations are periodic modulo the lcm.
    Comparators and difference sets are not periodic and give None.
    """
    if isinstance(spec, PeriodicMod):
        return spec
    if isinstance(spec, FinitePairs) and not spec.pairs:
        return PeriodicMod(ResidueMatrix(1, ((0,),)))
    if isinstance(spec, DifferenceSet) and not spec.deltas:
        return PeriodicMod(ResidueMatrix(1, ((0,),)))
    if isinstance(spec, Complement):
        inner = as_periodic(spec.of)
        if inner is None:
            return None
        return PeriodicMod.from_rule(inner.m, lambda r, s: not inner.f(r, s))
    if isinstance(spec, (Union, Intersection)):
        inner = [as_periodic(p) for p in spec.parts]
        if any(p is None for p in inner):
            return None
        m = math.lcm(*(p.m for p in inner)) if inner else 1
        agg = any if isinstance(spec, Union) else all
        return PeriodicMod.from_rule(m, lambda r, s: agg(p.f(r, s) for p in inner))
    return None


# ------------------------------------------------------------ certification


class Property(str, Enum):
    STANDARDIZATION_INVARIANT = "StandardizationInvariant"
    TOURNAMENT = "Tournament"
    PERIODIC_CONSISTENT = "PeriodicConsistent"


@dataclass(frozen=True)
class PropertyCertificate:
    """Outcome of a bounded check.  ``witness`` is set whenever ``holds`` is False."""

    property: Property
    spec: RelationSpec
    verified_up_to: int
    holds: bool
    witness: object = field(default=None)

    def __bool__(self) -> bool:
        return self.holds


def certify_standardization_invariance(spec: RelationSpec, n_max: int = 7) -> PropertyCertificate:
    """Check ``d_X(I; S) == d_X(I; |S|)`` for every ``S`` inside ``[n_max]``.

    The witness on failure is ``(S, I)`` with ``S`` a tuple of labels.
    """
    from .oracle import full_profile

    if n_max < 1:
        raise ValueError("n_max must be positive")
    work = sum(math.comb(n_max, k) * math.factorial(k) * k for k in range(1, n_max + 1))
    limits.check_work(work, f"standardization certificate up to {n_max}")
    for k in range(1, n_max + 1):
        reference = full_profile(spec, range(1, k + 1))
        for S in itertools.combinations(range(1, n_max + 1), k):
            if S[-1] == k:
                continue  # S == [k]
            profile = full_profile(spec, S)
            for I in all_position_sets(k):
                if profile.get(I, 0) != reference.get(I, 0):
                    return PropertyCertificate(
                        Property.STANDARDIZATION_INVARIANT, spec, n_max, False, (S, I)
                    )
    return PropertyCertificate(Property.STANDARDIZATION_INVARIANT, spec, n_max, True)


def certify_tournament(spec: RelationSpec, n_max: int) -> PropertyCertificate:
    """Is G_n(X) a tournament for every ``n <= n_max``?  Witness: a pair ``(i, j)``."""
    # G_n is the induced subgraph of G_{n_max}, so the largest n decides.
    bad = restriction_digraph(spec, n_max).tournament_violation()
    return PropertyCertificate(Property.TOURNAMENT, spec, n_max, bad is None, bad)


def certify_periodic(spec: RelationSpec, m: int, n_max: int) -> PropertyCertificate:
    """Is membership on ``[n_max]`` a function of residues modulo ``m``?

    Witness on failure: two pairs with equal residues and different membership.
    """
    seen: dict[tuple[int, int], tuple[int, int, bool]] = {}
    for a in range(1, n_max + 1):
        for b in range(1, n_max + 1):
            if a == b:
                continue
            key = (a % m, b % m)
            val = spec._member(a, b)
            if key in seen and seen[key][2] != val:
                first = seen[key]
                return PropertyCertificate(
                    Property.PERIODIC_CONSISTENT, spec, n_max, False,
                    ((first[0], first[1]), (a, b)),
                )
            seen.setdefault(key, (a, b, val))
    return PropertyCertificate(Property.PERIODIC_CONSISTENT, spec, n_max, True)


# ---------------------------------------------------------------- JSON I/O


def from_json(obj) -> RelationSpec:
    """Build a spec from the decoded JSON relation format."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("relation must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "pairs":
            return FinitePairs(frozenset((int(a), int(b)) for a, b in obj.get("pairs", [])))
        if kind == "greater":
            return Greater()
        if kind == "less":
            return Less()
        if kind == "diff":
            return DifferenceSet(frozenset(int(d) for d in obj["deltas"]))
        if kind == "periodic":
            return PeriodicMod(ResidueMatrix(int(obj["m"]), tuple(tuple(r) for r in obj["f"])))
        if kind == "union":
            return Union(tuple(from_json(p) for p in obj["parts"]))
        if kind == "intersection":
            return Intersection(tuple(from_json(p) for p in obj["parts"]))
        if kind == "complement":
            return Complement(from_json(obj["of"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind!r} relation: {exc}") from None
    raise ParseError(f"unknown relation kind {kind!r}")


def to_json(spec: RelationSpec) -> dict:
    if isinstance(spec, FinitePairs):
        return {"kind": "pairs", "pairs": [list(p) for p in sorted(spec.pairs)]}
    if isinstance(spec, Greater):
        return {"kind": "greater"}
    if isinstance(spec, Less):
        return {"kind": "less"}
    if isinstance(spec, DifferenceSet):
        return {"kind": "diff", "deltas": sorted(spec.deltas)}
    if isinstance(spec, PeriodicMod):
        return {"kind": "periodic", "m": spec.m, "f": [list(r) for r in spec.f.entries]}
    if isinstance(spec, Union):
        return {"kind": "union", "parts": [to_json(p) for p in spec.parts]}
    if isinstance(spec, Intersection):
        return {"kind": "intersection", "parts": [to_json(p) for p in spec.parts]}
    if isinstance(spec, Complement):
        return {"kind": "complement", "of": to_json(spec.of)}
    raise TypeError(f"cannot serialise {type(spec).__name__}")


def loads(text: str) -> RelationSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json(obj)


def load(path: str | Path) -> RelationSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text)


def dumps(spec: RelationSpec) -> str:
    return json.dumps(to_json(spec))
