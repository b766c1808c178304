"""Method selection, applicability checks and cross-method verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable

from . import limits
from .errors import NotApplicable, SizeLimit, XDescentError
from .hampath import d_empty, empty_counts
from .oracle import count_exact, full_profile
from .periodic import d_periodic
from .recursion import (
    SubsetSumCounter,
    binomial_count,
    ie_closed_form,
    insertion_count,
    minimal_insertion_base,
)
from .relation import (
    RelationSpec,
    all_position_sets,
    as_periodic,
    certify_standardization_invariance,
    is_order_invariant,
    positions,
)
from .successions import SuccessionFamily, succession_free_count

# binomial / ie need a certificate covering all S inside [n]; beyond this
# size only relations that are invariant by construction qualify
CERTIFY_MAX = 8
# insertion recursion may start from a brute-forced base of at most this size
INSERTION_BASE_MAX = 4


class Method(str, Enum):
    AUTO = "auto"
    ORACLE = "oracle"
    SUBSET = "subset"
    BINOMIAL = "binomial"
    IE = "ie"
    INSERTION = "insertion"
    HAMPATH = "hampath"
    PERIODIC = "periodic"
    SUCCESSION = "succession"


# cheapest first
AUTO_ORDER = (
    Method.SUCCESSION,
    Method.PERIODIC,
    Method.BINOMIAL,
    Method.HAMPATH,
    Method.INSERTION,
    Method.SUBSET,
    Method.ORACLE,
)

# methods whose only precondition beyond I is a size cap
_SIZE_CAPS = {Method.ORACLE: "oracle", Method.SUBSET: "subset", Method.HAMPATH: "hampath"}

CONCRETE = tuple(m for m in Method if m is not Method.AUTO)


@lru_cache(maxsize=256)
def _certificate(spec: RelationSpec, n: int):
    return certify_standardization_invariance(spec, n)


def _invariance_reason(spec: RelationSpec, n: int) -> str | None:
    if is_order_invariant(spec):
        return None
    if n > CERTIFY_MAX:
        return f"standardization invariance is only certified up to n={CERTIFY_MAX}"
    cert = _certificate(spec, max(n, 1))
    if not cert.holds:
        S, I = cert.witness
        return f"not standardization-invariant (witness S={list(S)}, I={sorted(I)})"
    return None


def why_not(spec: RelationSpec, n: int, I: Iterable[int], method: Method) -> str | None:
    """None if ``method`` applies to ``(spec, n, I)``, else the failed precondition."""
    I = positions(I)
    method = Method(method)
    if method is Method.ORACLE:
        cap = limits.limit("oracle")
        return None if n <= cap else f"n={n} exceeds the oracle limit {cap}"
    if method is Method.SUBSET:
        cap = limits.limit("subset")
        return None if n <= cap else f"n={n} exceeds the subset-sum limit {cap}"
    if method in (Method.BINOMIAL, Method.IE):
        return _invariance_reason(spec, n)
    if method is Method.INSERTION:
        base = minimal_insertion_base(spec, n)
        if base > INSERTION_BASE_MAX or (base >= n > 1):
            return f"largest-label hypothesis fails at size {base}"
        return None
    if method is Method.HAMPATH:
        if I:
            return "Hamiltonian-path counting only gives I = empty"
        cap = limits.limit("hampath")
        return None if n <= cap else f"n={n} exceeds the hampath limit {cap}"
    if method is Method.PERIODIC:
        return None if as_periodic(spec) is not None else "relation is not residue-periodic"
    if method is Method.SUCCESSION:
        if SuccessionFamily.of(spec) is None:
            return "relation is not the succession or reverse-succession relation"
        return "closed form only covers I = empty" if I else None
    raise ValueError(f"no applicability rule for {method}")


def _waiver(spec: RelationSpec, n: int):
    if is_order_invariant(spec):
        return {"waive": True}
    return {"certificate": _certificate(spec, max(n, 1))}


def _run(spec: RelationSpec, n: int, I: frozenset[int], method: Method) -> int:
    if method is Method.ORACLE:
        return count_exact(spec, range(1, n + 1), I)
    if method is Method.SUBSET:
        return SubsetSumCounter(spec, range(1, n + 1)).count(I)
    if method is Method.BINOMIAL:
        return binomial_count(spec, n, I, empty_counts(spec, n), **_waiver(spec, n))
    if method is Method.IE:
        return ie_closed_form(spec, n, I, empty_counts(spec, n), **_waiver(spec, n))
    if method is Method.INSERTION:
        return insertion_count(spec, n, I, minimal_insertion_base(spec, n))
    if method is Method.HAMPATH:
        return d_empty(spec, n)
    if method is Method.PERIODIC:
        return d_periodic(spec, n, I)
    if method is Method.SUCCESSION:
        return succession_free_count(n)
    raise ValueError(f"cannot run {method}")


def compute(
    spec: RelationSpec, n: int, I: Iterable[int] = (), method: Method | str = Method.AUTO
) -> tuple[int, Method]:
    """Return ``(d_X(I; n), method actually used)``.

    Raises :class:`NotApplicable` naming the failed precondition when an
    explicit method does not apply.
    """
    if n < 1:
        raise ValueError("n must be positive")
    I = positions(I)
    method = Method(method)
    if method is Method.AUTO:
        for candidate in AUTO_ORDER:
            if why_not(spec, n, I, candidate) is None:
                return _run(spec, n, I, candidate), candidate
        raise NotApplicable(f"no method applies to n={n}")
    reason = why_not(spec, n, I, method)
    if reason is not None and method in _SIZE_CAPS and n > limits.limit(_SIZE_CAPS[method]) and not (
        method is Method.HAMPATH and I
    ):
        raise SizeLimit(f"{method.value}: {reason}")
    if reason is not None:
        raise NotApplicable(f"{method.value}: {reason}")
    return _run(spec, n, I, method), method


# --------------------------------------------------------------- verification


@dataclass
class VerificationRow:
    n: int
    I: frozenset[int]
    results: dict[Method, int]

    @property
    def agrees(self) -> bool:
        return len(set(self.results.values())) <= 1


@dataclass
class VerificationReport:
    n_max: int
    rows: list[VerificationRow] = field(default_factory=list)
    skipped: dict[Method, str] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return not self.errors and all(r.agrees for r in self.rows)

    @property
    def first_discrepancy(self) -> VerificationRow | None:
        return next((r for r in self.rows if not r.agrees), None)

    def empty_column(self) -> list[int]:
        """d_X(empty; n) for n = 1..n_max as seen by the oracle."""
        return [r.results[Method.ORACLE] for r in self.rows if not r.I]


def verify(spec: RelationSpec, n_max: int = 6, methods: Iterable[Method] = CONCRETE) -> VerificationReport:
    """Run every applicable method on every ``(n, I)`` with ``n <= n_max``."""
    methods = [Method(m) for m in methods if Method(m) is not Method.AUTO]
    if Method.ORACLE not in methods:
        methods.insert(0, Method.ORACLE)
    report = VerificationReport(n_max)
    for n in range(1, n_max + 1):
        profile = full_profile(spec, range(1, n + 1))
        counter = SubsetSumCounter(spec, range(1, n + 1)) if Method.SUBSET in methods else None
        for I in all_position_sets(n):
            results = {Method.ORACLE: profile.get(I, 0)}
            for method in methods:
                if method is Method.ORACLE:
                    continue
                reason = why_not(spec, n, I, method)
                if reason is not None:
                    report.skipped.setdefault(method, reason)
                    continue
                try:
                    if method is Method.SUBSET:
                        results[method] = counter.count(I)
                    else:
                        results[method] = _run(spec, n, I, method)
                except XDescentError as exc:
                    report.errors.append(f"n={n} I={sorted(I)} {method.value}: {exc}")
            report.rows.append(VerificationRow(n, I, results))
    return report
