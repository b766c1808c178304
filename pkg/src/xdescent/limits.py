"""Size caps and work budgets, overridable through ``XDESCENT_BUDGET``.

The variable holds comma separated ``key=value`` pairs, for example
``XDESCENT_BUDGET="oracle=11,signed=10"``.  A bare integer sets ``work``.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded, ParseError, SizeLimit

DEFAULTS = {
    "oracle": 10,       # permutation enumeration, |S| <= oracle
    "subset": 14,       # subset-sum memo ambient size
    "hampath": 24,      # bitmask DP
    "tournament": 10,   # tournament cycle formula
    "signed": 9,        # signed cycle formula
    "series": 12,       # truncated transfer series degree
    "work": 50_000_000, # generic elementary-step budget (certification, experiments)
}


def _parse(raw: str) -> dict[str, int]:
    raw = raw.strip()
    if not raw:
        return {}
    if raw.isdigit():
        return {"work": int(raw)}
    out = {}
    for item in raw.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULTS:
            raise ParseError(f"bad XDESCENT_BUDGET entry {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise ParseError(f"bad XDESCENT_BUDGET value {item!r}") from None
    return out


def limit(name: str) -> int:
    """Current value of the named cap (environment read on every call)."""
    overrides = _parse(os.environ.get("XDESCENT_BUDGET", ""))
    return overrides.get(name, DEFAULTS[name])


def check_size(name: str, size: int, what: str = "n") -> None:
    cap = limit(name)
    if size > cap:
        raise SizeLimit(f"{what}={size} exceeds the {name} limit {cap}")


def check_work(amount: int, what: str) -> None:
    cap = limit("work")
    if amount > cap:
        raise BudgetExceeded(f"{what} needs ~{amount} steps, budget is {cap}")
