from pathlib import Path

import pytest

from xdescent import (
    Complement,
    DifferenceSet,
    FinitePairs,
    Greater,
    Intersection,
    Less,
    PeriodicMod,
    Union,
)

RELATIONS = Path(__file__).resolve().parent.parent / "relations"

MOD3_SUCC = PeriodicMod.from_rule(3, lambda r, s: s == (r + 1) % 3)
SAME_PARITY = PeriodicMod.from_rule(2, lambda r, s: r == s)
EVEN_ODD = PeriodicMod.from_rule(2, lambda r, s: r == 0 and s == 1)

BATTERY = {
    "greater": Greater(),
    "less": Less(),
    "succ": DifferenceSet(frozenset({1})),
    "revsucc": DifferenceSet(frozenset({-1})),
    "diff12": DifferenceSet(frozenset({1, 2})),
    "diff2m3": DifferenceSet(frozenset({2, -3})),
    "evenodd": EVEN_ODD,
    "same_parity": SAME_PARITY,
    "mod3succ": MOD3_SUCC,
    "pairs12": FinitePairs(frozenset({(1, 2)})),
    "pairs_mixed": FinitePairs(frozenset({(2, 1), (3, 5), (4, 2), (6, 3)})),
    "not_succ": Complement(DifferenceSet(frozenset({1}))),
    "not_mod3": Complement(MOD3_SUCC),
    "greater_or_diff2": Union((Greater(), DifferenceSet(frozenset({2})))),
    "less_and_same_parity": Intersection((Less(), SAME_PARITY)),
}


@pytest.fixture(params=sorted(BATTERY), ids=sorted(BATTERY))
def battery_spec(request):
    return BATTERY[request.param]


@pytest.fixture
def relations_dir():
    return RELATIONS


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
