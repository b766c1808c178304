"""Exception hierarchy shared by every counting method."""


class XDescentError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(XDescentError, ValueError):
    """A relation file, digraph file or position list could not be parsed."""


class DiagonalQuery(XDescentError, ValueError):
    """Membership was queried for a pair (a, a)."""


class RepeatedLabel(XDescentError, ValueError):
    """A word handed to the descent machinery repeats a label."""


class SizeLimit(XDescentError):
    """The instance exceeds the size cap of the requested method."""


class BudgetExceeded(XDescentError):
    """The total amount of work would exceed the configured budget."""


class NotApplicable(XDescentError):
    """The requested method's precondition fails for this relation."""


class NotCertified(NotApplicable):
    """Standardization invariance was neither certified nor waived."""


class HypothesisFailed(NotApplicable):
    """The largest-label hypothesis of the insertion recursion fails.

    ``pair`` holds the offending ordered pair.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotTournament(NotApplicable):
    """A tournament-only formula was handed a digraph that is not one."""


class NotConstant(NotApplicable):
    """d_X(empty; n) varies over the verification window."""
