"""Exact counts of permutations with a prescribed X-descent set.

For a relation X on the positive integers, position ``i`` of a permutation
is an X-descent when ``(pi_i, pi_{i+1})`` lies in X.  ``d_X(I; n)`` counts
the permutations of ``[n]`` whose X-descent set is exactly ``I``.
"""

from .digraph import Digraph
from .errors import (
    BudgetExceeded,
    DiagonalQuery,
    HypothesisFailed,
    NotApplicable,
    NotCertified,
    NotConstant,
    NotTournament,
    ParseError,
    RepeatedLabel,
    SizeLimit,
    XDescentError,
)
from .hampath import (
    TournamentClass,
    classify_tournament_relation,
    count_paths,
    count_paths_signed,
    count_paths_tournament,
    d_empty,
    empty_counts,
)
from .methods import Method, compute, verify
from .oracle import count_exact, full_profile
from .periodic import (
    ContentVector,
    ResidueDigraph,
    TruncatedSeries,
    canonical_content,
    d_periodic,
    transfer_series,
    word_count_empty,
    word_count_with_I,
)
from .recursion import (
    PolynomialInN,
    SubsetSumCounter,
    binomial_count,
    ie_closed_form,
    insertion_count,
    polynomial_profile,
    subset_sum_count,
)
from .relation import (
    Complement,
    DifferenceSet,
    FinitePairs,
    Greater,
    Intersection,
    Less,
    PeriodicMod,
    PropertyCertificate,
    RelationSpec,
    ResidueMatrix,
    Union,
    certify_periodic,
    certify_standardization_invariance,
    certify_tournament,
    contains,
    restriction_digraph,
    xdescent_set,
)
from .successions import (
    SuccessionFamily,
    reverse_succession_free_count,
    succession_free_count,
)

__version__ = "0.1.0"
