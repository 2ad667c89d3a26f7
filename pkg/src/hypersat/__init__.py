"""Satisfiability, implication checking, and model evaluation for
temporal formulas quantified over execution traces."""

import sys as _sys

# Long conjunction chains (correspondence encodings, unrollings) are walked
# recursively; the default limit is too tight for them.
_sys.setrecursionlimit(max(_sys.getrecursionlimit(), 20_000))

from .errors import (
    AlphabetMismatch,
    BlowupExceeded as BlowupExceededError,
    HypersatError,
    InternalError,
    InvalidInstance,
    NotASolution,
    ParseError,
    PeriodGuardExceeded,
    WellFormednessError,
    WrongFragment,
)
from .fragments import (
    ExistsForall,
    ExistsStar,
    ForallExists,
    ForallStar,
    FragmentClass,
    MultiAlternation,
    classify,
)
from .implication import (
    Fails,
    Holds,
    ImplicationVerdict,
    Unsupported,
    check_equivalence,
    check_implication,
)
from .ltl_engine import (
    GeneralizedBuchiAutomaton,
    build_automaton,
    check_emptiness,
    ltl_sat,
)
from .models import (
    TraceAssignment,
    TraceSet,
    UltimatelyPeriodicTrace,
    evaluate_hyperltl,
    evaluate_ltl,
    extract_model,
    format_trace,
    format_trace_set,
    make_trace,
    parse_trace,
    parse_trace_set,
)
from .pcp import (
    PairAlphabet,
    PcpInstance,
    encode_pcp,
    encode_solution_traceset,
)
from .reductions import (
    LtlReduction,
    Substitution,
    drop_quantifiers,
    project,
    substituted_conjuncts,
    unroll_universals,
    zip_exists,
    zip_traces,
)
from .solver import (
    BlowupExceeded,
    HyperSatResult,
    Sat,
    SolveStats,
    SolverOptions,
    Unsat,
    UnsupportedFragment,
    hyper_sat,
    solve,
)
from .syntax import (
    And,
    Atom,
    Const,
    Eventually,
    FALSE,
    Formula,
    Globally,
    HyperFormula,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Release,
    TRUE,
    Until,
    WeakUntil,
    check_well_formed,
    desugar,
    free_trace_variables,
    parse_hyperltl,
    render,
    to_nnf,
)

__all__ = [name for name in dir() if not name.startswith("_")]
