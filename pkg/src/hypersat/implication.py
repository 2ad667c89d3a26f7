"""Implication and equivalence checking between alternation-free formulas.

An implication fails exactly when some non-empty trace set satisfies the
antecedent but not the consequent.  That search is itself a satisfiability
question: conjoin the antecedent body with the negated consequent body and
quantify so that the antecedent keeps its force while the consequent is
refuted.  Per quantifier shape of (antecedent, consequent):

    forall => forall:  exists(consequent vars) forall(antecedent vars)
    exists => exists:  exists(antecedent vars) forall(consequent vars)
    forall => exists:  forall(both)
    exists => forall:  exists(both)

Each lands in a decidable fragment, so the solver settles it; a satisfying
model is a countermodel to the implication.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .fragments import ExistsStar, ForallStar, classify
from .models import TraceSet
from .solver import (
    BlowupExceeded,
    Sat,
    SolverOptions,
    Unsat,
    hyper_sat,
)
from .syntax import (
    And,
    EXISTS,
    FORALL,
    HyperFormula,
    Not,
    check_well_formed,
    rename_trace_variable,
)


class ImplicationVerdict:
    __slots__ = ()


@dataclass(frozen=True)
class Holds(ImplicationVerdict):
    pass


@dataclass(frozen=True)
class Fails(ImplicationVerdict):
    countermodel: TraceSet


@dataclass(frozen=True)
class Unsupported(ImplicationVerdict):
    message: str


def _rename_apart(formula: HyperFormula, taken: set[str]) -> HyperFormula:
    body = formula.body
    prefix = list(formula.prefix)
    used = taken | {v for _, v in prefix}
    for i, (quant, var) in enumerate(prefix):
        if var not in taken:
            continue
        counter = 2
        while f"{var}{counter}" in used:
            counter += 1
        fresh = f"{var}{counter}"
        used.add(fresh)
        prefix[i] = (quant, fresh)
        body = rename_trace_variable(body, var, fresh)
    return HyperFormula(tuple(prefix), body)


def check_implication(
    antecedent: HyperFormula,
    consequent: HyperFormula,
    options: SolverOptions | None = None,
) -> ImplicationVerdict:
    check_well_formed(antecedent)
    check_well_formed(consequent)
    if not antecedent.prefix or not consequent.prefix:
        raise errors.WellFormednessError(
            "implication checking needs quantified formulas on both sides"
        )
    left_cls = classify(antecedent)
    right_cls = classify(consequent)
    for side, cls in (("antecedent", left_cls), ("consequent", right_cls)):
        if not isinstance(cls, (ExistsStar, ForallStar)):
            return Unsupported(
                f"the {side} is in the {cls.name} fragment; implication "
                "checking supports exists-only and forall-only formulas"
            )

    consequent = _rename_apart(
        consequent, {v for _, v in antecedent.prefix}
    )
    ante_vars = [v for _, v in antecedent.prefix]
    cons_vars = [v for _, v in consequent.prefix]

    left_forall = isinstance(left_cls, ForallStar)
    right_forall = isinstance(right_cls, ForallStar)
    if left_forall and right_forall:
        prefix = [(EXISTS, v) for v in cons_vars] + [
            (FORALL, v) for v in ante_vars
        ]
    elif not left_forall and not right_forall:
        prefix = [(EXISTS, v) for v in ante_vars] + [
            (FORALL, v) for v in cons_vars
        ]
    elif left_forall:
        prefix = [(FORALL, v) for v in ante_vars + cons_vars]
    else:
        prefix = [(EXISTS, v) for v in ante_vars + cons_vars]

    check = HyperFormula(
        tuple(prefix), And(antecedent.body, Not(consequent.body))
    )
    result = hyper_sat(check, options)
    match result:
        case Unsat():
            return Holds()
        case Sat(model, _):
            return Fails(model)
        case BlowupExceeded(required, limit):
            raise errors.BlowupExceeded(required, limit)
        case _:
            raise errors.InternalError(
                f"unexpected solver result {result!r} on a decidable check"
            )


def check_equivalence(
    left: HyperFormula,
    right: HyperFormula,
    options: SolverOptions | None = None,
) -> tuple[ImplicationVerdict, ImplicationVerdict]:
    return (
        check_implication(left, right, options),
        check_implication(right, left, options),
    )
