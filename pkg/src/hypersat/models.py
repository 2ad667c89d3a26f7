"""Ultimately periodic traces, trace sets, and formula evaluation.

A trace is a finite stem followed by a forever-repeated non-empty loop.
Evaluation computes, per subformula, a truth bitmask over the positions
0 .. |stem|+|loop|-1 of the (joint) lasso; position i+1 wraps back to the
loop start at the end.  Least/greatest fixpoints decide U and R, which is
equivalent to scanning positions up to |stem| + 2*|loop| with loop-aware
memoization: truth values are periodic past the stem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import syntax
from .errors import ParseError, PeriodGuardExceeded, WellFormednessError
from .syntax import (
    And,
    Atom,
    Const,
    EXISTS,
    Formula,
    HyperFormula,
    Next,
    Not,
    Or,
    Release,
    Until,
)

DEFAULT_PERIOD_GUARD = 10_000


@dataclass(frozen=True)
class UltimatelyPeriodicTrace:
    stem: tuple[frozenset[str], ...]
    loop: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("trace loop must be non-empty")

    def valuation_at(self, i: int) -> frozenset[str]:
        if i < len(self.stem):
            return self.stem[i]
        return self.loop[(i - len(self.stem)) % len(self.loop)]

    def tail(self) -> "UltimatelyPeriodicTrace":
        """The suffix starting at position 1."""
        if self.stem:
            return UltimatelyPeriodicTrace(self.stem[1:], self.loop)
        return UltimatelyPeriodicTrace((), self.loop[1:] + self.loop[:1])

    def propositions(self) -> frozenset[str]:
        out = set()
        for v in self.stem + self.loop:
            out |= v
        return frozenset(out)

    def canonical(self) -> "UltimatelyPeriodicTrace":
        """Shortest stem, shortest loop representation of the same word."""
        loop = list(self.loop)
        for d in range(1, len(loop) + 1):
            if len(loop) % d == 0 and loop == loop[:d] * (len(loop) // d):
                loop = loop[:d]
                break
        stem = list(self.stem)
        while stem and stem[-1] == loop[-1]:
            stem.pop()
            loop = [loop[-1]] + loop[:-1]
        return UltimatelyPeriodicTrace(tuple(stem), tuple(loop))


def make_trace(stem, loop) -> UltimatelyPeriodicTrace:
    return UltimatelyPeriodicTrace(
        tuple(frozenset(v) for v in stem), tuple(frozenset(v) for v in loop)
    )


@dataclass(frozen=True)
class TraceSet:
    traces: frozenset[UltimatelyPeriodicTrace]

    def __post_init__(self):
        if not self.traces:
            raise ValueError("a trace set must be non-empty")

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.traces)

    def sorted(self) -> list[UltimatelyPeriodicTrace]:
        return sorted(self.traces, key=trace_sort_key)


def trace_sort_key(t: UltimatelyPeriodicTrace):
    return (
        len(t.stem),
        len(t.loop),
        tuple(tuple(sorted(v)) for v in t.stem),
        tuple(tuple(sorted(v)) for v in t.loop),
    )


@dataclass(frozen=True)
class TraceAssignment:
    """Partial map from trace variables to traces, plus a position offset
    so that suffix assignments need not copy traces."""

    map: tuple[tuple[str, UltimatelyPeriodicTrace], ...] = ()
    offset: int = 0

    def with_trace(self, var: str, trace: UltimatelyPeriodicTrace):
        kept = tuple((v, t) for v, t in self.map if v != var)
        return TraceAssignment(kept + ((var, trace),), self.offset)

    def shifted(self, k: int = 1) -> "TraceAssignment":
        return TraceAssignment(self.map, self.offset + k)

    def trace(self, var: str) -> UltimatelyPeriodicTrace:
        for v, t in self.map:
            if v == var:
                return t
        raise KeyError(var)

    def valuation(self, var: str, i: int) -> frozenset[str]:
        return self.trace(var).valuation_at(self.offset + i)


# ---------------------------------------------------------------------------
# Evaluation


def _check_core(formula: Formula) -> None:
    match formula:
        case Atom() | Const():
            pass
        case Not(e) | Next(e):
            _check_core(e)
        case And(a, b) | Or(a, b) | Until(a, b) | Release(a, b):
            _check_core(a)
            _check_core(b)
        case _:
            raise ValueError(
                f"evaluation expects a desugared formula, found {formula!r}"
            )


def _succ_shift(mask: int, stem_len: int, total: int) -> int:
    """Bit i of the result is bit succ(i) of mask, where succ wraps the
    final position back to the loop start."""
    out = mask >> 1
    if (mask >> stem_len) & 1:
        out |= 1 << (total - 1)
    return out


def _eval_masks(formula: Formula, atom_mask, stem_len: int, total: int) -> int:
    full = (1 << total) - 1
    memo: dict[int, int] = {}  # keyed by node identity: one shared tree

    def go(f: Formula) -> int:
        got = memo.get(id(f))
        if got is not None:
            return got
        match f:
            case Atom():
                m = atom_mask(f)
            case Const(value):
                m = full if value else 0
            case Not(e):
                m = ~go(e) & full
            case And(a, b):
                m = go(a) & go(b)
            case Or(a, b):
                m = go(a) | go(b)
            case Next(e):
                m = _succ_shift(go(e), stem_len, total)
            case Until(a, b):
                ma, mb = go(a), go(b)
                m = mb
                while True:
                    nxt = mb | (ma & _succ_shift(m, stem_len, total))
                    if nxt == m:
                        break
                    m = nxt
            case Release(a, b):
                ma, mb = go(a), go(b)
                m = full
                while True:
                    nxt = mb & (ma | _succ_shift(m, stem_len, total))
                    if nxt == m:
                        break
                    m = nxt
            case _:
                raise ValueError(f"unexpected node {f!r}")
        memo[id(f)] = m
        return m

    return go(formula)


def evaluate_ltl(trace: UltimatelyPeriodicTrace, formula: Formula) -> bool:
    """Truth of a desugared plain LTL formula at position 0 of the trace."""
    _check_core(formula)
    for a in _subatoms(formula):
        if a.trace is not None:
            raise WellFormednessError(
                f"indexed atom {a.name}_{a.trace} in plain LTL evaluation"
            )
    stem_len = len(trace.stem)
    total = stem_len + len(trace.loop)

    def atom_mask(atom: Atom) -> int:
        m = 0
        for i in range(total):
            if atom.name in trace.valuation_at(i):
                m |= 1 << i
        return m

    return bool(_eval_masks(formula, atom_mask, stem_len, total) & 1)


def _subatoms(formula: Formula):
    match formula:
        case Atom():
            yield formula
        case Const():
            pass
        case Not(e) | Next(e):
            yield from _subatoms(e)
        case And(a, b) | Or(a, b) | Until(a, b) | Release(a, b):
            yield from _subatoms(a)
            yield from _subatoms(b)


def evaluate_hyperltl(
    trace_set: TraceSet,
    formula: HyperFormula,
    period_guard: int = DEFAULT_PERIOD_GUARD,
) -> bool:
    """Truth of a closed formula over a finite trace set.

    Quantifiers are expanded by exhaustive enumeration of the trace set.
    Each fully quantified body is evaluated on the joint lasso of the
    assigned traces: stem length is the maximum of the stems, loop length
    the lcm of the loops.  Raises PeriodGuardExceeded if that lcm grows
    past period_guard.
    """
    syntax.check_well_formed(formula)
    body = syntax.desugar(formula.body)
    traces = trace_set.sorted()

    if not formula.prefix:
        if len(traces) != 1:
            raise ValueError(
                "an unquantified formula needs a single-trace model"
            )
        return evaluate_ltl(traces[0], body)

    # One product lasso covers every assignment: its stem is the longest
    # stem in the set and its loop length the lcm of all loops, so each
    # trace is periodic within it.  Masks are then shared between
    # assignments that agree on the traces a subformula actually reads.
    stem_len = max(len(t.stem) for t in traces)
    loop_len = 1
    for t in traces:
        loop_len = math.lcm(loop_len, len(t.loop))
        if loop_len > period_guard:
            raise PeriodGuardExceeded(loop_len, period_guard)
    total = stem_len + loop_len
    full = (1 << total) - 1

    free_vars: dict[int, tuple[str, ...]] = {}

    def collect(f: Formula) -> tuple[str, ...]:
        got = free_vars.get(id(f))
        if got is not None:
            return got
        match f:
            case Atom(_, trace):
                vs = (trace,)
            case Const():
                vs = ()
            case Not(e) | Next(e):
                vs = collect(e)
            case And(a, b) | Or(a, b) | Until(a, b) | Release(a, b):
                vs = tuple(sorted(set(collect(a)) | set(collect(b))))
            case _:
                raise ValueError(f"unexpected node {f!r}")
        free_vars[id(f)] = vs
        return vs

    collect(body)

    atom_masks: dict[tuple, int] = {}

    def atom_mask(name: str, trace: UltimatelyPeriodicTrace) -> int:
        key = (name, id(trace))
        got = atom_masks.get(key)
        if got is None:
            got = 0
            for i in range(total):
                if name in trace.valuation_at(i):
                    got |= 1 << i
            atom_masks[key] = got
        return got

    node_masks: dict[tuple, int] = {}

    def mask(f: Formula, env: dict) -> int:
        key = (id(f), tuple(id(env[v]) for v in free_vars[id(f)]))
        got = node_masks.get(key)
        if got is not None:
            return got
        match f:
            case Atom(name, trace):
                m = atom_mask(name, env[trace])
            case Const(value):
                m = full if value else 0
            case Not(e):
                m = ~mask(e, env) & full
            case And(a, b):
                m = mask(a, env) & mask(b, env)
            case Or(a, b):
                m = mask(a, env) | mask(b, env)
            case Next(e):
                m = _succ_shift(mask(e, env), stem_len, total)
            case Until(a, b):
                ma, mb = mask(a, env), mask(b, env)
                m = mb
                while True:
                    nxt = mb | (ma & _succ_shift(m, stem_len, total))
                    if nxt == m:
                        break
                    m = nxt
            case Release(a, b):
                ma, mb = mask(a, env), mask(b, env)
                m = full
                while True:
                    nxt = mb & (ma | _succ_shift(m, stem_len, total))
                    if nxt == m:
                        break
                    m = nxt
            case _:
                raise ValueError(f"unexpected node {f!r}")
        node_masks[key] = m
        return m

    def eval_prefix(k: int, env: dict) -> bool:
        if k == len(formula.prefix):
            return bool(mask(body, env) & 1)
        quant, var = formula.prefix[k]
        if quant == EXISTS:
            return any(eval_prefix(k + 1, {**env, var: t}) for t in traces)
        return all(eval_prefix(k + 1, {**env, var: t}) for t in traces)

    return eval_prefix(0, {})


def extract_model(lasso: UltimatelyPeriodicTrace, reduction) -> TraceSet:
    """Turn a satisfying lasso of a reduced LTL formula back into a trace
    set for the original formula."""
    if reduction.substitution is None:
        return TraceSet(frozenset({lasso}))
    from .reductions import project

    return project(lasso, reduction.substitution)


# ---------------------------------------------------------------------------
# Text format: one trace per line, stem valuations, '|', loop valuations.
# Example: {a,b} {a} | {b} {}


def format_trace(t: UltimatelyPeriodicTrace) -> str:
    def block(v: frozenset[str]) -> str:
        return "{" + ",".join(sorted(v)) + "}"

    stem = " ".join(block(v) for v in t.stem)
    loop = " ".join(block(v) for v in t.loop)
    return f"{stem} | {loop}" if stem else f"| {loop}"


def parse_trace(line: str) -> UltimatelyPeriodicTrace:
    if line.count("|") != 1:
        raise ParseError(0, "a trace needs exactly one '|' separator")
    stem_text, loop_text = line.split("|")
    stem = tuple(_parse_valuations(stem_text))
    loop = tuple(_parse_valuations(loop_text))
    if not loop:
        raise ParseError(0, "a trace needs a non-empty loop")
    return UltimatelyPeriodicTrace(stem, loop)


def _parse_valuations(text: str) -> list[frozenset[str]]:
    out = []
    for part in text.split():
        if not (part.startswith("{") and part.endswith("}")):
            raise ParseError(0, f"expected a {{...}} valuation, found {part!r}")
        inner = part[1:-1]
        names = [n for n in inner.split(",") if n]
        for n in names:
            ok = (n[0].isalpha() or n[0] == "_") and all(
                c.isalnum() or c in "_@" for c in n
            )
            if not ok:
                raise ParseError(0, f"bad proposition name {n!r}")
        out.append(frozenset(names))
    return out


def format_trace_set(ts: TraceSet) -> str:
    return "\n".join(format_trace(t) for t in ts.sorted())


def parse_trace_set(text: str) -> TraceSet:
    traces = [parse_trace(line) for line in text.splitlines() if line.strip()]
    if not traces:
        raise ParseError(0, "empty trace set")
    return TraceSet(frozenset(traces))
