"""Encoding of the Post correspondence problem into forall-exists formulas.

A PCP instance is a list of stones (pairs of words).  Each candidate trace
spells an overlapped pair of words in pair propositions p_x_y, one pair
per position; a dot prefix d marks the first symbol of every stone's word,
and hash pads the shorter side.  The generated formula says: some trace
spells a solution (both components equal and dotted together), and every
trace that is not all-hash starts with a whole stone and has a companion
trace with that stone's contribution deleted.  Satisfiability of the
result is exactly solvability of the instance, which is why formulas with
a forall before an exists are refused by the solver.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce

from .errors import InvalidInstance, NotASolution
from .models import TraceSet, UltimatelyPeriodicTrace
from .syntax import (
    And,
    Atom,
    EXISTS,
    FORALL,
    Eventually,
    Formula,
    Globally,
    HyperFormula,
    Implies,
    Next,
    Not,
    Or,
    Until,
)

HASH = "hash"

UNIVERSAL = "pi"
SOLUTION = "pis"
SHIFTED = "pip"


def dotted(symbol: str) -> str:
    return "d" + symbol


@dataclass(frozen=True)
class PcpInstance:
    alphabet: tuple[str, ...]
    stones: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.alphabet:
            raise InvalidInstance("empty alphabet")
        for sym in self.alphabet:
            if len(sym) != 1 or not sym.isalnum():
                raise InvalidInstance(
                    f"alphabet symbols are single alphanumeric characters, "
                    f"got {sym!r}"
                )
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidInstance("duplicate alphabet symbol")
        if not self.stones:
            raise InvalidInstance("an instance needs at least one stone")
        for top, bottom in self.stones:
            for word in (top, bottom):
                if not word:
                    raise InvalidInstance("stone words must be non-empty")
                for c in word:
                    if c not in self.alphabet:
                        raise InvalidInstance(
                            f"word {word!r} uses {c!r}, not in the alphabet"
                        )


@dataclass(frozen=True)
class PairAlphabet:
    """Propositions for pairs over the doubled alphabet: plain symbols,
    their dotted copies, and the hash padding symbol."""

    alphabet: tuple[str, ...]

    def symbols(self) -> list[str]:
        plain = list(self.alphabet)
        return plain + [dotted(s) for s in plain] + [HASH]

    def variants(self, base: str) -> list[str]:
        """The tokens spelling a base symbol regardless of dotting."""
        if base == HASH:
            return [HASH]
        return [base, dotted(base)]

    def dotted_any(self) -> list[str]:
        return [dotted(s) for s in self.alphabet]

    def nonhash_any(self) -> list[str]:
        return list(self.alphabet) + [dotted(s) for s in self.alphabet]

    def prop(self, left: str, right: str) -> str:
        return f"p_{left}_{right}"

    def all_props(self) -> list[str]:
        syms = self.symbols()
        return [self.prop(x, y) for x in syms for y in syms]


def _or_chain(parts: list[Formula]) -> Formula:
    return reduce(Or, parts)


def _and_chain(parts: list[Formula]) -> Formula:
    return reduce(And, parts)


def _pairs(pa: PairAlphabet, lefts, rights, trace: str) -> Formula:
    return _or_chain(
        [
            Atom(pa.prop(x, y), trace)
            for x, y in itertools.product(lefts, rights)
        ]
    )


def _nexts(k: int, formula: Formula) -> Formula:
    for _ in range(k):
        formula = Next(formula)
    return formula


def _stone_start(
    pa: PairAlphabet, top: str, bottom: str, continuing: bool
) -> Formula:
    """Pattern pinning positions 0..max(|top|,|bottom|) of a trace that
    begins with this stone.  The continuing variant expects another stone
    after it (dotted starts where each word ends), the ending variant
    expects hash padding instead."""
    p, q = len(top), len(bottom)
    span = max(p, q)
    terms = []
    for j in range(span + 1):
        if j == 0:
            lefts = [dotted(top[0])]
        elif j < p:
            lefts = [top[j]]
        elif j == p and continuing:
            lefts = pa.dotted_any()
        elif continuing:
            lefts = pa.nonhash_any()
        else:
            lefts = [HASH]
        if j == 0:
            rights = [dotted(bottom[0])]
        elif j < q:
            rights = [bottom[j]]
        elif j == q and continuing:
            rights = pa.dotted_any()
        elif continuing:
            rights = pa.nonhash_any()
        else:
            rights = [HASH]
        terms.append(_nexts(j, _pairs(pa, lefts, rights, UNIVERSAL)))
    return _and_chain(terms)


def _stone_encoding(pa: PairAlphabet, top: str, bottom: str) -> Formula:
    start = Or(
        _stone_start(pa, top, bottom, continuing=True),
        _stone_start(pa, top, bottom, continuing=False),
    )
    all_syms = pa.symbols()
    deletes = []
    for base in list(pa.alphabet) + [HASH]:
        deletes.append(
            Globally(
                Implies(
                    _nexts(
                        len(top),
                        _pairs(pa, pa.variants(base), all_syms, UNIVERSAL),
                    ),
                    _pairs(pa, pa.variants(base), all_syms, SHIFTED),
                )
            )
        )
    for base in list(pa.alphabet) + [HASH]:
        deletes.append(
            Globally(
                Implies(
                    _nexts(
                        len(bottom),
                        _pairs(pa, all_syms, pa.variants(base), UNIVERSAL),
                    ),
                    _pairs(pa, all_syms, pa.variants(base), SHIFTED),
                )
            )
        )
    return _and_chain([start] + deletes)


def encode_pcp(instance: PcpInstance) -> HyperFormula:
    pa = PairAlphabet(instance.alphabet)
    hash_pair = pa.prop(HASH, HASH)

    solution_start = _or_chain(
        [
            Atom(pa.prop(dotted(s), dotted(s)), SOLUTION)
            for s in instance.alphabet
        ]
    )
    matched = _or_chain(
        [
            Atom(pa.prop(x, y), SOLUTION)
            for s in instance.alphabet
            for x, y in itertools.product(pa.variants(s), pa.variants(s))
        ]
    )
    solution = And(
        solution_start,
        Until(matched, Globally(Atom(hash_pair, SOLUTION))),
    )

    stones = _or_chain(
        [_stone_encoding(pa, top, bottom) for top, bottom in instance.stones]
    )
    stones_or_blank = Or(stones, Globally(Atom(hash_pair, UNIVERSAL)))

    props = pa.all_props()
    singleton = _and_chain(
        [
            Globally(Not(And(Atom(a, UNIVERSAL), Atom(b, UNIVERSAL))))
            for a, b in itertools.combinations(props, 2)
        ]
    )

    body = And(
        And(
            And(solution, Eventually(Globally(Atom(hash_pair, UNIVERSAL)))),
            stones_or_blank,
        ),
        singleton,
    )
    prefix = ((FORALL, UNIVERSAL), (EXISTS, SOLUTION), (EXISTS, SHIFTED))
    return HyperFormula(prefix, body)


def encode_solution_traceset(
    instance: PcpInstance, indices: list[int]
) -> TraceSet:
    """The witness trace set for a solved instance: the overlapped solution
    trace, each suffix obtained by deleting whole stones off the front, and
    the all-hash trace."""
    if not indices:
        raise InvalidInstance("a solution needs at least one index")
    for i in indices:
        if not isinstance(i, int) or not 1 <= i <= len(instance.stones):
            raise InvalidInstance(f"stone index {i!r} out of range")
    top_word = "".join(instance.stones[i - 1][0] for i in indices)
    bottom_word = "".join(instance.stones[i - 1][1] for i in indices)
    if top_word != bottom_word:
        raise NotASolution(
            f"top spells {top_word!r}, bottom spells {bottom_word!r}"
        )

    pa = PairAlphabet(instance.alphabet)
    hash_pair = pa.prop(HASH, HASH)
    traces = []
    for d in range(len(indices) + 1):
        tops: list[str] = []
        bottoms: list[str] = []
        for i in indices[d:]:
            top, bottom = instance.stones[i - 1]
            tops.extend([dotted(top[0])] + list(top[1:]))
            bottoms.extend([dotted(bottom[0])] + list(bottom[1:]))
        span = max(len(tops), len(bottoms))
        tops.extend([HASH] * (span - len(tops)))
        bottoms.extend([HASH] * (span - len(bottoms)))
        stem = tuple(
            frozenset({pa.prop(x, y)}) for x, y in zip(tops, bottoms)
        )
        traces.append(
            UltimatelyPeriodicTrace(stem, (frozenset({hash_pair}),))
        )
    return TraceSet(frozenset(traces))


# ---------------------------------------------------------------------------
# JSON input: {"alphabet": ["a", "b"], "stones": [["a", "baa"], ...]} and
# {"indices": [3, 2, 3, 1]} with 1-based stone indices.


def parse_instance(text: str) -> PcpInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInstance(f"bad JSON: {e}") from e
    if not isinstance(data, dict):
        raise InvalidInstance("expected a JSON object")
    alphabet = data.get("alphabet")
    stones = data.get("stones")
    if not isinstance(alphabet, list) or not all(
        isinstance(s, str) for s in alphabet
    ):
        raise InvalidInstance('"alphabet" must be a list of strings')
    if (
        not isinstance(stones, list)
        or not all(
            isinstance(s, list)
            and len(s) == 2
            and all(isinstance(w, str) for w in s)
            for s in stones
        )
    ):
        raise InvalidInstance('"stones" must be a list of [top, bottom] pairs')
    return PcpInstance(tuple(alphabet), tuple((s[0], s[1]) for s in stones))


def parse_solution(text: str) -> list[int]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInstance(f"bad JSON: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("indices"), list):
        raise InvalidInstance('expected {"indices": [...]}')
    indices = data["indices"]
    if not all(isinstance(i, int) and not isinstance(i, bool) for i in indices):
        raise InvalidInstance("indices must be integers")
    return list(indices)
