"""LTL satisfiability via a tableau-built generalized Buchi automaton.

States are saturated, locally consistent obligation sets over the closure
of the input formula.  A transition moves to any saturation of the next-
step obligations.  One acceptance set per Until subformula rules out runs
that postpone an eventuality forever.  Every choice below iterates in a
canonical order so identical inputs yield identical automata and witnesses
across processes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .models import UltimatelyPeriodicTrace
from .syntax import (
    And,
    Atom,
    Const,
    Formula,
    Next,
    Not,
    Or,
    Release,
    Until,
    desugar,
    sort_key,
    to_nnf,
)

State = frozenset


def _state_key(state: State):
    return tuple(sorted(sort_key(f) for f in state))


def _check_nnf_core(formula: Formula) -> None:
    match formula:
        case Atom() | Const():
            pass
        case Not(Atom()):
            pass
        case Next(e):
            _check_nnf_core(e)
        case And(a, b) | Or(a, b) | Until(a, b) | Release(a, b):
            _check_nnf_core(a)
            _check_nnf_core(b)
        case _:
            raise ValueError(
                f"automaton construction needs a desugared NNF formula, "
                f"found {formula!r}"
            )


def _closure_untils(formula: Formula) -> list[Until]:
    found = set()

    def walk(f: Formula) -> None:
        match f:
            case Atom() | Const() | Not():
                pass
            case Next(e):
                walk(e)
            case And(a, b) | Or(a, b):
                walk(a)
                walk(b)
            case Until(a, b):
                found.add(f)
                walk(a)
                walk(b)
            case Release(a, b):
                walk(a)
                walk(b)

    walk(formula)
    return sorted(found, key=sort_key)


def _consistent(members: State) -> bool:
    for f in members:
        match f:
            case Const(False):
                return False
            case Not(Atom() as a):
                if a in members:
                    return False
            case _:
                pass
    return True


def _expansions(f: Formula) -> list[set]:
    """Branch alternatives for satisfying f at the current position.  The
    next-step half of Until/Release is handled by _next_obligations."""
    match f:
        case Atom() | Const(True) | Not() | Next():
            return [set()]
        case Const(False):
            return []
        case And(a, b):
            return [{a, b}]
        case Or(a, b):
            return [{a}, {b}]
        case Until(a, b):
            return [{b}, {a}]
        case Release(a, b):
            return [{a, b}, {b}]
        case _:
            raise ValueError(f"unexpected node {f!r}")


def _saturate(seed) -> tuple[State, ...]:
    """All saturated consistent extensions of the seed obligations."""
    results = set()
    start = (frozenset(seed), frozenset(seed))
    seen = {start}
    stack = [start]
    while stack:
        members, pending = stack.pop()
        if not _consistent(members):
            continue
        if not pending:
            results.add(members)
            continue
        f = min(pending, key=sort_key)
        rest = pending - {f}
        for addition in _expansions(f):
            new_members = members | addition
            new_pending = rest | (frozenset(addition) - members)
            item = (new_members, new_pending)
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return tuple(sorted(results, key=_state_key))


def _next_obligations(state: State) -> frozenset:
    out = set()
    for f in state:
        match f:
            case Next(e):
                out.add(e)
            case Until(_, b):
                if b not in state:
                    out.add(f)
            case Release(a, _):
                if a not in state:
                    out.add(f)
            case _:
                pass
    return frozenset(out)


@dataclass
class GeneralizedBuchiAutomaton:
    states: tuple[State, ...]
    initial: tuple[State, ...]
    transitions: dict
    acceptance: tuple[frozenset, ...]
    alphabet: tuple[str, ...]

    def valuation(self, state: State) -> frozenset[str]:
        """The minimal valuation admitted by a state: exactly the positive
        atom obligations; unmentioned propositions stay absent."""
        return frozenset(f.name for f in state if isinstance(f, Atom))


def build_automaton(formula: Formula) -> GeneralizedBuchiAutomaton:
    """Formula must be plain LTL, desugared, in NNF."""
    _check_nnf_core(formula)
    initial = _saturate({formula})
    transitions = {}
    queue = deque(initial)
    seen = set(initial)
    while queue:
        state = queue.popleft()
        succs = _saturate(_next_obligations(state))
        transitions[state] = succs
        for nxt in succs:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    states = tuple(sorted(seen, key=_state_key))
    untils = _closure_untils(formula)
    acceptance = tuple(
        frozenset(s for s in states if u not in s or u.right in s)
        for u in untils
    )
    alphabet = tuple(
        sorted({f.name for s in states for f in s if isinstance(f, Atom)})
    )
    return GeneralizedBuchiAutomaton(
        states, initial, transitions, acceptance, alphabet
    )


def _tarjan_sccs(aut: GeneralizedBuchiAutomaton) -> list[frozenset]:
    index: dict = {}
    low: dict = {}
    comp_stack = []
    on_stack = set()
    next_index = 0
    sccs = []
    for root in aut.states:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = next_index
                next_index += 1
                comp_stack.append(v)
                on_stack.add(v)
            descended = False
            succs = aut.transitions[v]
            while i < len(succs):
                w = succs[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = comp_stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def _bfs_path(aut, start, goal, restrict, allow_empty) -> list:
    """Shortest path from start to a goal state, staying inside restrict.
    With allow_empty, a start that is already a goal yields [start]."""
    if allow_empty and goal(start):
        return [start]
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in aut.transitions[v]:
            if w not in restrict:
                continue
            if goal(w):
                path = [w, v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            if w in parent:
                continue
            parent[w] = v
            queue.append(w)
    raise AssertionError("goal unreachable inside a strongly connected set")


def check_emptiness(
    aut: GeneralizedBuchiAutomaton,
) -> UltimatelyPeriodicTrace | None:
    """None if the language is empty, else a lasso whose stem is a shortest
    path into an accepting component and whose cycle touches every
    acceptance set at least once."""
    if not aut.initial:
        return None

    accepting = []
    for scc in _tarjan_sccs(aut):
        cyclic = len(scc) > 1 or any(
            s in aut.transitions[s] for s in scc
        )
        if cyclic and all(scc & acc for acc in aut.acceptance):
            accepting.append(scc)
    if not accepting:
        return None
    target = min(accepting, key=lambda scc: min(_state_key(s) for s in scc))

    # shortest stem: breadth-first from all initial states at once
    parent: dict = {}
    queue = deque()
    for s in aut.initial:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    entry = None
    for s in aut.initial:
        if s in target:
            entry = s
            break
    while entry is None:
        v = queue.popleft()
        for w in aut.transitions[v]:
            if w in parent:
                continue
            parent[w] = v
            if w in target:
                entry = w
                break
            queue.append(w)
    stem_states = [entry]
    while parent[stem_states[-1]] is not None:
        stem_states.append(parent[stem_states[-1]])
    stem_states.reverse()

    # cycle from the entry state through every acceptance set and back
    path = [entry]
    for acc in aut.acceptance:
        if any(s in acc for s in path):
            continue
        seg = _bfs_path(
            aut, path[-1], lambda s: s in acc, target, allow_empty=False
        )
        path.extend(seg[1:])
    back = _bfs_path(
        aut,
        path[-1],
        lambda s: s == entry,
        target,
        allow_empty=len(path) > 1,
    )
    path.extend(back[1:])

    stem = tuple(aut.valuation(s) for s in stem_states[:-1])
    loop = tuple(aut.valuation(s) for s in path[:-1])
    return UltimatelyPeriodicTrace(stem, loop)


def ltl_sat(formula: Formula) -> UltimatelyPeriodicTrace | None:
    """Satisfiability of a plain LTL formula; a witness lasso or None.
    Accepts any plain formula; desugars and normalizes internally."""
    core = to_nnf(desugar(formula))
    _reject_indexed(core)
    aut = build_automaton(core)
    return check_emptiness(aut)


def _reject_indexed(formula: Formula) -> None:
    match formula:
        case Atom(name, trace):
            if trace is not None:
                raise ValueError(
                    f"indexed atom {name}_{trace} in plain LTL input"
                )
        case Const():
            pass
        case Not(e) | Next(e):
            _reject_indexed(e)
        case And(a, b) | Or(a, b) | Until(a, b) | Release(a, b):
            _reject_indexed(a)
            _reject_indexed(b)
