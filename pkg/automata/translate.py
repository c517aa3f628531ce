"""LTL to Büchi automata by tableau expansion.

A tableau state is the set of NNF obligations for the current position. Each
state expands into covers: a cube of literals the current letter must satisfy,
the obligations for the next position, and the eventualities postponed by this
step. An eventuality is fulfilled on a transition that does not postpone it.
The generalized acceptance is degeneralized with a counter that walks through
the eventualities in a fixed order.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from errors import UndeclaredAtomError
from automata.emptiness import live_states
from automata.nba import TRUE_GUARD, Nba, explore, literal_guard, sub_automaton
from spec_model.ltl import (
    And, Atom, Const, Finally, Globally, Next, Not, Or, Release, Until,
    atoms, format_ltl, subformulas, to_nnf,
)

logger = logging.getLogger(__name__)


def _expand(obligations, index):
    """Covers of a set of obligations as (guard, next obligations, postponed)."""
    covers = []

    def visit(todo, done, guard, following, postponed):
        while todo:
            phi = todo[-1]
            todo = todo[:-1]
            if phi in done:
                continue
            done = done | {phi}
            if isinstance(phi, Const):
                if not phi.value:
                    return
            elif isinstance(phi, Atom):
                guard = guard.conjoin(literal_guard(index[phi.name], True))
                if guard is None:
                    return
            elif isinstance(phi, Not):
                guard = guard.conjoin(literal_guard(index[phi.operand.name], False))
                if guard is None:
                    return
            elif isinstance(phi, And):
                todo = todo + (phi.left, phi.right)
            elif isinstance(phi, Next):
                following = following | {phi.operand}
            elif isinstance(phi, Globally):
                todo = todo + (phi.operand,)
                following = following | {phi}
            elif isinstance(phi, Or):
                visit(todo + (phi.left,), done, guard, following, postponed)
                todo = todo + (phi.right,)
            elif isinstance(phi, Until):
                visit(todo + (phi.right,), done, guard, following, postponed)
                todo = todo + (phi.left,)
                following = following | {phi}
                postponed = postponed | {phi}
            elif isinstance(phi, Release):
                visit(todo + (phi.left, phi.right), done, guard, following, postponed)
                todo = todo + (phi.right,)
                following = following | {phi}
            elif isinstance(phi, Finally):
                visit(todo + (phi.operand,), done, guard, following, postponed)
                following = following | {phi}
                postponed = postponed | {phi}
            else:
                raise TypeError(f"Formula not in negation normal form: {phi!r}")
        covers.append((guard, frozenset(following), frozenset(postponed)))

    visit(tuple(sorted(obligations, key=format_ltl)), frozenset(), TRUE_GUARD,
          frozenset(), frozenset())
    return covers


def _tableau(phi, variables, counting=True):
    variables = tuple(sorted(variables))
    undeclared = atoms(phi) - set(variables)
    if undeclared:
        raise UndeclaredAtomError(undeclared)
    index = {v: i for i, v in enumerate(variables)}
    nnf = to_nnf(phi)
    eventualities = sorted((f for f in subformulas(nnf) if isinstance(f, (Until, Finally))),
                           key=format_ltl)
    k = len(eventualities) if counting else 0
    expansions = {}

    def covers(obligations):
        if obligations not in expansions:
            expansions[obligations] = _expand(obligations, index)
        return expansions[obligations]

    def successors(state):
        obligations, counter = state
        for guard, following, postponed in covers(obligations):
            level = 0 if counter == k else counter
            while level < k and eventualities[level] not in postponed:
                level += 1
            yield guard, (following, level)

    def name(state):
        obligations, counter = state
        body = ", ".join(sorted(format_ltl(f) for f in obligations)) or "true"
        return f"{{{body}}}/{counter}" if k else f"{{{body}}}"

    automaton, _ = explore(variables, (frozenset({nnf}), 0), successors,
                           lambda s: s[1] == k, name=name)
    return automaton


@lru_cache(maxsize=512)
def _cached_translation(phi, variables):
    automaton = _tableau(phi, variables)
    live = live_states(automaton)
    if automaton.initial not in live:
        return Nba(automaton.variables, ((),), frozenset(), names=("false",))
    return sub_automaton(automaton, live)


def ltl_to_nba(phi, variables=None) -> Nba:
    """Büchi automaton for ``phi`` over ``variables`` (default: the atoms of phi)."""
    variables = tuple(sorted(atoms(phi) if variables is None else variables))
    automaton = _cached_translation(phi, variables)
    logger.debug(f"Translated {format_ltl(phi)} into {automaton.num_states} states")
    return automaton


@lru_cache(maxsize=512)
def safety_closure(phi, variables=None) -> Nba:
    """Automaton for the traces of phi's alphabet that have no bad prefix.

    The live part of the tableau with every state accepting: a trace has no
    bad prefix iff it has an infinite run through states with nonempty
    residual language.
    """
    variables = tuple(sorted(atoms(phi) if variables is None else variables))
    automaton = _cached_translation(phi, variables)
    if not automaton.accepting:
        return automaton
    return automaton.with_accepting(range(automaton.num_states))
