"""Boolean and structural operations on Büchi automata."""

from __future__ import annotations

import logging

from automata.emptiness import is_weak
from automata.nba import TRUE_GUARD, Nba, explore, lift, rename, restrict_variables, same_alphabet
from automata.pairs import differ_cover, equal_cover
from spec_model.words import pair_variables

logger = logging.getLogger(__name__)


def product(a: Nba, b: Nba) -> Nba:
    """Intersection. Weak operands keep a flag-free, weak product."""
    same_alphabet(a, b)
    incomplete = a.incomplete or b.incomplete

    def pairs(state):
        p, q = state[0], state[1]
        for ga, ta in a.edges[p]:
            for gb, tb in b.edges[q]:
                guard = ga.conjoin(gb)
                if guard is not None:
                    yield guard, (ta, tb)

    if a.all_accepting or b.all_accepting or (is_weak(a) and is_weak(b)):
        def accepting(state):
            return state[0] in a.accepting and state[1] in b.accepting

        result, _ = explore(a.variables, (a.initial, b.initial), pairs, accepting,
                            incomplete=incomplete)
        return result

    def flagged(state):
        p, q, flag = state
        if flag == 0 and p in a.accepting:
            flag = 1
        elif flag == 1 and q in b.accepting:
            flag = 0
        for guard, (ta, tb) in pairs(state):
            yield guard, (ta, tb, flag)

    result, _ = explore(a.variables, (a.initial, b.initial, 0), flagged,
                        lambda s: s[2] == 0 and s[0] in a.accepting,
                        incomplete=incomplete)
    return result


def union(a: Nba, b: Nba) -> Nba:
    same_alphabet(a, b)
    sides = {"a": a, "b": b}

    def successors(key):
        if key == ("init",):
            for side, automaton in sides.items():
                for guard, target in automaton.edges[automaton.initial]:
                    yield guard, (side, target)
            return
        side, state = key
        for guard, target in sides[side].edges[state]:
            yield guard, (side, target)

    def accepting(key):
        if key == ("init",):
            return a.initial in a.accepting or b.initial in b.accepting
        side, state = key
        return state in sides[side].accepting

    result, _ = explore(a.variables, ("init",), successors, accepting,
                        incomplete=a.incomplete or b.incomplete)
    return result


def exists_project(a: Nba, variables) -> Nba:
    """Existentially quantify ``variables`` away."""
    drop = set(variables)
    return restrict_variables(a, [v for v in a.variables if v not in drop])


def equality_automaton(variables, equal_on) -> Nba:
    """One accepting state; every letter agrees on ``x@1``/``x@2`` for x in equal_on."""
    names = tuple(sorted(variables))
    return Nba(names, (tuple((g, 0) for g in equal_cover(names, equal_on)),), frozenset({0}))


def indexed_copy(a: Nba, copy: int) -> Nba:
    return rename(a, {v: f"{v}@{copy}" for v in a.variables})


def pair_product(left: Nba, right: Nba, equal_on=()) -> Nba:
    """Pairs (u, v) with u in L(left), v in L(right) agreeing on ``equal_on``."""
    variables = pair_variables(set(left.variables) | set(right.variables))
    l = lift(indexed_copy(left, 1), variables)
    r = lift(indexed_copy(right, 2), variables)
    result = product(l, r)
    if equal_on:
        result = product(result, equality_automaton(variables, equal_on))
    return result


def self_compose(a: Nba, equal_on=()) -> Nba:
    return pair_product(a, a, equal_on)


def reduce(a: Nba) -> Nba:
    """Quotient by bisimulation: equal acceptance and edges into equal blocks."""
    block = [1 if s in a.accepting else 0 for s in range(a.num_states)]
    while True:
        signatures = {}
        refined = []
        for state in range(a.num_states):
            signature = (block[state],
                         frozenset((g, block[t]) for g, t in a.edges[state]))
            refined.append(signatures.setdefault(signature, len(signatures)))
        if len(signatures) == len(set(block)):
            break
        block = refined

    representative = {}
    for state in range(a.num_states):
        representative.setdefault(block[state], state)

    def successors(b):
        state = representative[b]
        return [(g, block[t]) for g, t in a.edges[state]]

    result, _ = explore(a.variables, block[a.initial], successors,
                        lambda b: representative[b] in a.accepting,
                        cls=type(a), incomplete=a.incomplete)
    return result


def differ_automaton(variables, differ_on) -> Nba:
    """Pairs whose ``differ_on`` projections differ at some position."""
    names = tuple(sorted(variables))
    equal = equal_cover(names, differ_on)
    differ = differ_cover(names, differ_on)
    edges = (
        tuple((g, 0) for g in equal) + tuple((g, 1) for g in differ),
        ((TRUE_GUARD, 1),),
    )
    return Nba(names, edges, frozenset({1}))
