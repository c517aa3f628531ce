"""Finite-word constructions: subset determinization and bad prefixes."""

from __future__ import annotations

import logging
from functools import lru_cache

from automata.nba import Nba, Nfa, explore, letter_regions
from automata.translate import safety_closure
from spec_model.ltl import atoms

logger = logging.getLogger(__name__)


def determinize_safety(a: Nfa) -> Nfa:
    """Subset construction over symbolic letter regions; the result is complete."""

    def successors(subset):
        guards = [g for s in subset for g, _ in a.edges[s]]
        for region in letter_regions(guards):
            target = frozenset(t for s in subset for g, t in a.edges[s] if g.contains(region))
            yield region, target

    dfa, _ = explore(a.variables, frozenset({a.initial}), successors,
                     lambda subset: bool(subset & a.accepting), cls=Nfa,
                     incomplete=a.incomplete)
    return dfa


def complement_det(a: Nfa) -> Nfa:
    """Complement of a complete deterministic automaton: flip acceptance."""
    return a.with_accepting(set(range(a.num_states)) - a.accepting)


@lru_cache(maxsize=256)
def bad_prefix_nfa(phi, variables=None) -> Nfa:
    """Deterministic automaton accepting exactly the bad prefixes of phi."""
    variables = tuple(sorted(atoms(phi) if variables is None else variables))
    closure = safety_closure(phi, variables)
    good = Nfa(closure.variables, closure.edges, closure.accepting)
    return complement_det(determinize_safety(good))


@lru_cache(maxsize=256)
def finite_violation_nba(phi, variables=None) -> Nba:
    """Traces that finitely violate phi: some prefix is a bad prefix.

    Bad-prefix states of the determinized automaton are absorbing, so reading
    the automaton with Büchi acceptance on them is exact.
    """
    dfa = bad_prefix_nfa(phi, variables)
    return Nba(dfa.variables, dfa.edges, dfa.accepting, dfa.incomplete)
