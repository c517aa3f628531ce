"""Büchi complementation.

Weak automata (every SCC entirely accepting or entirely rejecting) are
complemented exactly with a breakpoint construction: a word is rejected iff
every run keeps leaving the accepting states. Everything else goes through
the level-ranking construction with a rank cap; when the cap is below the
worst-case rank the result is an under-approximation and is flagged
``incomplete``.
"""

from __future__ import annotations

import itertools
import logging

from automata.emptiness import is_weak
from automata.nba import Nba, explore, letter_regions

logger = logging.getLogger(__name__)


def _step(a: Nba, states, region):
    return frozenset(t for s in states for g, t in a.edges[s] if g.contains(region))


def complement_weak(a: Nba) -> Nba:
    accepting = a.accepting

    def successors(key):
        current, owing = key
        guards = [g for s in current for g, _ in a.edges[s]]
        for region in letter_regions(guards):
            following = _step(a, current, region)
            if owing:
                next_owing = _step(a, owing, region) & accepting
            else:
                next_owing = following & accepting
            yield region, (following, next_owing)

    result, _ = explore(a.variables, (frozenset({a.initial}), frozenset()), successors,
                        lambda key: not key[1], incomplete=a.incomplete)
    return result


def complement_ranked(a: Nba, max_rank: int) -> Nba:
    """Level-ranking complementation with ranks in 0..max_rank."""
    accepting = a.accepting

    def rank_choices(states, bounds):
        options = []
        for state in states:
            ranks = range(bounds[state] + 1)
            if state in accepting:
                ranks = [r for r in ranks if r % 2 == 0]
            options.append([(state, r) for r in ranks])
        for combination in itertools.product(*options):
            yield tuple(combination)

    def expand(ranking, owing):
        current = dict(ranking)
        guards = [g for s in current for g, _ in a.edges[s]]
        for region in letter_regions(guards):
            bounds = {}
            for state, rank in ranking:
                for g, t in a.edges[state]:
                    if g.contains(region):
                        bounds[t] = min(bounds.get(t, rank), rank)
            reached_from_owing = _step(a, owing, region) if owing else None
            for choice in rank_choices(sorted(bounds), bounds):
                even = frozenset(s for s, r in choice if r % 2 == 0)
                next_owing = even if reached_from_owing is None else even & reached_from_owing
                yield region, (choice, next_owing)

    def successors(key):
        if key == "init":
            start = {a.initial: max_rank}
            for choice in rank_choices([a.initial], start):
                yield from expand(choice, frozenset())
            return
        yield from expand(*key)

    def accepting_key(key):
        return key != "init" and not key[1]

    incomplete = a.incomplete or max_rank < 2 * a.num_states - 2
    result, _ = explore(a.variables, "init", successors, accepting_key, incomplete=incomplete)
    return result


def complement_nba_bounded(a: Nba, max_rank: int) -> Nba:
    if max_rank < 1:
        raise ValueError("max_rank must be at least 1")
    if is_weak(a):
        result = complement_weak(a)
    else:
        result = complement_ranked(a, max_rank)
        if result.incomplete:
            logger.warning(f"Complement of a {a.num_states}-state automaton capped at rank "
                           f"{max_rank}; result is an under-approximation")
    logger.info(f"Complemented {a.num_states} states into {result.num_states}")
    return result
