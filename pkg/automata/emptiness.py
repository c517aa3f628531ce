"""Emptiness, lasso membership and SCC-based structure queries."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from errors import AlphabetMismatchError
from automata.nba import Automaton, Nba
from spec_model.words import LassoWord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmptinessCheck:
    empty: bool
    witness: Optional[LassoWord] = None

    def __bool__(self):
        return self.empty


def state_graph(a: Automaton) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(a.num_states))
    for state, out in enumerate(a.edges):
        for _, target in out:
            graph.add_edge(state, target)
    return graph


def reachable_states(a: Automaton) -> set:
    return nx.descendants(state_graph(a), a.initial) | {a.initial}


def nontrivial_sccs(graph: nx.DiGraph):
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            yield component
        else:
            (node,) = component
            if graph.has_edge(node, node):
                yield component


def live_states(a: Nba) -> set:
    """States from which some accepting run exists."""
    graph = state_graph(a)
    seeds = set()
    for component in nontrivial_sccs(graph):
        if component & a.accepting:
            seeds |= component
    live = set(seeds)
    for seed in seeds:
        live |= nx.ancestors(graph, seed)
    return live


def is_weak(a: Nba) -> bool:
    """Every cycle-carrying SCC is entirely accepting or entirely rejecting."""
    for component in nontrivial_sccs(state_graph(a)):
        inside = component & a.accepting
        if inside and inside != component:
            return False
    return True


def lasso_member(a: Nba, w: LassoWord) -> bool:
    if frozenset(a.variables) != w.variables:
        raise AlphabetMismatchError(
            f"Word over {sorted(w.variables)} given to automaton over {list(a.variables)}")
    letters = [a.letter_of(w.letter(i)) for i in w.positions()]
    graph = nx.DiGraph()
    start = (a.initial, 0)
    graph.add_node(start)
    queue = deque([start])
    while queue:
        state, position = queue.popleft()
        nxt = w.successor(position)
        for target in a.successors(state, letters[position]):
            node = (target, nxt)
            if node not in graph:
                queue.append(node)
            graph.add_edge((state, position), node)
    for component in nontrivial_sccs(graph):
        if any(state in a.accepting for state, _ in component):
            return True
    return False


def _shortest_path(a: Automaton, sources, targets, allowed=None):
    """BFS path (list of (guard, state)) from any source into ``targets``."""
    parent = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        state = queue.popleft()
        for guard, target in a.edges[state]:
            if allowed is not None and target not in allowed:
                continue
            if target in targets:
                path = [(guard, target)]
                node = state
                while parent[node] is not None:
                    previous, edge_guard = parent[node]
                    path.append((edge_guard, node))
                    node = previous
                path.reverse()
                return node, path
            if target not in parent:
                parent[target] = (state, guard)
                queue.append(target)
    return None, None


def is_empty(a: Nba) -> EmptinessCheck:
    graph = state_graph(a)
    reachable = nx.descendants(graph, a.initial) | {a.initial}
    candidates = {}
    for component in nontrivial_sccs(graph.subgraph(reachable)):
        for state in component & a.accepting:
            candidates[state] = component
    if not candidates:
        return EmptinessCheck(True)

    if a.initial in candidates:
        target, stem_path = a.initial, []
    else:
        _, stem_path = _shortest_path(a, [a.initial], set(candidates))
        target = stem_path[-1][1]
    component = candidates[target]
    _, loop_path = _shortest_path(a, [target], {target}, allowed=component)

    stem = tuple(a.valuation_of(guard.letter) for guard, _ in stem_path)
    loop = tuple(a.valuation_of(guard.letter) for guard, _ in loop_path)
    return EmptinessCheck(False, LassoWord(stem, loop, frozenset(a.variables)))
