"""Graphviz export of automata for ``--dump-automata``."""

from __future__ import annotations

import logging
import os

from graphviz import Digraph

from automata.nba import Automaton, format_guard

logger = logging.getLogger(__name__)


def to_dot(a: Automaton, title: str = "automaton") -> Digraph:
    dot = Digraph(title)
    dot.attr(rankdir="LR", label=title)
    dot.node("init", "", shape="point")
    for state in range(a.num_states):
        label = a.names[state] if a.names else str(state)
        shape = "doublecircle" if state in a.accepting else "circle"
        dot.node(str(state), label, shape=shape)
    dot.edge("init", str(a.initial))
    for state, out in enumerate(a.edges):
        for guard, target in out:
            dot.edge(str(state), str(target), format_guard(guard, a.variables))
    return dot


def dump_automaton(a: Automaton, directory, name: str) -> str:
    """Write the DOT source of ``a`` to ``directory/name.dot``; returns the path."""
    os.makedirs(directory, exist_ok=True)
    path = to_dot(a, name).save(f"{name}.dot", directory=directory)
    logger.info(f"Dumped {name} ({a.num_states} states) to {path}")
    return path
