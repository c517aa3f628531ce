"""Uniformity of time-bounded distinguishability.

The relation is uniform when, for every environment trace and every output
sequence correct on it, the finite violations on its distinguishable partners
happen within one common bound. Prefix-determined relations are uniform. For
the rest, a bounded search looks for an (environment, output) lasso whose
partners can postpone their violation for as long as they like: a cycle of
partner letters that stays clear of bad prefixes while the partner can still
complete into the relation.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from automata.emptiness import nontrivial_sccs
from automata.nba import Nba, Nfa
from automata.pairs import env_letter_bits, letter_table
from automata.safety import bad_prefix_nfa
from config import ToolConfig, get_tool_config
from infoflow.tb_dist import TbDistAutomaton, build_tb_dist_automaton
from spec_model.architecture import Architecture
from spec_model.semantics import eval_ltl
from spec_model.words import LassoWord, enumerate_lassos, project

logger = logging.getLogger(__name__)

UNIFORM = "uniform"
NON_UNIFORM = "non-uniform"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UniformityVerdict:
    status: str
    witness: Optional[tuple] = None
    reason: str = ""

    @property
    def uniform(self) -> bool:
        return self.status == UNIFORM


def _mask(letter, names) -> int:
    return sum(1 << i for i, name in enumerate(names) if name in letter)


def _live_nodes(graph: nx.DiGraph, accepting) -> set:
    seeds = set()
    for component in nontrivial_sccs(graph):
        if component & accepting:
            seeds |= component
    live = set(seeds)
    for seed in seeds:
        live |= nx.ancestors(graph, seed)
    return live


def _partner_graph(lam: Nba, bad: Nfa, w: LassoWord, env, outputs) -> nx.DiGraph:
    """Nodes (relation state, position in w, bad-prefix state) over all partner letters."""
    left = env_letter_bits(lam.variables, env, 1)
    right = env_letter_bits(lam.variables, env, 2)
    bad_env = letter_table(bad.variables, env)
    bad_out = letter_table(bad.variables, outputs)
    env_at = [_mask(w.letter(i), env) for i in w.positions()]
    out_at = [bad_out[_mask(w.letter(i), outputs)] for i in w.positions()]

    start = (lam.initial, 0, bad.initial)
    graph = nx.DiGraph()
    graph.add_node(start)
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, i, r = node
        following = w.successor(i)
        for partner in range(1 << len(env)):
            (r_next,) = bad.successors(r, bad_env[partner] | out_at[i])
            for q_next in lam.successors(q, left[env_at[i]] | right[partner]):
                target = (q_next, following, r_next)
                if target not in graph:
                    queue.append(target)
                graph.add_edge(node, target)
    return graph


def _postponable(lam: Nba, bad: Nfa, w: LassoWord, env, outputs) -> bool:
    graph = _partner_graph(lam, bad, w, env, outputs)
    live = _live_nodes(graph, {n for n in graph if n[0] in lam.accepting})
    safe = graph.subgraph(n for n in graph if n[2] not in bad.accepting)
    start = (lam.initial, 0, bad.initial)
    if start not in safe:
        return False
    reachable = nx.descendants(safe, start) | {start}
    return any(component & live for component in nontrivial_sccs(safe.subgraph(reachable)))


def check_uniformity_capped(phi_p, arch: Architecture, process: str,
                            config: Optional[ToolConfig] = None,
                            tb: Optional[TbDistAutomaton] = None) -> UniformityVerdict:
    config = config or get_tool_config()
    logger.info(f"Checking uniformity for {process}...")
    tb = tb or build_tb_dist_automaton(phi_p, arch, process, config)
    if tb.empty:
        return UniformityVerdict(UNIFORM, reason="the relation is empty")
    if tb.prefix_determined:
        return UniformityVerdict(UNIFORM, reason=f"determined by prefixes of length {tb.depth}")

    env = tb.env
    outputs = tuple(sorted(arch.outputs(process)))
    variables = tuple(sorted(set(env) | set(outputs)))
    bad = bad_prefix_nfa(phi_p, variables)
    for w in enumerate_lassos(variables, config.uniformity_stem, config.uniformity_loop):
        if not eval_ltl(w, phi_p):
            continue
        if _postponable(tb.lambda_nba, bad, w, env, outputs):
            witness = (project(w, env), project(w, outputs))
            logger.info(f"Non-uniform for {process}: {witness[0]} with outputs {witness[1]}")
            return UniformityVerdict(NON_UNIFORM, witness=witness,
                                     reason="partners can postpone their violation indefinitely")
    return UniformityVerdict(
        INCONCLUSIVE,
        reason=f"no witness within stem {config.uniformity_stem} and loop {config.uniformity_loop}")
