"""Bounded-synthesis constraints.

A machine with ``bound`` states is described by ``tau(s, m, t)`` (input letter
m moves s to t, exactly one t) and ``out(s, o)`` (output o holds in s). For
every violation automaton the run graph of its dual universal co-Büchi
automaton on the machine (self-composed, for pair objectives) is annotated:
``lam(q, ss)`` marks reachable nodes and an order-encoded rank grows strictly
on every rejecting node. A valid annotation exists iff no run of the violation
automaton over a machine trace (or trace pair) is accepting.
"""

from __future__ import annotations

import itertools
import logging
from typing import Optional

from pysat.card import CardEnc, EncType

from automata.nba import TRUE_GUARD, Guard, Nba, cube_letters
from synthesis.machine import MooreMachine
from synthesis.problem import SynthesisProblem
from synthesis.solver import CnfInstance

logger = logging.getLogger(__name__)


def _tau(cnf: CnfInstance, s, m, t) -> int:
    return cnf.var(("tau", s, m, t))


def _out(cnf: CnfInstance, s, o) -> int:
    return cnf.var(("out", s, o))


def _encode_skeleton(cnf: CnfInstance, problem: SynthesisProblem, bound: int):
    width = 1 << len(problem.inputs)
    for s in range(bound):
        for m in range(width):
            row = [_tau(cnf, s, m, t) for t in range(bound)]
            cnf.add(row)
            cnf.extend(CardEnc.atmost(lits=row, bound=1, encoding=EncType.pairwise).clauses)
        for o in range(len(problem.outputs)):
            _out(cnf, s, o)
    # every state but the first is entered from a lower-numbered state
    for s in range(1, bound):
        cnf.add(_tau(cnf, p, m, s) for p in range(s) for m in range(width))
    index = {name: o for o, name in enumerate(problem.outputs)}
    for name, value in problem.fixed_outputs:
        for s in range(bound):
            literal = _out(cnf, s, index[name])
            cnf.add([literal if value else -literal])


def _split_guards(bad: Nba, problem: SynthesisProblem, copies: int) -> list:
    """Per state: (per-copy input cube letters, output literals, target) for every edge."""
    inputs = {name: i for i, name in enumerate(problem.inputs)}
    outputs = {name: o for o, name in enumerate(problem.outputs)}
    width = len(problem.inputs)
    slots = []
    for variable in bad.variables:
        if copies == 1:
            copy, name = 0, variable
        else:
            name, _, tag = variable.rpartition("@")
            copy = int(tag) - 1
        if name in inputs:
            slots.append((copy, "in", inputs[name]))
        else:
            slots.append((copy, "out", outputs[name]))

    result = []
    for state in range(bad.num_states):
        edges = []
        for guard, target in bad.edges[state]:
            cubes = [[0, 0] for _ in range(copies)]
            literals = []
            for bit, (copy, kind, index) in enumerate(slots):
                for value, mask in ((True, guard.pos), (False, guard.neg)):
                    if not mask >> bit & 1:
                        continue
                    if kind == "in":
                        cubes[copy][0 if value else 1] |= 1 << index
                    else:
                        literals.append((copy, index, value))
            letters = [list(cube_letters(Guard(pos, neg), width)) for pos, neg in cubes]
            edges.append((letters, literals, target))
        result.append(edges)
    return result


def _encode_annotation(cnf: CnfInstance, problem: SynthesisProblem, bad: Nba, bound: int,
                       copies: int, tag):
    rejecting = set(bad.accepting)
    if not rejecting:
        return
    # a rejecting state with a true self-loop must never be reached
    doomed = {q for q in rejecting if (TRUE_GUARD, q) in bad.edges[q]}
    ranked = rejecting - doomed
    nodes = list(itertools.product(range(bound), repeat=copies))
    width = len(ranked) * len(nodes)

    def lam(q, ss):
        return cnf.var((tag, "lam", q, ss))

    def rank(q, ss, j):
        return cnf.var((tag, "rank", q, ss, j))

    start = lam(bad.initial, nodes[0])
    cnf.add([start])
    if bad.initial in doomed:
        cnf.add([-start])
        return
    for q in range(bad.num_states):
        if q in doomed:
            continue
        for ss in nodes:
            for j in range(1, width):
                cnf.add([-rank(q, ss, j), rank(q, ss, j - 1)])

    edges = set()
    for q, out_edges in enumerate(_split_guards(bad, problem, copies)):
        if q in doomed:
            continue
        for letters, literals, target in out_edges:
            for ss in nodes:
                mismatch = [-_out(cnf, ss[c], o) if value else _out(cnf, ss[c], o)
                            for c, o, value in literals]
                for ms in itertools.product(*letters):
                    for tt in nodes:
                        premise = [-lam(q, ss)] + [-_tau(cnf, ss[c], ms[c], tt[c]) for c in range(copies)]
                        if target in doomed:
                            cnf.add(premise + mismatch)
                            continue
                        edge = cnf.var((tag, "edge", q, ss, target, tt))
                        cnf.add(premise + mismatch + [edge])
                        edges.add((q, ss, target, tt))

    for q, ss, target, tt in edges:
        edge = cnf.var((tag, "edge", q, ss, target, tt))
        cnf.add([-edge, lam(target, tt)])
        if target in ranked:
            cnf.add([-edge, rank(target, tt, 0)])
            for j in range(width - 1):
                cnf.add([-edge, -rank(q, ss, j), rank(target, tt, j + 1)])
            cnf.add([-edge, -rank(q, ss, width - 1)])
        else:
            for j in range(width):
                cnf.add([-edge, -rank(q, ss, j), rank(target, tt, j)])


def encode_run_graph(problem: SynthesisProblem, bound: int) -> CnfInstance:
    if bound < 1:
        raise ValueError("The bound must be at least 1")
    cnf = CnfInstance()
    _encode_skeleton(cnf, problem, bound)
    for k, bad in enumerate(problem.trace_violations):
        _encode_annotation(cnf, problem, bad, bound, 1, ("trace", k))
    for k, bad in enumerate(problem.pair_violations):
        _encode_annotation(cnf, problem, bad, bound, 2, ("pair", k))
    logger.info(f"Encoded {problem.name} at bound {bound}: "
                f"{cnf.num_vars} variables, {cnf.num_clauses} clauses")
    return cnf


def decode_machine(cnf: CnfInstance, model: frozenset, problem: SynthesisProblem,
                   bound: int) -> Optional[MooreMachine]:
    labels = []
    rows = []
    for s in range(bound):
        labels.append(frozenset(name for o, name in enumerate(problem.outputs)
                                if _out(cnf, s, o) in model))
        row = []
        for m in range(1 << len(problem.inputs)):
            (target,) = [t for t in range(bound) if _tau(cnf, s, m, t) in model]
            row.append(target)
        rows.append(tuple(row))
    return MooreMachine(problem.inputs, problem.outputs, tuple(labels), tuple(rows))
