"""Class decoder: turns what the receiver observes of the sender into class tokens.

The decoder tracks hypotheses (sender state, environment prefix) consistent
with the receiver's inputs so far. As soon as every hypothesis belongs to a
single information class it raises that class's token for one round and
falls silent.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from automata.emptiness import nontrivial_sccs
from config import ToolConfig, get_tool_config
from errors import ArchitectureError, CompositionCapError, DecoderError
from spec_model.architecture import Architecture
from synthesis.machine import MooreMachine

logger = logging.getLogger(__name__)

_DONE = "done"
_VOID = "void"


@dataclass(frozen=True)
class ClassDecoder:
    machine: MooreMachine
    classes: tuple
    sender_process: str
    receiver_process: str
    hypotheses: tuple

    @property
    def tokens(self) -> tuple:
        return tuple(info.token for info in self.classes)

    def token_round(self, observations) -> Optional[tuple]:
        """(round, token) of the first token raised along ``observations``, if any."""
        for k, label in enumerate(self.machine.outputs_on(observations)):
            if label:
                (token,) = label
                return k, token
        return None


def _sender_process(sender: MooreMachine, arch: Architecture) -> str:
    for process in arch.processes:
        if frozenset(sender.outputs) == arch.outputs(process):
            return process
    raise ArchitectureError(f"Sender outputs {list(sender.outputs)} match no process")


def _prefix_classes(classes, env, depth) -> dict:
    """Classes still possible after each environment prefix of length at most ``depth``."""
    possible = {}
    for info in classes:
        for word in info.words:
            for i in range(depth + 1):
                possible.setdefault(word[:i], set()).add(info.index)
    return {prefix: frozenset(found) for prefix, found in possible.items()}


def build_class_decoder(sender: MooreMachine, classes, arch: Architecture,
                        config: Optional[ToolConfig] = None,
                        sender_process: Optional[str] = None) -> ClassDecoder:
    config = config or get_tool_config()
    classes = tuple(classes)
    sender_process = sender_process or _sender_process(sender, arch)
    receiver = arch.other(sender_process)
    if not set(sender.inputs) <= arch.outputs_env:
        raise ArchitectureError(f"Sender {sender_process} must read environment outputs only "
                                f"to be decoded, it reads {list(sender.inputs)}")
    env = classes[0].env
    depth = classes[0].depth
    possible = _prefix_classes(classes, env, depth)
    observed = tuple(sorted(arch.inputs(receiver)))
    env_letters = [frozenset(name for i, name in enumerate(env) if mask >> i & 1)
                   for mask in range(1 << len(env))]
    tokens = {info.index: info.token for info in classes}

    def candidates(hypotheses) -> frozenset:
        return frozenset().union(*(possible[prefix] for _, prefix in hypotheses)) if hypotheses else frozenset()

    def step(hypotheses, observation):
        following = set()
        for (state, prefix), (mask, x) in itertools.product(hypotheses, enumerate(env_letters)):
            if (x | sender.labels[state]) & set(observed) != observation:
                continue
            extended = prefix + (mask,) if len(prefix) < depth else prefix
            following.add((sender.step(state, x), extended))
        return frozenset(following)

    start = frozenset({(sender.initial, ())})
    index = {start: 0}
    order = [start]
    rows = {}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        row = []
        for mask in range(1 << len(observed)):
            if key in (_DONE, _VOID):
                target = key
            elif len(candidates(key)) == 1:
                target = _DONE
            else:
                observation = frozenset(n for i, n in enumerate(observed) if mask >> i & 1)
                target = step(key, observation) or _VOID
            if target not in index:
                if len(index) >= config.decoder_cap:
                    raise CompositionCapError(f"Class decoder exceeds {config.decoder_cap} states")
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows[key] = tuple(row)

    labels = []
    for key in order:
        found = candidates(key) if key not in (_DONE, _VOID) else frozenset()
        labels.append(frozenset({tokens[next(iter(found))]}) if len(found) == 1 else frozenset())

    undecided = [i for i, key in enumerate(order) if key not in (_DONE, _VOID) and len(candidates(key)) > 1]
    graph = nx.DiGraph()
    graph.add_nodes_from(undecided)
    for i in undecided:
        for target in rows[order[i]]:
            if target in graph:
                graph.add_edge(i, target)
    stuck = list(nontrivial_sccs(graph))
    if stuck:
        hypotheses = sorted(order[min(stuck[0])], key=repr)
        raise DecoderError("sender does not reveal class",
                           [f"{sender_process} keeps hypotheses {hypotheses} indistinguishable "
                            f"for {receiver} forever"])

    names = tuple(key if key in (_DONE, _VOID) else f"d{i}" for i, key in enumerate(order))
    machine = MooreMachine(observed, tuple(sorted(tokens.values())), tuple(labels),
                           tuple(rows[key] for key in order), names)
    logger.info(f"Class decoder for {receiver}: {machine.num_states} states, {len(classes)} classes")
    return ClassDecoder(machine, classes, sender_process, receiver,
                        tuple(None if key in (_DONE, _VOID) else key for key in order))
