"""Knowledge sets and local strategies.

The knowledge set of a local input word v holds the environment words of the
same length that make the process read v. The local strategy answers v with
the composed output of any such word, restricted to the process outputs;
words no environment produces get the empty output.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Optional

from config import ToolConfig, get_tool_config
from errors import CompositionCapError, LocalityViolationError
from composition.system import ComposedSystem
from spec_model.words import format_valuation
from synthesis.machine import MooreMachine

logger = logging.getLogger(__name__)


def _env_letters(h: ComposedSystem) -> list:
    env = h.machine.inputs
    return [frozenset(name for i, name in enumerate(env) if mask >> i & 1) for mask in range(1 << len(env))]


def knowledge_set(h: ComposedSystem, process: str, v, depth: Optional[int] = None) -> frozenset:
    """Environment words w with |w| = |v| whose local input word for ``process`` is v."""
    v = tuple(frozenset(letter) for letter in v)
    if depth is not None and depth < len(v):
        raise ValueError(f"Depth {depth} is shorter than the local word")
    letters = _env_letters(h)
    frontier = [((), h.machine.initial)]
    for observed in v:
        following = []
        for word, state in frontier:
            for x in letters:
                if h.observation(process, state, x) == observed:
                    following.append((word + (x,), h.machine.transitions[state][h.machine.input_mask(x)]))
        frontier = following
    return frozenset(word for word, _ in frontier)


def _format_word(word) -> str:
    return "".join(f"({format_valuation(letter)})" for letter in word) or "ε"


def extract_local_strategy(h: ComposedSystem, process: str,
                           config: Optional[ToolConfig] = None) -> MooreMachine:
    """Knowledge-set construction over the composed system; raises if outputs disagree."""
    config = config or get_tool_config()
    inputs = tuple(sorted(h.arch.inputs(process)))
    outputs = h.arch.outputs(process)
    letters = _env_letters(h)
    machine = h.machine

    start = frozenset({machine.initial})
    index = {start: 0}
    order = [start]
    paths = {start: ()}
    rows = []
    queue = deque([start])
    while queue:
        states = queue.popleft()
        row = []
        for mask in range(1 << len(inputs)):
            observed = frozenset(name for i, name in enumerate(inputs) if mask >> i & 1)
            target = frozenset(machine.transitions[s][machine.input_mask(x)]
                               for s in states for x in letters
                               if h.observation(process, s, x) == observed)
            if target not in index:
                if len(index) >= config.composition_cap:
                    raise CompositionCapError(f"Local strategy of {process} exceeds "
                                              f"{config.composition_cap} knowledge states")
                index[target] = len(order)
                order.append(target)
                paths[target] = paths[states] + (observed,)
                queue.append(target)
            row.append(index[target])
        rows.append(tuple(row))

    labels = []
    for states in order:
        shown = {machine.labels[s] & outputs for s in states}
        if len(shown) > 1:
            word = paths[states]
            raise LocalityViolationError(
                f"Knowledge set of {process} after {_format_word(word)} has disagreeing outputs "
                f"{sorted(format_valuation(o) for o in shown)}: locality or the information flow "
                f"assumption is violated", local_word=word)
        labels.append(shown.pop() if shown else frozenset())

    names = tuple(f"k{i}" for i in range(len(order)))
    local = MooreMachine(inputs, tuple(sorted(outputs)), tuple(labels), tuple(rows), names)
    logger.info(f"Extracted local strategy of {process}: {local.num_states} knowledge states")
    return local.minimize()
