"""Synchronous composition of Moore machines.

Every component reads, in each round, the environment letter together with
the labels all components show in that round. Labels depend only on earlier
rounds, so the wiring has no cycles. The composed machine reads the
environment outputs and shows the process outputs.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

from config import ToolConfig, get_tool_config
from errors import AlphabetMismatchError, CompositionCapError
from spec_model.architecture import Architecture
from synthesis.machine import MooreMachine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComposedSystem:
    machine: MooreMachine
    components: tuple
    provenance: tuple
    arch: Architecture

    @property
    def num_states(self) -> int:
        return self.machine.num_states

    def observation(self, process: str, state: int, env_letter) -> frozenset:
        """What ``process`` reads in a round: environment and partner outputs on its inputs."""
        return (frozenset(env_letter) | self.machine.labels[state]) & self.arch.inputs(process)

    def local_word(self, process: str, env_word) -> tuple:
        states = self.machine.run(env_word)
        return tuple(self.observation(process, s, x) for s, x in zip(states, env_word))

    def output(self, env_word) -> frozenset:
        """The composed output after ``env_word``."""
        return self.machine.outputs_on(env_word)[-1]


def hyper_interface(arch: Architecture, process: str) -> tuple:
    """Inputs and outputs of a hyper implementation of ``process``."""
    other = arch.other(process)
    inputs = arch.outputs_env | arch.inputs(process) | {arch.marker(process)}
    outputs = arch.outputs(process) | {arch.marker(other)}
    return tuple(sorted(inputs)), tuple(sorted(outputs))


def synchronous_product(components, env, outputs, cap: int) -> tuple:
    """Reachable product of ``components`` (name, machine); returns the machine and provenance."""
    env = tuple(sorted(env))
    machines = [m for _, m in components]
    owned = set()
    for name, machine in components:
        clash = owned & set(machine.outputs)
        if clash:
            raise AlphabetMismatchError(f"{name} shares outputs {sorted(clash)} with another component")
        owned |= set(machine.outputs)
    for name, machine in components:
        missing = set(machine.inputs) - owned - set(env)
        if missing:
            raise AlphabetMismatchError(f"Inputs {sorted(missing)} of {name} are never produced")

    start = tuple(m.initial for m in machines)
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        node = queue.popleft()
        shown = frozenset().union(*(m.labels[s] for m, s in zip(machines, node)))
        row = []
        for mask in range(1 << len(env)):
            letter = frozenset(name for i, name in enumerate(env) if mask >> i & 1) | shown
            target = tuple(m.transitions[s][m.input_mask(letter)] for m, s in zip(machines, node))
            if target not in index:
                if len(index) >= cap:
                    raise CompositionCapError(f"Composition exceeds {cap} states")
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(tuple(row))

    outputs = frozenset(outputs)
    labels = tuple(frozenset().union(*(m.labels[s] for m, s in zip(machines, node))) & outputs
                   for node in order)
    names = tuple("(" + ",".join(f"{n}{s}" for (n, _), s in zip(components, node)) + ")" for node in order)
    machine = MooreMachine(env, tuple(sorted(outputs)), labels, tuple(rows), names)
    return machine, tuple(order)


def _check_interface(machine: MooreMachine, inputs, outputs, name):
    if tuple(sorted(machine.inputs)) != tuple(sorted(inputs)) or \
            tuple(sorted(machine.outputs)) != tuple(sorted(outputs)):
        raise AlphabetMismatchError(
            f"{name} reads {list(machine.inputs)} and writes {list(machine.outputs)}, "
            f"expected {sorted(inputs)} and {sorted(outputs)}")


def compose_hyper(h_p: MooreMachine, h_q: MooreMachine, arch: Architecture,
                  config: Optional[ToolConfig] = None) -> ComposedSystem:
    config = config or get_tool_config()
    for process, machine in ((arch.p, h_p), (arch.q, h_q)):
        _check_interface(machine, *hyper_interface(arch, process), f"hyper implementation of {process}")
    outputs = arch.outputs_p | arch.outputs_q
    machine, provenance = synchronous_product([(arch.p, h_p), (arch.q, h_q)], arch.outputs_env,
                                              outputs, config.composition_cap)
    logger.info(f"Composed hyper implementations: {machine.num_states} states")
    return ComposedSystem(machine, (arch.p, arch.q), provenance, arch)


def compose_local(s_p: MooreMachine, s_q: MooreMachine, arch: Architecture,
                  config: Optional[ToolConfig] = None) -> ComposedSystem:
    config = config or get_tool_config()
    for process, machine in ((arch.p, s_p), (arch.q, s_q)):
        _check_interface(machine, arch.inputs(process), arch.outputs(process), f"strategy of {process}")
    machine, provenance = synchronous_product([(arch.p, s_p), (arch.q, s_q)], arch.outputs_env,
                                              arch.outputs_p | arch.outputs_q, config.composition_cap)
    logger.info(f"Composed local strategies: {machine.num_states} states")
    return ComposedSystem(machine, (arch.p, arch.q), provenance, arch)
