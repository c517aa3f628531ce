"""The information flow assumption as a pair automaton.

A pair of traces satisfies the assumption of p when the environment parts are
compatible, or when p's local inputs differ at some position.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from automata.nba import Nba, lift
from automata.operations import differ_automaton, union
from infoflow.compatibility import CompatibilityAutomaton
from spec_model.architecture import Architecture
from spec_model.words import pair_variables

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IfaAutomaton:
    inner: Nba
    process: str

    @property
    def observed(self) -> frozenset:
        return frozenset(v[:-2] for v in self.inner.variables)


def build_ifa_automaton(c: CompatibilityAutomaton, arch: Architecture) -> IfaAutomaton:
    process = c.process
    observed = arch.outputs_env | arch.inputs(process)
    variables = pair_variables(observed)
    compatible = lift(c.inner, variables)
    differ = differ_automaton(variables, arch.inputs(process))
    inner = union(compatible, differ)
    logger.info(f"Information flow assumption automaton for {process}: {inner.num_states} states")
    return IfaAutomaton(inner, process)
