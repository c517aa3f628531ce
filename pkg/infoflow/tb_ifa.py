"""The time-bounded information flow assumption, encoded with a marker.

The partner raises the marker ``t`` on p's inputs. A pair of traces satisfies
the assumption when the environment parts are not time-bounded
distinguishable, or when the left trace raises ``t`` and p's inputs differ no
later than the first ``t`` of the left trace. A declared marker is one of
those inputs; a fresh one only delimits the window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from automata.nba import TRUE_GUARD, Nba, lift
from automata.operations import product, union
from automata.pairs import conjoin_covers, differ_cover, equal_cover, first_copy
from infoflow.tb_dist import TbDistAutomaton
from spec_model.architecture import Architecture
from spec_model.words import pair_variables

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TbIfaAutomaton:
    inner: Nba
    violation: Nba
    process: str
    marker: str

    @property
    def incomplete(self) -> bool:
        return self.violation.incomplete


def observed_variables(arch: Architecture, process: str) -> frozenset:
    return arch.outputs_env | arch.inputs(process) | {arch.marker(process)}


def _edges(*outgoing):
    return tuple(tuple((g, target) for guards, target in out for g in guards) for out in outgoing)


def marked_difference(variables, observed, marker) -> Nba:
    """Left trace raises the marker, and ``observed`` differs at or before its first occurrence."""
    differ = differ_cover(variables, observed)
    equal = equal_cover(variables, observed)
    raised, lowered = first_copy(variables, marker, True), first_copy(variables, marker, False)
    edges = _edges(
        [(conjoin_covers(differ, raised), 2), (conjoin_covers(differ, lowered), 1),
         (conjoin_covers(equal, lowered), 0)],
        [(raised, 2), (lowered, 1)],
        [([TRUE_GUARD], 2)],
    )
    return Nba(tuple(variables), edges, frozenset({2}))


def no_marked_difference(variables, observed, marker) -> Nba:
    """Complement of marked_difference, a safety automaton."""
    differ = differ_cover(variables, observed)
    equal = equal_cover(variables, observed)
    raised, lowered = first_copy(variables, marker, True), first_copy(variables, marker, False)
    edges = _edges(
        [(conjoin_covers(equal, lowered), 0), (conjoin_covers(equal, raised), 2),
         (conjoin_covers(differ, lowered), 1)],
        [(lowered, 1)],
        [([TRUE_GUARD], 2)],
    )
    return Nba(tuple(variables), edges, frozenset({0, 1, 2}))


def build_tb_ifa_automaton(tb: TbDistAutomaton, arch: Architecture) -> TbIfaAutomaton:
    process = tb.process
    marker = arch.marker(process)
    observed = arch.inputs(process)
    variables = tuple(sorted(pair_variables(observed_variables(arch, process))))

    inner = union(lift(tb.non_lambda, variables), marked_difference(variables, observed, marker))
    violation = product(lift(tb.lambda_nba, variables), no_marked_difference(variables, observed, marker))
    logger.info(f"Time-bounded assumption automaton for {process}: {inner.num_states} states, "
                f"violation {violation.num_states} states")
    return TbIfaAutomaton(inner, violation, process, marker)
