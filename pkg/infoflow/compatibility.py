"""Distinguishability of environment traces.

Two environment traces are distinguishable for a process when no single
output sequence of that process satisfies its specification on both. The
relation is never built explicitly: the compatibility automaton accepts the
pairs outside it, and membership questions go through non-membership.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from automata.emptiness import lasso_member
from automata.nba import Nba
from automata.operations import exists_project, reduce, self_compose
from automata.translate import ltl_to_nba
from errors import AlphabetMismatchError, UnsupportedFragmentError
from spec_model.architecture import Architecture
from spec_model.ltl import atoms
from spec_model.words import LassoWord, pair_variables, pair_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompatibilityAutomaton:
    inner: Nba
    process: str


def check_process_formula(phi_p, arch: Architecture, process: str):
    """phi_p must be a trace formula over the outputs of ``process`` and the environment."""
    found = atoms(phi_p)
    indexed = sorted(name for name in found if "@" in name)
    if indexed:
        raise UnsupportedFragmentError(f"Specification of {process} must be a trace formula",
                                       [f"pair atom {name}" for name in indexed])
    extra = found - arch.outputs(process) - arch.outputs_env
    if extra:
        raise AlphabetMismatchError(f"Specification of {process} mentions {sorted(extra)} outside its scope")


def build_compatibility_automaton(phi_p, arch: Architecture, process: str) -> CompatibilityAutomaton:
    check_process_formula(phi_p, arch, process)
    logger.info(f"Building compatibility automaton for {process}...")
    outputs = arch.outputs(process)
    spec_automaton = ltl_to_nba(phi_p, outputs | arch.outputs_env)
    shared = self_compose(spec_automaton, equal_on=outputs)
    inner = reduce(exists_project(shared, pair_variables(outputs)))
    logger.info(f"Compatibility automaton for {process}: {inner.num_states} states")
    return CompatibilityAutomaton(inner, process)


def delta_member(c: CompatibilityAutomaton, left: LassoWord, right: LassoWord) -> bool:
    return not lasso_member(c.inner, pair_word(left, right))
