"""Locality check of a hyper implementation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from automata.emptiness import is_empty, lasso_member
from automata.operations import product
from errors import AnalysisError
from infoflow.locality import locality_violation_automaton
from infoflow.tb_dist import TbDistAutomaton
from spec_model.architecture import Architecture
from spec_model.words import split_pair
from synthesis.machine import MooreMachine, pair_language

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalityResult:
    ok: bool
    counterexample: Optional[tuple] = None
    inconclusive: bool = False


def check_locality(h_p: MooreMachine, tb: TbDistAutomaton, arch: Architecture) -> LocalityResult:
    process = tb.process
    violation = locality_violation_automaton(tb, arch, process)
    pairs = pair_language(h_p, violation.variables)
    check = is_empty(product(pairs, violation))
    if check.empty:
        if violation.incomplete:
            logger.info(f"Locality of {process}: no violation found, Λ automaton is incomplete")
            return LocalityResult(False, inconclusive=True)
        logger.info(f"Locality of {process}: ok")
        return LocalityResult(True)
    if not lasso_member(violation, check.witness):
        raise AnalysisError(f"Locality counterexample for {process} does not replay",
                            [str(check.witness)])
    left, right = split_pair(check.witness)
    logger.info(f"Locality of {process} violated by {left} / {right}")
    return LocalityResult(False, (left, right))
