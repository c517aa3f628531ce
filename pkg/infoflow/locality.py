"""Locality of hyper implementations.

A hyper implementation of p sees the whole environment, so it must not use
what p cannot observe. Two runs must produce equal outputs until the left
run receives the marker or p's inputs differ (for time-bounded
distinguishable environment pairs), and until p's inputs or markers differ
(for all other pairs). The automaton built here accepts the violating pairs.
"""

from __future__ import annotations

import logging

from automata.nba import TRUE_GUARD, Nba, lift
from automata.operations import product, union
from automata.pairs import conjoin_covers, differ_cover, equal_cover, first_copy
from infoflow.classes import words_formula
from infoflow.tb_dist import TbDistAutomaton
from spec_model.architecture import Architecture
from spec_model.ltl import Atom, Finally, Implies
from spec_model.words import pair_variables

logger = logging.getLogger(__name__)


def _released_difference(variables, condition, outputs) -> Nba:
    """``condition`` holds with equal outputs until the outputs differ."""
    waiting = conjoin_covers(condition, equal_cover(variables, outputs))
    edges = (
        tuple((g, 0) for g in waiting) + tuple((g, 1) for g in differ_cover(variables, outputs)),
        ((TRUE_GUARD, 1),),
    )
    return Nba(tuple(variables), edges, frozenset({1}))


def locality_variables(arch: Architecture, process: str) -> frozenset:
    return (arch.outputs_env | arch.inputs(process) | {arch.marker(process)}
            | arch.outputs(process))


def locality_violation_automaton(tb: TbDistAutomaton, arch: Architecture, process: str) -> Nba:
    marker = arch.marker(process)
    inputs = arch.inputs(process)
    outputs = arch.outputs(process)
    variables = tuple(sorted(pair_variables(locality_variables(arch, process))))

    same_inputs = equal_cover(variables, inputs)
    before_marker = conjoin_covers(same_inputs, first_copy(variables, marker, False))
    same_marker = conjoin_covers(same_inputs, equal_cover(variables, {marker}))

    distinguishable = product(lift(tb.lambda_nba, variables),
                              _released_difference(variables, before_marker, outputs))
    compatible = product(lift(tb.non_lambda, variables),
                         _released_difference(variables, same_marker, outputs))
    result = union(distinguishable, compatible)
    logger.info(f"Locality violation automaton for {process}: {result.num_states} states")
    return result


def delivery_assumption(tb: TbDistAutomaton, arch: Architecture):
    """Environment prefixes with a distinguishable partner eventually see the marker.

    The partner's time-bounded assumption guarantees the marker on the left
    trace of every distinguishable pair. Returns None when the relation is
    empty or not determined by prefixes.
    """
    if not tb.prefix_determined:
        if not tb.empty:
            logger.warning(f"Relation of {tb.process} is not prefix-determined, "
                           f"hyper objective keeps the plain specification")
        return None
    left = {u for u, _ in tb.prefix_pairs}
    if not left:
        return None
    return Implies(words_formula(left, tb.env, tb.depth), Finally(Atom(arch.marker(tb.process))))


def hyper_objective(phi_p, tb: TbDistAutomaton, arch: Architecture):
    """Trace objective of a hyper implementation: the specification once the marker is delivered."""
    assumption = delivery_assumption(tb, arch)
    return phi_p if assumption is None else Implies(assumption, phi_p)
