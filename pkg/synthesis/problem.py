"""Synthesis problems: a machine interface and the violations it must avoid.

Objectives are given negated, as Büchi automata accepting violations. Read
as universal co-Büchi automata they accept exactly the correct behaviours.
Trace violations range over the machine's inputs and outputs, pair
violations over the ``x@1``/``x@2`` copies of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from automata.nba import Nba, UcaAutomaton
from automata.operations import exists_project, reduce
from automata.translate import ltl_to_nba
from errors import AlphabetMismatchError
from spec_model.ltl import Not, atoms, format_ltl
from spec_model.words import pair_variables


@dataclass(frozen=True)
class SynthesisProblem:
    inputs: tuple
    outputs: tuple
    trace_violations: tuple = ()
    pair_violations: tuple = ()
    fixed_outputs: tuple = ()
    name: str = "machine"
    description: str = ""

    def __post_init__(self):
        if set(self.inputs) & set(self.outputs):
            raise AlphabetMismatchError(
                f"{self.name}: inputs and outputs overlap on {sorted(set(self.inputs) & set(self.outputs))}")
        variables = self.variables
        for bad in self.trace_violations:
            if not set(bad.variables) <= variables:
                raise AlphabetMismatchError(
                    f"{self.name}: trace objective over {sorted(set(bad.variables) - variables)} "
                    f"outside the machine")
        pairs = pair_variables(variables)
        for bad in self.pair_violations:
            if not set(bad.variables) <= pairs:
                raise AlphabetMismatchError(
                    f"{self.name}: pair objective over {sorted(set(bad.variables) - pairs)} "
                    f"outside the machine")

    @property
    def variables(self) -> frozenset:
        return frozenset(self.inputs) | frozenset(self.outputs)

    def universal_objectives(self) -> list:
        return [UcaAutomaton.dual_of(bad) for bad in self.trace_violations + self.pair_violations]


def _check_atoms(phi, allowed, name):
    extra = atoms(phi) - set(allowed)
    if extra:
        raise AlphabetMismatchError(f"{name}: {format_ltl(phi)} mentions {sorted(extra)} outside the machine")


def fit_trace_violation(bad: Nba, variables) -> Nba:
    """Project away variables the machine does not read; they range over every value."""
    free = [v for v in bad.variables if v not in set(variables)]
    return reduce(exists_project(bad, free)) if free else bad


def fit_pair_violation(bad: Nba, variables) -> Nba:
    """Project away pair variables the machine does not have."""
    pairs = pair_variables(variables)
    free = [v for v in bad.variables if v not in pairs]
    return reduce(exists_project(bad, free)) if free else bad


def ltl_problem(phi, inputs, outputs, name: str = "machine", fixed_outputs=()) -> SynthesisProblem:
    inputs, outputs = tuple(sorted(inputs)), tuple(sorted(outputs))
    _check_atoms(phi, set(inputs) | set(outputs), name)
    bad = ltl_to_nba(Not(phi), tuple(sorted(set(inputs) | set(outputs))))
    return SynthesisProblem(inputs, outputs, (bad,), (), tuple(fixed_outputs), name, format_ltl(phi))


def hyper2_problem(inputs, outputs, trace=(), bodies=(), pair_violations=(),
                   name: str = "machine", description: Optional[str] = None) -> SynthesisProblem:
    """Trace formulas, pair bodies over indexed atoms, and prebuilt pair violations."""
    inputs, outputs = tuple(sorted(inputs)), tuple(sorted(outputs))
    variables = set(inputs) | set(outputs)
    trace_bad = []
    for phi in trace:
        alphabet = tuple(sorted(variables | atoms(phi)))
        trace_bad.append(fit_trace_violation(ltl_to_nba(Not(phi), alphabet), variables))
    pair_bad = []
    pairs = pair_variables(variables)
    for body in bodies:
        _check_atoms(body, pairs, name)
        pair_bad.append(ltl_to_nba(Not(body), tuple(sorted(pairs))))
    pair_bad.extend(fit_pair_violation(bad, variables) for bad in pair_violations)
    if description is None:
        description = " & ".join(format_ltl(f) for f in list(trace) + list(bodies))
    return SynthesisProblem(inputs, outputs, tuple(trace_bad), tuple(pair_bad), (), name, description)
