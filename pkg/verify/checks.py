"""Model checking of machines against trace and pair properties.

Every check goes through the automata kernel: the machine's trace (or trace
pair) automaton is intersected with an automaton of violations, and any
witness is replayed against the reference semantics before it is reported.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Optional, Union

from automata.complement import complement_nba_bounded
from automata.emptiness import is_empty, lasso_member
from automata.nba import Nba
from automata.operations import product
from automata.translate import ltl_to_nba
from composition.system import ComposedSystem
from config import ToolConfig, get_tool_config
from errors import AlphabetMismatchError, AnalysisError
from infoflow.ifa import IfaAutomaton
from infoflow.locality import hyper_objective, locality_violation_automaton
from infoflow.tb_dist import TbDistAutomaton
from infoflow.tb_ifa import TbIfaAutomaton
from spec_model.architecture import Architecture
from spec_model.ltl import Not, atoms, format_ltl
from spec_model.semantics import eval_ltl
from spec_model.words import pair_variables, pair_word, split_pair
from synthesis.machine import MooreMachine, pair_language, trace_language
from verify.verdict import Verdict, fails, holds, inconclusive

logger = logging.getLogger(__name__)

Checked = Union[MooreMachine, ComposedSystem]


def _machine(m: Checked) -> MooreMachine:
    return m.machine if isinstance(m, ComposedSystem) else m


def model_check(m: Checked, phi, name: Optional[str] = None) -> Verdict:
    machine = _machine(m)
    name = name or f"satisfies {format_ltl(phi)}"
    extra = atoms(phi) - machine.variables
    if extra:
        raise AlphabetMismatchError(f"{format_ltl(phi)} mentions {sorted(extra)} outside the machine")
    variables = tuple(sorted(machine.variables))
    check = is_empty(product(trace_language(machine, variables), ltl_to_nba(Not(phi), variables)))
    if check.empty:
        return holds(name)
    if eval_ltl(check.witness, phi):
        raise AnalysisError(f"Counterexample for {name} does not replay", [str(check.witness)])
    logger.info(f"{name} fails on {check.witness}")
    return fails(name, check.witness)


def check_pair_violation(m: Checked, violation: Nba, name: str) -> Verdict:
    """No pair of machine traces is accepted by ``violation``."""
    machine = _machine(m)
    check = is_empty(product(pair_language(machine, violation.variables), violation))
    if check.empty:
        if violation.incomplete:
            return inconclusive(name, "violation automaton under-approximated by bounded complementation")
        return holds(name)
    if not lasso_member(violation, check.witness):
        raise AnalysisError(f"Counterexample for {name} does not replay", [str(check.witness)])
    logger.info(f"{name} fails on {check.witness}")
    return fails(name, split_pair(check.witness))


def check_2hyper(m: Checked, body, name: Optional[str] = None) -> Verdict:
    """Every pair of machine traces satisfies ``body`` (atoms ``x@1``/``x@2``)."""
    machine = _machine(m)
    name = name or f"all pairs satisfy {format_ltl(body)}"
    variables = tuple(sorted(pair_variables(machine.variables)))
    extra = atoms(body) - set(variables)
    if extra:
        raise AlphabetMismatchError(f"{format_ltl(body)} mentions {sorted(extra)} outside the machine")
    check = is_empty(product(pair_language(machine, variables), ltl_to_nba(Not(body), variables)))
    if check.empty:
        return holds(name)
    if eval_ltl(check.witness, body):
        raise AnalysisError(f"Counterexample for {name} does not replay", [str(check.witness)])
    return fails(name, split_pair(check.witness))


def check_ifa(h: Checked, ifa: IfaAutomaton, arch: Architecture,
              config: Optional[ToolConfig] = None) -> Verdict:
    config = config or get_tool_config()
    name = f"information flow assumption of {ifa.process}"
    violation = complement_nba_bounded(ifa.inner, config.rank_cap_for(ifa.inner.num_states))
    verdict = check_pair_violation(h, violation, name)
    if not verdict.holds and verdict.counterexample is not None:
        left, right = verdict.counterexample
        if lasso_member(ifa.inner, pair_word(left, right)):
            raise AnalysisError(f"Counterexample for {name} satisfies the assumption")
    return verdict


def check_tb_ifa(h_p: Checked, tb_ifa: TbIfaAutomaton) -> Verdict:
    return check_pair_violation(h_p, tb_ifa.violation,
                                f"time-bounded information flow assumption of {tb_ifa.process}")


def check_local_correctness(h_p: MooreMachine, phi_p, process: str, tb_p: TbDistAutomaton,
                            tb_ifa_q: TbIfaAutomaton, arch: Architecture) -> list:
    """Specification, locality and the partner's time-bounded assumption, as separate verdicts."""
    return [
        model_check(h_p, hyper_objective(phi_p, tb_p, arch),
                    f"hyper implementation of {process} satisfies its specification"),
        check_pair_violation(h_p, locality_violation_automaton(tb_p, arch, process),
                             f"locality of {process}"),
        check_tb_ifa(h_p, tb_ifa_q),
    ]


def check_knowledge_consistency(h: ComposedSystem, process: str, depth: int) -> Verdict:
    """Every knowledge set up to ``depth`` shows a single output of ``process``."""
    name = f"knowledge consistency of {process} up to depth {depth}"
    machine = h.machine
    outputs = h.arch.outputs(process)
    letters = [machine.input_valuation(mask) for mask in range(1 << len(machine.inputs))]
    start = frozenset({machine.initial})
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        states, word = queue.popleft()
        shown = {machine.labels[s] & outputs for s in states}
        if len(shown) > 1:
            return fails(name, word, f"outputs {sorted(sorted(o) for o in shown)}")
        if len(word) == depth:
            continue
        following = {}
        for s in states:
            for x in letters:
                observed = h.observation(process, s, x)
                following.setdefault(observed, set()).add(machine.transitions[s][machine.input_mask(x)])
        for observed, targets in following.items():
            targets = frozenset(targets)
            if targets not in seen:
                seen.add(targets)
                queue.append((targets, word + (observed,)))
    return holds(name)


def check_prefix_equality(h: ComposedSystem, s_p: MooreMachine, s_q: MooreMachine, depth: int) -> Verdict:
    """The composed output equals the union of the local strategies' outputs on their local words."""
    name = f"local strategies reproduce the composition up to depth {depth}"
    arch = h.arch
    machine = h.machine
    letters = [machine.input_valuation(mask) for mask in range(1 << len(machine.inputs))]
    start = (machine.initial, s_p.initial, s_q.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (hs, ps, qs), word = queue.popleft()
        if machine.labels[hs] != s_p.labels[ps] | s_q.labels[qs]:
            return fails(name, word, "composed output differs from the local strategies")
        if len(word) == depth:
            continue
        for x in letters:
            node = (machine.transitions[hs][machine.input_mask(x)],
                    s_p.step(ps, h.observation(arch.p, hs, x)),
                    s_q.step(qs, h.observation(arch.q, hs, x)))
            if node not in seen:
                seen.add(node)
                queue.append((node, word + (x,)))
    return holds(name)
