"""End-to-end synthesis: analysis, synthesis per process, composition, extraction, certification.

Hyper mode synthesizes one hyper implementation per process against its
specification, its locality condition and the partner's time-bounded
information flow assumption. Practical mode synthesizes the receiver against
its component specification over class tokens, the sender against its
specification and the receiver's time-bounded assumption, and joins the two
with a class decoder.
"""

from __future__ import annotations

import json
import logging
import re
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from automata.export import dump_automaton
from composition.bundle import HYPER, MODES, PRACTICAL, SolutionBundle
from composition.decoder import build_class_decoder
from composition.knowledge import extract_local_strategy
from composition.practical import compose_practical
from composition.system import compose_hyper, hyper_interface
from config import ToolConfig, get_tool_config
from errors import ArchitectureError, InputError
from infoflow.classes import extract_info_classes
from infoflow.component_spec import build_component_spec
from infoflow.locality import hyper_objective, locality_violation_automaton
from infoflow.tb_dist import build_tb_dist_automaton
from infoflow.tb_ifa import build_tb_ifa_automaton
from spec_model.architecture import Architecture, SystemSpec, check_formula_scope
from synthesis.bounded import UNREALIZABLE_AT_BOUND, bounded_synthesize, bounded_synthesize_hyper2
from synthesis.machine import MooreMachine
from synthesis.problem import SynthesisProblem, ltl_problem
from verify.certify import CertificationReport, certify_end_to_end

logger = logging.getLogger(__name__)

CERTIFIED = "realized+certified"
UNREALIZABLE = UNREALIZABLE_AT_BOUND
CERTIFICATION_FAILED = "certification-failed"


@dataclass
class PipelineResult:
    status: str
    bundle: Optional[SolutionBundle] = None
    report: Optional[CertificationReport] = None
    timings: dict = field(default_factory=dict)
    unrealizable: tuple = ()
    bounds: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def sizes(self) -> dict:
        if self.bundle is None:
            return {}
        return {stem: m.num_states for stem, m in self.bundle.machines().items()}


@contextmanager
def _phase(timings: dict, name: str):
    started = time.perf_counter()
    try:
        yield
    finally:
        timings[name] = timings.get(name, 0.0) + time.perf_counter() - started


def analyze_processes(spec: SystemSpec, config: Optional[ToolConfig] = None) -> dict:
    """Time-bounded distinguishability automaton of every process."""
    config = config or get_tool_config()
    tbs = {}
    for process in spec.arch.processes:
        tb = build_tb_dist_automaton(spec.phi(process), spec.arch, process, config)
        if config.dump_dir:
            dump_automaton(tb.lambda_nba, config.dump_dir, f"lambda_{process}")
            dump_automaton(tb.non_lambda, config.dump_dir, f"non_lambda_{process}")
        tbs[process] = tb
    return tbs


def token_prefix(arch: Architecture, prefix: str = "ic") -> str:
    """A token prefix no architecture variable can be confused with."""
    while any(re.fullmatch(re.escape(prefix) + r"\d+", name) for name in arch.variables):
        prefix += "_"
    return prefix


def practical_roles(spec: SystemSpec, tbs: dict) -> tuple:
    """(sender, receiver): the receiver is the only process that needs information."""
    arch = spec.arch
    needing = [p for p in arch.processes if not tbs[p].empty]
    if len(needing) > 1:
        raise ArchitectureError("Practical mode needs a single receiving process; use hyper mode",
                                [f"{p} needs information from its partner" for p in needing])
    receiver = needing[0] if needing else arch.q
    sender = arch.other(receiver)
    if not arch.inputs(sender) <= arch.outputs_env:
        raise ArchitectureError(f"Practical mode needs a sender reading environment outputs only",
                                [f"{sender} reads {sorted(arch.inputs(sender) - arch.outputs_env)}"])
    return sender, receiver


def _restrict_outputs(machine: MooreMachine, outputs) -> MooreMachine:
    keep = frozenset(outputs)
    return MooreMachine(machine.inputs, tuple(sorted(keep)),
                        tuple(label & keep for label in machine.labels),
                        machine.transitions, machine.names).minimize()


def _synthesize_hyper(spec: SystemSpec, tbs: dict, config: ToolConfig, bound, timings) -> PipelineResult:
    arch = spec.arch
    hyper, bounds, failed = {}, {}, []
    for process in arch.processes:
        partner = arch.other(process)
        inputs, outputs = hyper_interface(arch, process)
        violations = (locality_violation_automaton(tbs[process], arch, process),
                      build_tb_ifa_automaton(tbs[partner], arch).violation)
        with _phase(timings, f"synthesis_{process}"):
            objective = hyper_objective(spec.phi(process), tbs[process], arch)
            result = bounded_synthesize_hyper2(inputs, outputs, trace=(objective,),
                                               pair_violations=violations, config=config, bound=bound,
                                               name=f"hyper implementation of {process}")
        bounds[process] = result.bound
        if result.realizable:
            hyper[process] = result.machine
        else:
            failed.append(process)
    if failed:
        return PipelineResult(UNREALIZABLE, timings=timings, unrealizable=tuple(failed), bounds=bounds)

    with _phase(timings, "composition"):
        composed = compose_hyper(hyper[arch.p], hyper[arch.q], arch, config)
        local = {p: extract_local_strategy(composed, p, config) for p in arch.processes}
    bundle = SolutionBundle(spec, HYPER, composed, local, hyper=hyper, bounds=bounds, analysis=tbs)
    return PipelineResult(CERTIFIED, bundle, timings=timings, bounds=bounds)


def receiver_problem(component, name: str = "receiver") -> SynthesisProblem:
    """Synthesis problem for the receiver over class tokens."""
    if component.formula is not None:
        return ltl_problem(component.formula, component.inputs, component.outputs, name)
    return SynthesisProblem(tuple(sorted(component.inputs)), tuple(sorted(component.outputs)),
                            (component.violation_nba(),), name=name)


def _synthesize_practical(spec: SystemSpec, tbs: dict, config: ToolConfig, bound, timings) -> PipelineResult:
    arch = spec.arch
    sender_process, receiver_process = practical_roles(spec, tbs)
    logger.info(f"Practical mode: {sender_process} sends, {receiver_process} receives")
    with _phase(timings, "classes"):
        classes = extract_info_classes(tbs[receiver_process], config, token_prefix(arch))
        component = build_component_spec(spec.phi(receiver_process), classes, arch, receiver_process)

    bounds = {}
    with _phase(timings, f"synthesis_{receiver_process}"):
        problem = receiver_problem(component, f"receiver {receiver_process}")
        receiver = bounded_synthesize(problem, config, bound)
    bounds[receiver_process] = receiver.bound

    marker = arch.marker(receiver_process)
    with _phase(timings, f"synthesis_{sender_process}"):
        sender = bounded_synthesize_hyper2(
            arch.inputs(sender_process), arch.outputs(sender_process) | {marker},
            trace=(spec.phi(sender_process),),
            pair_violations=(build_tb_ifa_automaton(tbs[receiver_process], arch).violation,),
            config=config, bound=bound, name=f"sender {sender_process}")
    bounds[sender_process] = sender.bound

    failed = tuple(p for p, r in ((receiver_process, receiver), (sender_process, sender)) if not r.realizable)
    if failed:
        return PipelineResult(UNREALIZABLE, timings=timings, unrealizable=failed, bounds=bounds)

    sender_machine = sender.machine
    if marker not in arch.outputs(sender_process):
        sender_machine = _restrict_outputs(sender_machine, arch.outputs(sender_process))
    with _phase(timings, "composition"):
        decoder = build_class_decoder(sender_machine, classes, arch, config, sender_process=sender_process)
        composed = compose_practical(sender_machine, receiver.machine, decoder, arch, config)
        local = {p: extract_local_strategy(composed, p, config) for p in arch.processes}
    bundle = SolutionBundle(spec, PRACTICAL, composed, local, sender=sender_machine,
                            receiver=receiver.machine, decoder=decoder.machine,
                            component_spec=component, bounds=bounds, analysis=tbs)
    return PipelineResult(CERTIFIED, bundle, timings=timings, bounds=bounds)


def write_report(report: CertificationReport, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    document = {"passed": report.passed, "checks": report.to_rows()}
    (directory / "report.json").write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n",
                                           encoding="utf-8")
    (directory / "report.txt").write_text(report.render() + "\n", encoding="utf-8")
    return directory


def run_pipeline(spec: SystemSpec, mode: str = PRACTICAL, config: Optional[ToolConfig] = None,
                 bound: Optional[int] = None, out_dir=None) -> PipelineResult:
    config = config or get_tool_config()
    if mode not in MODES:
        raise InputError(f"Unknown mode {mode}, expected one of {', '.join(MODES)}")
    timings = {}
    check_formula_scope(spec)
    logger.info(f"Running {mode} pipeline for processes {', '.join(spec.arch.processes)}")
    with _phase(timings, "analysis"):
        tbs = analyze_processes(spec, config)

    build = _synthesize_hyper if mode == HYPER else _synthesize_practical
    result = build(spec, tbs, config, bound, timings)
    if result.bundle is None:
        logger.info(f"Unrealizable at bound for {', '.join(result.unrealizable)}")
        return result

    with _phase(timings, "verification"):
        result.report = certify_end_to_end(spec, result.bundle, config)
    if not result.report.passed:
        result.status = CERTIFICATION_FAILED
    if out_dir is not None:
        result.bundle.save(out_dir)
        write_report(result.report, out_dir)
    logger.info(f"Pipeline finished: {result.status}")
    return result
