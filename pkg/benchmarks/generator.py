"""Parameterized benchmark families.

AC (atomic commit): the receiver raises its output eventually iff every
environment input is true in the first round. EC (eventual commit): as AC,
but every input may arrive in the first or the second round. SA (send
all): every sender input that is eventually true must eventually be echoed
by its own receiver output.

In ``dir`` architectures the sender ``p1`` reads its inputs and talks to the
receiver ``p2`` over a channel and a marker; ``bidir`` architectures give
both processes inputs, a channel, a marker and a goal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from errors import BenchmarkError
from spec_model.architecture import (
    ENVIRONMENT, SystemSpec, check_formula_scope, format_system_spec, make_architecture,
)
from spec_model.ltl import TRUE, Atom, Finally, Iff, Implies, Next, Or, conjunction

logger = logging.getLogger(__name__)

AC = "AC"
EC = "EC"
SA = "SA"
FAMILIES = (AC, EC, SA)

DIR = "dir"
BIDIR = "bidir"
ARCH_MODES = (DIR, BIDIR)

SENDER = "p1"
RECEIVER = "p2"


@dataclass(frozen=True)
class BenchmarkInstance:
    family: str
    param: int
    arch_mode: str
    spec: SystemSpec

    @property
    def name(self) -> str:
        return f"{self.family}_{self.arch_mode}_{self.param}"

    def render(self) -> str:
        return format_system_spec(self.spec, header=f"{self.family} {self.arch_mode} {self.param}")


def _inputs(process, param):
    return [f"in_{process}_{i}" for i in range(1, param + 1)]


def _read(name, family):
    if family == EC:
        return Or(Atom(name), Next(Atom(name)))
    return Atom(name)


def _goal(family, inputs, process, outputs):
    if family == SA:
        return conjunction(Implies(Finally(Atom(i)), Finally(Atom(o))) for i, o in zip(inputs, outputs))
    return Iff(conjunction(_read(name, family) for name in inputs), Finally(Atom(f"out_{process}")))


def _sa_outputs(process, param):
    return [f"out_{process}_{i}" for i in range(1, param + 1)]


def validate_benchmark_input(family, param, arch_mode):
    errors = []
    if family not in FAMILIES:
        errors.append(f"family must be one of {', '.join(FAMILIES)}, got {family}")
    if not isinstance(param, int) or param < 1:
        errors.append(f"parameter must be a positive integer, got {param}")
    if arch_mode not in ARCH_MODES:
        errors.append(f"architecture must be one of {', '.join(ARCH_MODES)}, got {arch_mode}")
    return {
        'is_valid': len(errors) == 0,
        'errors': errors
    }


def _directed(family, param):
    env = _inputs(SENDER, param) if family == SA else _inputs(SENDER, param) + _inputs(RECEIVER, param)
    channels = [f"c_{i}" for i in range(1, param + 1)] if family == SA else ["c"]
    receiver_outputs = _sa_outputs(RECEIVER, param) if family == SA else [f"out_{RECEIVER}"]
    outputs = {ENVIRONMENT: set(env), SENDER: set(channels) | {"t"}, RECEIVER: set(receiver_outputs)}
    inputs = {SENDER: set(_inputs(SENDER, param)),
              RECEIVER: set(env) - set(_inputs(SENDER, param)) | set(channels) | {"t"}}
    arch = make_architecture((SENDER, RECEIVER), outputs, inputs, [(RECEIVER, "t")])
    goal = _goal(family, _inputs(SENDER, param) if family == SA else env, RECEIVER, receiver_outputs)
    return SystemSpec(arch, TRUE, goal)


def _bidirectional(family, param):
    env = _inputs(SENDER, param) + _inputs(RECEIVER, param)
    outputs = {ENVIRONMENT: set(env)}
    inputs = {}
    goals = {}
    for process in (SENDER, RECEIVER):
        partner = RECEIVER if process == SENDER else SENDER
        own = _sa_outputs(process, param) if family == SA else [f"out_{process}"]
        outputs[process] = set(own) | {f"c_{process}", f"s_{process}"}
        inputs[process] = set(_inputs(process, param)) | {f"c_{partner}", f"s_{partner}"}
        if family == SA:
            goals[process] = _goal(family, _inputs(partner, param), process, own)
        else:
            goals[process] = _goal(family, env, process, own)
    markers = [(SENDER, f"s_{RECEIVER}"), (RECEIVER, f"s_{SENDER}")]
    arch = make_architecture((SENDER, RECEIVER), outputs, inputs, markers)
    return SystemSpec(arch, goals[SENDER], goals[RECEIVER])


def gen_benchmark(family: str, param: int, arch_mode: str = DIR) -> BenchmarkInstance:
    validation = validate_benchmark_input(family, param, arch_mode)
    if not validation['is_valid']:
        raise BenchmarkError("Unsupported benchmark", validation['errors'])
    spec = _directed(family, param) if arch_mode == DIR else _bidirectional(family, param)
    check_formula_scope(spec)
    instance = BenchmarkInstance(family, param, arch_mode, spec)
    logger.info(f"Generated benchmark {instance.name}")
    return instance
