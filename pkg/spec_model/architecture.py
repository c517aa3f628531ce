"""Two-process architectures and system specification files.

A spec file has named sections, one declaration or formula per line:

    [variables]
    environment: in
    a: c t
    b: out

    [architecture]
    inputs a: in
    inputs b: c t
    marker b: t

    [spec a]
    true

    [spec b]
    in <-> F out

Formula lines inside one ``[spec p]`` section are conjoined.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from errors import ArchitectureError, LtlSyntaxError, SpecFileError, UndeclaredAtomError
from spec_model.ltl import atoms, conjunction, format_ltl
from spec_model.ltl_parser import parse_ltl

logger = logging.getLogger(__name__)

ENVIRONMENT = "environment"
_ENVIRONMENT_ALIASES = ("environment", "env")


@dataclass(frozen=True)
class Variable:
    name: str
    owner: str


@dataclass(frozen=True)
class Architecture:
    processes: Tuple[str, str]
    outputs_env: frozenset
    outputs_p: frozenset
    outputs_q: frozenset
    inputs_p: frozenset
    inputs_q: frozenset
    markers: Tuple[Tuple[str, str], ...] = ()

    @property
    def p(self) -> str:
        return self.processes[0]

    @property
    def q(self) -> str:
        return self.processes[1]

    def _index(self, process) -> int:
        try:
            return self.processes.index(process)
        except ValueError:
            raise ArchitectureError(f"Unknown process: {process}") from None

    def other(self, process) -> str:
        return self.processes[1 - self._index(process)]

    def outputs(self, process) -> frozenset:
        return (self.outputs_p, self.outputs_q)[self._index(process)]

    def inputs(self, process) -> frozenset:
        return (self.inputs_p, self.inputs_q)[self._index(process)]

    def visible_env(self, process) -> frozenset:
        return self.inputs(process) & self.outputs_env

    def hidden_env(self, process) -> frozenset:
        return self.outputs_env - self.inputs(process)

    def declared_marker(self, process) -> Optional[str]:
        return dict(self.markers).get(process)

    def marker(self, process) -> str:
        """The bound marker t_process: declared in the file, or a fresh name."""
        return self.declared_marker(process) or f"t_{process}"

    @property
    def variables(self) -> frozenset:
        return self.outputs_env | self.outputs_p | self.outputs_q

    def variable_list(self) -> tuple:
        owners = [(ENVIRONMENT, self.outputs_env), (self.p, self.outputs_p), (self.q, self.outputs_q)]
        return tuple(Variable(name, owner) for owner, names in owners for name in sorted(names))

    def owner(self, name) -> str:
        for variable in self.variable_list():
            if variable.name == name:
                return variable.owner
        raise ArchitectureError(f"Undeclared variable: {name}")


@dataclass(frozen=True)
class SystemSpec:
    arch: Architecture
    phi_p: object
    phi_q: object

    def phi(self, process):
        return self.phi_p if process == self.arch.p else self.phi_q


def validate_architecture_input(processes, outputs, inputs, markers):
    """
    Validate an architecture declaration:
    - exactly two processes, outputs partition the variables
    - inputs declared, disjoint from own outputs, produced by env or partner
    - a declared marker is an input produced by the partner
    """
    errors = []

    if len(processes) != 2:
        errors.append(f"partition: exactly two processes required, found {len(processes)}")
        return {'is_valid': False, 'errors': errors}

    declared = set()
    for owner, names in outputs.items():
        for name in names:
            if name in declared:
                errors.append(f"partition: variable {name} has more than one owner")
            declared.add(name)

    for process in processes:
        own = outputs.get(process, set())
        other = outputs.get(processes[1 - processes.index(process)], set())
        env = outputs.get(ENVIRONMENT, set())
        for name in sorted(inputs.get(process, set())):
            if name not in declared:
                errors.append(f"undeclared: input {name} of {process} is not a declared variable")
            elif name in own:
                errors.append(f"overlap: {name} is both input and output of {process}")
            elif name not in other and name not in env:
                errors.append(f"connectivity: input {name} of {process} is not produced by "
                              f"the environment or the other process")

    for process, name in markers:
        if process not in processes:
            errors.append(f"marker: unknown process {process}")
        elif name not in inputs.get(process, set()):
            errors.append(f"marker: {name} must be an input of {process}")
        elif name in outputs.get(ENVIRONMENT, set()):
            errors.append(f"marker: {name} must be produced by the partner of {process}")

    return {
        'is_valid': len(errors) == 0,
        'errors': errors
    }


def make_architecture(processes, outputs, inputs, markers=()) -> Architecture:
    result = validate_architecture_input(list(processes), outputs, inputs, list(markers))
    if not result['is_valid']:
        raise ArchitectureError("Invalid architecture", result['errors'])
    p, q = processes
    return Architecture(
        processes=(p, q),
        outputs_env=frozenset(outputs.get(ENVIRONMENT, ())),
        outputs_p=frozenset(outputs.get(p, ())),
        outputs_q=frozenset(outputs.get(q, ())),
        inputs_p=frozenset(inputs.get(p, ())),
        inputs_q=frozenset(inputs.get(q, ())),
        markers=tuple(sorted(markers)),
    )


def _sections(text):
    """Split spec-file text into {section name: [(line number, content)]}."""
    sections = {}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = " ".join(line[1:-1].split())
            if current in sections:
                raise SpecFileError(f"Duplicate section [{current}]", line=number)
            sections[current] = []
            continue
        if current is None:
            raise SpecFileError("Declaration outside of any section", line=number)
        sections[current].append((number, line))
    return sections


def _parse_declarations(sections):
    processes = []
    outputs = {}
    inputs = {}
    markers = []

    if "variables" not in sections:
        raise SpecFileError("Missing [variables] section")

    for number, line in sections["variables"]:
        owner, sep, names = line.partition(":")
        if not sep:
            raise SpecFileError(f"Expected '<owner>: <variables>', got {line!r}", line=number)
        owner = owner.strip()
        if owner in _ENVIRONMENT_ALIASES:
            owner = ENVIRONMENT
        elif owner not in processes:
            processes.append(owner)
        outputs.setdefault(owner, [])
        outputs[owner].extend(names.split())

    for number, line in sections.get("architecture", []):
        head, sep, names = line.partition(":")
        words = head.split()
        if not sep or len(words) != 2 or words[0] not in ("inputs", "marker"):
            raise SpecFileError(f"Expected 'inputs <process>: ...' or 'marker <process>: <var>', "
                                f"got {line!r}", line=number)
        kind, process = words
        if process not in processes:
            raise SpecFileError(f"Unknown process {process}", line=number)
        if kind == "inputs":
            inputs.setdefault(process, set()).update(names.split())
        else:
            marker = names.split()
            if len(marker) != 1:
                raise SpecFileError("A marker declaration names exactly one variable", line=number)
            markers.append((process, marker[0]))

    outputs = {owner: set(names) for owner, names in outputs.items()}
    return processes, outputs, inputs, markers


def parse_architecture(text: str) -> Architecture:
    processes, outputs, inputs, markers = _parse_declarations(_sections(text))
    arch = make_architecture(processes, outputs, inputs, markers)
    logger.info(f"Parsed architecture with processes {arch.p}, {arch.q}")
    return arch


def parse_system_spec(text: str) -> SystemSpec:
    sections = _sections(text)
    arch = make_architecture(*_parse_declarations(sections))

    formulas = []
    for process in arch.processes:
        allowed = arch.outputs(process) | arch.outputs_env
        parts = []
        for number, line in sections.get(f"spec {process}", []):
            try:
                parts.append(parse_ltl(line, allowed))
            except LtlSyntaxError as e:
                raise SpecFileError(f"Formula syntax error, column {e.column}", line=number) from e
            except UndeclaredAtomError as e:
                raise SpecFileError(
                    f"Formula of {process} may only use outputs of {process} and the "
                    f"environment; offending atoms: {', '.join(sorted(e.atoms))}", line=number) from e
        formulas.append(conjunction(parts))

    unknown = [name for name in sections
               if name not in ("variables", "architecture")
               and name not in (f"spec {p}" for p in arch.processes)]
    if unknown:
        raise SpecFileError(f"Unknown section(s): {', '.join(unknown)}")

    return SystemSpec(arch, formulas[0], formulas[1])


def format_system_spec(spec: SystemSpec, header: Optional[str] = None) -> str:
    arch = spec.arch
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
        lines.append("")
    lines.append("[variables]")
    lines.append(f"{ENVIRONMENT}: {' '.join(sorted(arch.outputs_env))}".rstrip())
    for process in arch.processes:
        lines.append(f"{process}: {' '.join(sorted(arch.outputs(process)))}".rstrip())
    lines.append("")
    lines.append("[architecture]")
    for process in arch.processes:
        if arch.inputs(process):
            lines.append(f"inputs {process}: {' '.join(sorted(arch.inputs(process)))}")
    for process, name in arch.markers:
        lines.append(f"marker {process}: {name}")
    for process in arch.processes:
        lines.append("")
        lines.append(f"[spec {process}]")
        lines.append(format_ltl(spec.phi(process)))
    return "\n".join(lines) + "\n"


def check_formula_scope(spec: SystemSpec):
    """Every formula only mentions its own outputs and environment outputs."""
    errors = []
    for process in spec.arch.processes:
        allowed = spec.arch.outputs(process) | spec.arch.outputs_env
        extra = atoms(spec.phi(process)) - allowed
        if extra:
            errors.append(f"scope: spec of {process} mentions {', '.join(sorted(extra))}")
    if errors:
        raise ArchitectureError("Specification outside its scope", errors)
