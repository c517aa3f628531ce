"""Solution bundles: every machine of one synthesized solution, on disk and in memory.

A bundle directory holds ``manifest.json``, the system spec it solves, one
JSON document per machine (with a DOT rendering next to it) and, when a
component specification was built, its formula.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from composition.system import ComposedSystem
from errors import InputError
from spec_model.architecture import SystemSpec, format_system_spec, parse_system_spec
from spec_model.ltl import format_ltl
from synthesis.machine import MooreMachine, load_machine, machine_to_dot, save_machine

logger = logging.getLogger(__name__)

HYPER = "hyper"
PRACTICAL = "practical"
MODES = (HYPER, PRACTICAL)

MANIFEST = "manifest.json"
SPEC_FILE = "system.spec"
COMPOSED = "composed"


@dataclass
class SolutionBundle:
    spec: SystemSpec
    mode: str
    composed: ComposedSystem
    local: dict
    hyper: dict = field(default_factory=dict)
    sender: Optional[MooreMachine] = None
    receiver: Optional[MooreMachine] = None
    decoder: Optional[MooreMachine] = None
    component_spec: Optional[object] = None
    bounds: dict = field(default_factory=dict)
    analysis: dict = field(default_factory=dict)

    def machines(self) -> dict:
        """Every machine of the bundle under its file stem."""
        found = {COMPOSED: self.composed.machine}
        found.update({f"local_{p}": m for p, m in self.local.items()})
        found.update({f"hyper_{p}": m for p, m in self.hyper.items()})
        for stem in ("sender", "receiver", "decoder"):
            if getattr(self, stem) is not None:
                found[stem] = getattr(self, stem)
        return found

    def summary(self) -> dict:
        return {
            "mode": self.mode,
            "processes": list(self.spec.arch.processes),
            "states": {stem: m.num_states for stem, m in self.machines().items()},
            "bounds": dict(self.bounds),
        }

    def save(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / SPEC_FILE).write_text(format_system_spec(self.spec), encoding="utf-8")
        for stem, machine in self.machines().items():
            save_machine(machine, directory / f"{stem}.json")
            machine_to_dot(machine, stem).save(f"{stem}.dot", directory=str(directory))
        manifest = self.summary()
        if self.component_spec is not None:
            manifest["tokens"] = list(self.component_spec.tokens)
            if self.component_spec.formula is not None:
                (directory / "component_spec.ltl").write_text(
                    format_ltl(self.component_spec.formula) + "\n", encoding="utf-8")
        (directory / MANIFEST).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote {self.mode} solution to {directory}")
        return directory


def load_bundle(directory) -> SolutionBundle:
    """Reload a saved bundle; the composed system keeps no provenance."""
    directory = Path(directory)
    try:
        manifest = json.loads((directory / MANIFEST).read_text(encoding="utf-8"))
        spec = parse_system_spec((directory / SPEC_FILE).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise InputError(f"Not a solution directory: {directory}", [str(e)]) from e
    except json.JSONDecodeError as e:
        raise InputError(f"Malformed manifest in {directory}: {str(e)}") from e
    mode = manifest.get("mode")
    if mode not in MODES:
        raise InputError(f"Unknown solution mode: {mode}")

    arch = spec.arch
    stems = manifest.get("states", {})

    def optional(stem):
        return load_machine(directory / f"{stem}.json") if stem in stems else None

    composed = ComposedSystem(load_machine(directory / f"{COMPOSED}.json"), tuple(arch.processes), (), arch)
    return SolutionBundle(
        spec=spec,
        mode=mode,
        composed=composed,
        local={p: load_machine(directory / f"local_{p}.json") for p in arch.processes},
        hyper={p: optional(f"hyper_{p}") for p in arch.processes if f"hyper_{p}" in stems},
        sender=optional("sender"),
        receiver=optional("receiver"),
        decoder=optional("decoder"),
        bounds=manifest.get("bounds", {}),
    )
