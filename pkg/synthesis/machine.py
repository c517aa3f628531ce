"""Moore machines.

A machine reads one valuation of its inputs per round and shows the label of
its current state: the output of round k depends only on the inputs of
rounds 0..k-1. Inputs are indexed by bitmask over the sorted input names.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import graphviz

from automata.nba import Guard, Nba, cube_cover, lift
from automata.operations import exists_project, self_compose
from errors import AlphabetMismatchError, InputError
from spec_model.words import LassoWord, format_valuation, normalize

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class MooreMachine:
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    labels: Tuple[frozenset, ...]
    transitions: Tuple[Tuple[int, ...], ...]
    names: Optional[Tuple[str, ...]] = None

    initial = 0

    def __post_init__(self):
        if len(self.labels) != len(self.transitions):
            raise ValueError("Every state needs a label and a transition row")
        width = 1 << len(self.inputs)
        for state, row in enumerate(self.transitions):
            if len(row) != width:
                raise ValueError(f"State {state} has {len(row)} transitions, expected {width}")
            if any(not 0 <= target < len(self.transitions) for target in row):
                raise ValueError(f"State {state} has a transition outside the machine")
        for label in self.labels:
            if not label <= set(self.outputs):
                raise ValueError(f"Label {format_valuation(label)} outside the outputs")

    @property
    def num_states(self) -> int:
        return len(self.labels)

    @property
    def variables(self) -> frozenset:
        return frozenset(self.inputs) | frozenset(self.outputs)

    def input_mask(self, valuation) -> int:
        return sum(1 << i for i, name in enumerate(self.inputs) if name in valuation)

    def input_valuation(self, mask: int) -> frozenset:
        return frozenset(name for i, name in enumerate(self.inputs) if mask >> i & 1)

    def label(self, state: int) -> frozenset:
        return self.labels[state]

    def step(self, state: int, valuation) -> int:
        return self.transitions[state][self.input_mask(valuation)]

    def run(self, word) -> list:
        """States visited on a finite input word, starting with the initial state."""
        states = [self.initial]
        for letter in word:
            states.append(self.step(states[-1], letter))
        return states

    def outputs_on(self, word) -> list:
        """Labels of rounds 0..len(word)."""
        return [self.labels[s] for s in self.run(word)]

    def trace(self, w: LassoWord) -> LassoWord:
        """The infinite trace (inputs and labels) produced on an input lasso."""
        if not frozenset(self.inputs) <= w.variables:
            raise AlphabetMismatchError(f"Input lasso over {sorted(w.variables)} lacks machine inputs")
        (w,) = normalize(w)
        seen = {}
        letters = []
        state, position = self.initial, 0
        while (state, position) not in seen:
            seen[(state, position)] = len(letters)
            letters.append(w.letter(position) | self.labels[state])
            state = self.step(state, w.letter(position))
            position = w.successor(position)
        start = seen[(state, position)]
        return LassoWord(tuple(letters[:start]), tuple(letters[start:]),
                         w.variables | frozenset(self.outputs))

    def reachable(self) -> list:
        """Reachable states in breadth-first order, inputs in mask order."""
        order = [self.initial]
        seen = {self.initial}
        queue = deque(order)
        while queue:
            state = queue.popleft()
            for target in self.transitions[state]:
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def canonical(self) -> "MooreMachine":
        """Reachable part, renumbered breadth-first."""
        order = self.reachable()
        index = {state: i for i, state in enumerate(order)}
        return MooreMachine(
            self.inputs, self.outputs,
            tuple(self.labels[s] for s in order),
            tuple(tuple(index[t] for t in self.transitions[s]) for s in order),
            tuple(self.names[s] for s in order) if self.names else None,
        )

    def minimize(self) -> "MooreMachine":
        """Partition refinement on labels and successor blocks, then canonical numbering."""
        machine = self.canonical()
        labels = {}
        block = [labels.setdefault(label, len(labels)) for label in machine.labels]
        while True:
            signatures = {}
            refined = [signatures.setdefault((block[s], tuple(block[t] for t in row)), len(signatures))
                       for s, row in enumerate(machine.transitions)]
            if len(signatures) == len(set(block)):
                break
            block = refined
        # state 0 is numbered first, so the initial state lands in block 0
        representative = {}
        for state, b in enumerate(block):
            representative.setdefault(b, state)
        count = len(representative)
        quotient = MooreMachine(
            machine.inputs, machine.outputs,
            tuple(machine.labels[representative[b]] for b in range(count)),
            tuple(tuple(block[t] for t in machine.transitions[representative[b]]) for b in range(count)),
        )
        return quotient.canonical()

    def to_automaton(self, variables=None) -> Nba:
        """All-accepting automaton of the machine's traces over inputs and outputs."""
        names = tuple(sorted(variables if variables is not None else self.variables))
        if not self.variables <= set(names):
            raise AlphabetMismatchError(f"Machine variables {sorted(self.variables)} not in {list(names)}")
        position = {v: i for i, v in enumerate(names)}
        input_bits = [position[v] for v in self.inputs]
        output_mask = sum(1 << position[v] for v in self.outputs)
        edges = []
        for state in range(self.num_states):
            label_pos = sum(1 << position[v] for v in self.labels[state])
            targets = {}
            for mask, target in enumerate(self.transitions[state]):
                targets.setdefault(target, []).append(mask)
            out = []
            for target, masks in sorted(targets.items()):
                for cube in cube_cover(masks, len(self.inputs)):
                    pos = label_pos | _spread(cube.pos, input_bits)
                    neg = (output_mask & ~label_pos) | _spread(cube.neg, input_bits)
                    out.append((Guard(pos, neg), target))
            edges.append(tuple(out))
        return Nba(names, tuple(edges), frozenset(range(self.num_states)), names=self.names)


def _spread(bits: int, positions) -> int:
    return sum(1 << p for i, p in enumerate(positions) if bits >> i & 1)


def constant_machine(inputs, outputs, label=()) -> MooreMachine:
    inputs = tuple(sorted(inputs))
    return MooreMachine(inputs, tuple(sorted(outputs)), (frozenset(label),),
                        (tuple(0 for _ in range(1 << len(inputs))),))


def machine_from_table(inputs, outputs, labels, edges, names=None) -> MooreMachine:
    """Build a machine from ``edges``: state -> list of (input literals dict, target).

    The first matching entry wins; inputs matching no entry loop on the state.
    """
    inputs = tuple(sorted(inputs))
    rows = []
    for state in range(len(labels)):
        row = []
        for mask in range(1 << len(inputs)):
            valuation = {name: bool(mask >> i & 1) for i, name in enumerate(inputs)}
            target = state
            for literals, successor in edges.get(state, []):
                if all(valuation[name] == value for name, value in literals.items()):
                    target = successor
                    break
            row.append(target)
        rows.append(tuple(row))
    return MooreMachine(inputs, tuple(sorted(outputs)), tuple(frozenset(l) for l in labels),
                        tuple(rows), tuple(names) if names else None)


def _key(valuation) -> str:
    return ",".join(sorted(valuation))


def machine_to_json(machine: MooreMachine) -> dict:
    states = []
    for state in range(machine.num_states):
        states.append({
            "name": machine.names[state] if machine.names else f"s{state}",
            "label": sorted(machine.labels[state]),
            "transitions": {_key(machine.input_valuation(mask)): target
                            for mask, target in enumerate(machine.transitions[state])},
        })
    return {
        "version": FORMAT_VERSION,
        "inputs": list(machine.inputs),
        "outputs": list(machine.outputs),
        "initial": machine.initial,
        "states": states,
    }


def machine_from_json(document: dict) -> MooreMachine:
    try:
        inputs = tuple(sorted(document["inputs"]))
        outputs = tuple(sorted(document["outputs"]))
        states = document["states"]
        if document.get("initial", 0) != 0:
            raise InputError("The initial state must be state 0")
        labels = []
        rows = []
        for entry in states:
            labels.append(frozenset(entry["label"]))
            table = entry["transitions"]
            row = []
            for mask in range(1 << len(inputs)):
                valuation = frozenset(n for i, n in enumerate(inputs) if mask >> i & 1)
                row.append(int(table[_key(valuation)]))
            rows.append(tuple(row))
        names = tuple(entry.get("name", f"s{i}") for i, entry in enumerate(states))
        return MooreMachine(inputs, outputs, tuple(labels), tuple(rows), names)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed machine document: {str(e)}") from e


def save_machine(machine: MooreMachine, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(machine_to_json(machine), indent=2, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    return path


def load_machine(path) -> MooreMachine:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not a JSON document: {str(e)}") from e
    return machine_from_json(document)


def machine_to_dot(machine: MooreMachine, name: str = "machine") -> graphviz.Digraph:
    dot = graphviz.Digraph(name=name)
    dot.attr(rankdir="LR")
    dot.node("init", "", shape="point")
    for state in range(machine.num_states):
        title = machine.names[state] if machine.names else f"s{state}"
        dot.node(str(state), f"{title}\n{format_valuation(machine.labels[state])}", shape="box")
    dot.edge("init", "0")
    for state, row in enumerate(machine.transitions):
        targets = {}
        for mask, target in enumerate(row):
            targets.setdefault(target, []).append(mask)
        for target, masks in sorted(targets.items()):
            cubes = cube_cover(masks, len(machine.inputs))
            text = " | ".join(_cube_text(c, machine.inputs) for c in cubes)
            dot.edge(str(state), str(target), label=text)
    return dot


def _cube_text(cube, inputs) -> str:
    parts = []
    for i, name in enumerate(inputs):
        if cube.pos >> i & 1:
            parts.append(name)
        elif cube.neg >> i & 1:
            parts.append(f"!{name}")
    return " & ".join(parts) if parts else "true"


def trace_language(machine: MooreMachine, variables) -> Nba:
    """Machine traces over ``variables``: extra machine variables are projected away, missing ones free."""
    variables = frozenset(variables)
    automaton = machine.to_automaton()
    drop = [v for v in automaton.variables if v not in variables]
    if drop:
        automaton = exists_project(automaton, drop)
    return lift(automaton, variables)


def pair_language(machine: MooreMachine, variables) -> Nba:
    """Pairs of machine traces over the pair alphabet ``variables``."""
    variables = frozenset(variables)
    automaton = self_compose(machine.to_automaton())
    drop = [v for v in automaton.variables if v not in variables]
    if drop:
        automaton = exists_project(automaton, drop)
    return lift(automaton, variables)
