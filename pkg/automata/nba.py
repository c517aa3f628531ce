"""Explicit-state automata over boolean alphabets.

Letters are bitmasks over the automaton's sorted variable tuple. Edges carry a
Guard, a cube of literals (``pos`` bits must be set, ``neg`` bits clear), so
one edge stands for every letter the cube admits. States are integers and the
initial state is always 0.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Hashable, Iterable, NamedTuple, Optional, Tuple

from errors import AlphabetMismatchError

logger = logging.getLogger(__name__)


class Guard(NamedTuple):
    pos: int
    neg: int

    def matches(self, letter: int) -> bool:
        return (letter & self.pos) == self.pos and not (letter & self.neg)

    def conjoin(self, other: "Guard") -> Optional["Guard"]:
        pos = self.pos | other.pos
        neg = self.neg | other.neg
        if pos & neg:
            return None
        return Guard(pos, neg)

    def contains(self, other: "Guard") -> bool:
        """Every letter of ``other`` is a letter of this cube."""
        return (self.pos & ~other.pos) == 0 and (self.neg & ~other.neg) == 0

    @property
    def letter(self) -> int:
        return self.pos


TRUE_GUARD = Guard(0, 0)


def literal_guard(index: int, value: bool) -> Guard:
    return Guard(1 << index, 0) if value else Guard(0, 1 << index)


def full_guard(letter: int, width: int) -> Guard:
    """The cube admitting exactly ``letter``."""
    return Guard(letter, ((1 << width) - 1) & ~letter)


def cube_difference(region: Guard, guard: Guard) -> list:
    """Disjoint cubes covering ``region`` minus ``guard`` (region must meet guard)."""
    pieces = []
    fixed = region
    for value, bits in ((True, guard.pos & ~region.pos), (False, guard.neg & ~region.neg)):
        while bits:
            low = bits & -bits
            bits ^= low
            flipped = Guard(fixed.pos, fixed.neg | low) if value else Guard(fixed.pos | low, fixed.neg)
            pieces.append(flipped)
            fixed = Guard(fixed.pos | low, fixed.neg) if value else Guard(fixed.pos, fixed.neg | low)
    return pieces


def letter_regions(guards: Iterable[Guard]) -> list:
    """Partition the letter space into cubes each inside or outside every guard."""
    regions = [TRUE_GUARD]
    for guard in sorted(set(guards)):
        if guard == TRUE_GUARD:
            continue
        refined = []
        for region in regions:
            inside = region.conjoin(guard)
            if inside is None or inside == region:
                refined.append(region)
                continue
            refined.append(inside)
            refined.extend(cube_difference(region, guard))
        regions = refined
    return regions


def format_guard(guard: Guard, variables) -> str:
    parts = []
    for index, name in enumerate(variables):
        if guard.pos >> index & 1:
            parts.append(name)
        elif guard.neg >> index & 1:
            parts.append(f"!{name}")
    return " & ".join(parts) if parts else "true"


@dataclass(frozen=True)
class Automaton:
    variables: Tuple[str, ...]
    edges: Tuple[Tuple[Tuple[Guard, int], ...], ...]
    accepting: frozenset
    incomplete: bool = False
    names: Optional[Tuple[str, ...]] = None

    initial = 0

    @property
    def num_states(self) -> int:
        return len(self.edges)

    @property
    def num_edges(self) -> int:
        return sum(len(out) for out in self.edges)

    @property
    def all_accepting(self) -> bool:
        return len(self.accepting) == self.num_states

    def letter_of(self, names) -> int:
        index = {v: i for i, v in enumerate(self.variables)}
        letter = 0
        for name in names:
            letter |= 1 << index[name]
        return letter

    def valuation_of(self, letter: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.variables) if letter >> i & 1)

    def guard_of(self, literals) -> Guard:
        """Cube from a mapping {variable: bool}."""
        index = {v: i for i, v in enumerate(self.variables)}
        guard = TRUE_GUARD
        for name, value in literals.items():
            guard = guard.conjoin(literal_guard(index[name], value))
            if guard is None:
                raise ValueError("Contradictory literals")
        return guard

    def successors(self, state: int, letter: int) -> list:
        return [target for guard, target in self.edges[state] if guard.matches(letter)]

    def step(self, states: Iterable[int], letter: int) -> frozenset:
        return frozenset(t for s in states for t in self.successors(s, letter))

    def with_accepting(self, accepting):
        return replace(self, accepting=frozenset(accepting))


@dataclass(frozen=True)
class Nba(Automaton):
    """Büchi automaton: a run is accepting if it visits ``accepting`` infinitely often."""


@dataclass(frozen=True)
class Nfa(Automaton):
    """Finite-word automaton: a run is accepting if it ends in ``accepting``."""

    def accepts(self, word) -> bool:
        """``word`` is a sequence of valuations."""
        states = frozenset({self.initial})
        for letter in word:
            states = self.step(states, self.letter_of(letter))
        return bool(states & self.accepting)

    def reaches_accepting(self) -> bool:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            state = stack.pop()
            if state in self.accepting:
                return True
            for _, target in self.edges[state]:
                if target not in seen:
                    seen.add(target)
                    stack.append(target)
        return False


@dataclass(frozen=True)
class UcaAutomaton(Automaton):
    """Universal co-Büchi automaton: a word is accepted if every run visits
    ``accepting`` (the rejecting states) only finitely often.

    Built as the dual of an Nba with the same structure; the dual recognizes
    the complement of the Nba's language.
    """

    @classmethod
    def dual_of(cls, nba: Nba) -> "UcaAutomaton":
        return cls(nba.variables, nba.edges, nba.accepting, nba.incomplete, nba.names)

    def dual(self) -> Nba:
        return Nba(self.variables, self.edges, self.accepting, self.incomplete, self.names)


def empty_automaton(variables, cls=Nba):
    return cls(tuple(sorted(variables)), ((),), frozenset())


def universal_automaton(variables, cls=Nba):
    return cls(tuple(sorted(variables)), (((TRUE_GUARD, 0),),), frozenset({0}))


def explore(variables, initial: Hashable,
            successors: Callable[[Hashable], Iterable[Tuple[Guard, Hashable]]],
            accepting: Callable[[Hashable], bool],
            cls=Nba, cap: Optional[int] = None, incomplete=False,
            name: Callable[[Hashable], str] = None):
    """Build an automaton by breadth-first search over hashable state keys.

    Returns the automaton and the list of keys indexed by state number.
    """
    index = {initial: 0}
    keys = [initial]
    edges = []
    queue = deque([initial])
    while queue:
        key = queue.popleft()
        out = []
        seen = set()
        for guard, target in successors(key):
            if target not in index:
                if cap is not None and len(keys) >= cap:
                    raise OverflowError(f"State cap {cap} exceeded")
                index[target] = len(keys)
                keys.append(target)
                queue.append(target)
            edge = (guard, index[target])
            if edge not in seen:
                seen.add(edge)
                out.append(edge)
        edges.append(tuple(out))
    names = tuple(name(k) for k in keys) if name else None
    automaton = cls(tuple(variables), tuple(edges),
                    frozenset(i for i, k in enumerate(keys) if accepting(k)),
                    incomplete, names)
    return automaton, keys


def _bit_map(old_variables, new_variables) -> list:
    position = {v: i for i, v in enumerate(new_variables)}
    return [position.get(v) for v in old_variables]


def remap_guard(guard: Guard, bit_map) -> Guard:
    pos = neg = 0
    for old, new in enumerate(bit_map):
        if new is None:
            continue
        if guard.pos >> old & 1:
            pos |= 1 << new
        if guard.neg >> old & 1:
            neg |= 1 << new
    return Guard(pos, neg)


def remap_edges(a: Automaton, bit_map):
    result = []
    for out in a.edges:
        seen = {}
        for guard, target in out:
            seen.setdefault((remap_guard(guard, bit_map), target), None)
        result.append(tuple(seen))
    return tuple(result)


def lift(a: Automaton, variables) -> Automaton:
    """Extend the alphabet with unconstrained variables."""
    new_variables = tuple(sorted(set(variables)))
    if not set(a.variables) <= set(new_variables):
        raise AlphabetMismatchError(
            f"Cannot lift {list(a.variables)} to {list(new_variables)}")
    if new_variables == a.variables:
        return a
    return replace(a, variables=new_variables,
                   edges=remap_edges(a, _bit_map(a.variables, new_variables)))


def rename(a: Automaton, mapping) -> Automaton:
    renamed = [mapping.get(v, v) for v in a.variables]
    if len(set(renamed)) != len(renamed):
        raise AlphabetMismatchError("Renaming merges variables")
    new_variables = tuple(sorted(renamed))
    return replace(a, variables=new_variables,
                   edges=remap_edges(a, _bit_map(renamed, new_variables)))


def restrict_variables(a: Automaton, keep) -> Automaton:
    """Erase every variable outside ``keep`` from the guards."""
    new_variables = tuple(v for v in a.variables if v in set(keep))
    return replace(a, variables=new_variables,
                   edges=remap_edges(a, _bit_map(a.variables, new_variables)))


def same_alphabet(a: Automaton, b: Automaton):
    if a.variables != b.variables:
        raise AlphabetMismatchError(
            f"Alphabet mismatch: {list(a.variables)} vs {list(b.variables)}")


def sub_automaton(a: Automaton, keep: Iterable[int]) -> Automaton:
    """Restrict to ``keep`` (which must contain the initial state), renumbered by BFS."""
    keep = set(keep)

    def successors(state):
        return [(g, t) for g, t in a.edges[state] if t in keep]

    result, _ = explore(a.variables, a.initial, successors, lambda s: s in a.accepting,
                        cls=type(a), incomplete=a.incomplete,
                        name=(lambda s: a.names[s]) if a.names else None)
    return result


def cube_letters(guard: Guard, width: int):
    """Every letter admitted by ``guard``."""
    free = ((1 << width) - 1) & ~(guard.pos | guard.neg)
    subset = free
    while True:
        yield guard.pos | subset
        if subset == 0:
            return
        subset = (subset - 1) & free


def cube_cover(letters, width: int) -> list:
    """Cubes whose union is exactly the set ``letters`` (split on one bit at a time)."""

    def cover(subset, bits, pos, neg):
        if not subset:
            return []
        if len(subset) == 1 << len(bits):
            return [Guard(pos, neg)]
        bit, rest = bits[0], bits[1:]
        mask = 1 << bit
        high = frozenset(x for x in subset if x & mask)
        low = subset - high
        if frozenset(x & ~mask for x in high) == low:
            return cover(low, rest, pos, neg)
        return cover(high, rest, pos | mask, neg) + cover(low, rest, pos, neg | mask)

    return cover(frozenset(letters), list(range(width - 1, -1, -1)), 0, 0)
