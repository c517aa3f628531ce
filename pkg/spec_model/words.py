"""Valuations and ultimately periodic (lasso) words."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Tuple

from errors import AlphabetMismatchError

Valuation = frozenset

EMPTY = frozenset()


def valuation(names: Iterable[str] = ()) -> Valuation:
    return frozenset(names)


def all_valuations(variables) -> list:
    """Every valuation over ``variables``, ordered by bitmask over the sorted names."""
    names = sorted(variables)
    return [frozenset(n for bit, n in enumerate(names) if mask >> bit & 1)
            for mask in range(1 << len(names))]


def format_valuation(letter) -> str:
    return "{" + ",".join(sorted(letter)) + "}" if letter else "∅"


@dataclass(frozen=True)
class LassoWord:
    stem: Tuple[Valuation, ...]
    loop: Tuple[Valuation, ...]
    variables: frozenset

    def __post_init__(self):
        if not self.loop:
            raise ValueError("A lasso word needs a nonempty loop")
        for letter in self.stem + self.loop:
            if not letter <= self.variables:
                raise AlphabetMismatchError(
                    f"Valuation {format_valuation(letter)} outside {sorted(self.variables)}")

    @property
    def length(self) -> int:
        return len(self.stem) + len(self.loop)

    def letter(self, position: int) -> Valuation:
        if position < len(self.stem):
            return self.stem[position]
        return self.loop[(position - len(self.stem)) % len(self.loop)]

    def successor(self, position: int) -> int:
        return position + 1 if position + 1 < self.length else len(self.stem)

    def positions(self):
        return range(self.length)

    def letters(self):
        return self.stem + self.loop

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def unrolled(self, stem_length: int, loop_length: int) -> "LassoWord":
        """Same infinite word with a longer stem and a loop of a multiple length."""
        if stem_length < len(self.stem) or loop_length % len(self.loop):
            raise ValueError("Cannot shorten a lasso by unrolling")
        stem = tuple(self.letter(i) for i in range(stem_length))
        loop = tuple(self.letter(stem_length + j) for j in range(loop_length))
        return LassoWord(stem, loop, self.variables)

    def __str__(self):
        stem = "".join(f"({format_valuation(v)})" for v in self.stem)
        loop = "".join(f"({format_valuation(v)})" for v in self.loop)
        return f"{stem} | {loop}" if stem else f"| {loop}"


def lasso(stem, loop, variables) -> LassoWord:
    """Build a lasso from iterables of true-variable names."""
    return LassoWord(tuple(frozenset(v) for v in stem),
                     tuple(frozenset(v) for v in loop),
                     frozenset(variables))


def normalize(*words: LassoWord) -> list:
    """Unroll the words to a common stem length and loop length."""
    stem_length = max(len(w.stem) for w in words)
    loop_length = lcm(*(len(w.loop) for w in words))
    return [w.unrolled(stem_length, loop_length) for w in words]


def project(w: LassoWord, variables) -> LassoWord:
    keep = frozenset(variables)
    return LassoWord(tuple(v & keep for v in w.stem),
                     tuple(v & keep for v in w.loop),
                     w.variables & keep)


def combine(w1: LassoWord, w2: LassoWord) -> LassoWord:
    if w1.variables & w2.variables:
        raise AlphabetMismatchError(
            f"Cannot combine words sharing {sorted(w1.variables & w2.variables)}")
    a, b = normalize(w1, w2)
    return LassoWord(tuple(x | y for x, y in zip(a.stem, b.stem)),
                     tuple(x | y for x, y in zip(a.loop, b.loop)),
                     a.variables | b.variables)


def pair_variables(variables) -> frozenset:
    return frozenset(f"{v}@{copy}" for v in variables for copy in (1, 2))


def pair_word(left: LassoWord, right: LassoWord) -> LassoWord:
    """Encode a pair of words as one word over ``x@1`` / ``x@2`` atoms."""
    a, b = normalize(left, right)

    def tag(letter, copy):
        return frozenset(f"{v}@{copy}" for v in letter)

    return LassoWord(tuple(tag(x, 1) | tag(y, 2) for x, y in zip(a.stem, b.stem)),
                     tuple(tag(x, 1) | tag(y, 2) for x, y in zip(a.loop, b.loop)),
                     pair_variables(a.variables | b.variables))


def split_pair(w: LassoWord) -> tuple:
    """Inverse of pair_word: the left and right component words."""
    def strip(letter, copy):
        suffix = f"@{copy}"
        return frozenset(v[:-2] for v in letter if v.endswith(suffix))

    base = frozenset(v[:-2] for v in w.variables)
    return tuple(
        LassoWord(tuple(strip(x, copy) for x in w.stem),
                  tuple(strip(x, copy) for x in w.loop), base)
        for copy in (1, 2))


def enumerate_lassos(variables, max_stem: int, max_loop: int,
                     min_loop: int = 1) -> Iterator[LassoWord]:
    """Every lasso with |stem| <= max_stem and min_loop <= |loop| <= max_loop."""
    letters = all_valuations(variables)
    names = frozenset(variables)
    for stem_length in range(max_stem + 1):
        for loop_length in range(min_loop, max_loop + 1):
            for stem in itertools.product(letters, repeat=stem_length):
                for loop in itertools.product(letters, repeat=loop_length):
                    yield LassoWord(tuple(stem), tuple(loop), names)


def enumerate_words(variables, length: int) -> Iterator[tuple]:
    """Finite words of exactly ``length`` letters, smallest valuations first."""
    return itertools.product(all_valuations(variables), repeat=length)
