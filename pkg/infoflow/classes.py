"""Information classes.

With a prefix-determined time-bounded distinguishability relation, two
environment prefixes belong to the same class when they are distinguishable
from exactly the same partners. Each class gets a fresh token variable, a
cylinder automaton, a witness lasso and an LTL description over
position-shifted environment literals.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from automata.nba import Guard, Nba, cube_cover
from config import ToolConfig, get_tool_config
from errors import ClassExtractionError
from infoflow.tb_dist import TbDistAutomaton, prefix_automaton
from spec_model.ltl import TRUE, Atom, Not, conjunction, disjunction, next_n, simplify, size
from spec_model.words import LassoWord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InfoClass:
    index: int
    token: str
    env: tuple
    depth: int
    words: frozenset
    language: Nba
    witness: LassoWord
    formula: object

    def contains(self, w: LassoWord) -> bool:
        return self.word_of(w) in self.words

    def word_of(self, w: LassoWord) -> tuple:
        """The length-``depth`` prefix of ``w`` as bitmasks over ``env``."""
        return tuple(_mask(w.letter(i), self.env) for i in range(self.depth))

    @property
    def universal(self) -> bool:
        return len(self.words) == (1 << len(self.env)) ** self.depth


def _mask(letter, env) -> int:
    return sum(1 << i for i, name in enumerate(env) if name in letter)


def _flatten(word, width) -> int:
    return sum(letter << (j * width) for j, letter in enumerate(word))


def _cube_formula(guard: Guard, env, width: int):
    parts = []
    for bit in range(max(guard.pos, guard.neg).bit_length()):
        position, index = divmod(bit, width)
        if guard.pos >> bit & 1:
            parts.append(next_n(Atom(env[index]), position))
        elif guard.neg >> bit & 1:
            parts.append(next_n(Not(Atom(env[index])), position))
    return conjunction(parts)


def words_formula(words, env, depth: int):
    """Smallest of the cube cover of ``words`` and the negated cover of the rest."""
    width = len(env)
    total = depth * width
    flat = {_flatten(w, width) for w in words}
    direct = disjunction(_cube_formula(g, env, width) for g in cube_cover(flat, total))
    rest = set(range(1 << total)) - flat
    negated = Not(disjunction(_cube_formula(g, env, width) for g in cube_cover(rest, total)))
    direct, negated = simplify(direct), simplify(negated)
    return direct if size(direct) <= size(negated) else negated


def _witness(word, env) -> LassoWord:
    stem = tuple(frozenset(name for i, name in enumerate(env) if letter >> i & 1) for letter in word)
    return LassoWord(stem, (frozenset(),), frozenset(env))


def extract_info_classes(tb: TbDistAutomaton, config: Optional[ToolConfig] = None,
                         prefix: str = "ic") -> list:
    config = config or get_tool_config()
    if not tb.prefix_determined:
        raise ClassExtractionError(
            "finiteness assumption violated or cap too low",
            [f"no prefix length up to {config.class_depth} determines the relation of {tb.process}"])

    env, depth = tb.env, tb.depth
    words = list(itertools.product(range(1 << len(env)), repeat=depth))
    rows = {u: set() for u in words}
    for u, v in tb.prefix_pairs:
        rows[u].add(v)

    groups = {}
    for u in words:
        groups.setdefault(frozenset(rows[u]), []).append(u)
    ordered = sorted(groups.items(), key=lambda item: (not item[0], min(item[1])))
    if len(ordered) > config.class_cap:
        raise ClassExtractionError(
            "finiteness assumption violated or cap too low",
            [f"{len(ordered)} classes for {tb.process} exceed the cap {config.class_cap}"])

    classes = []
    for index, (_, members) in enumerate(ordered):
        members = frozenset(members)
        info = InfoClass(
            index=index,
            token=f"{prefix}{index}",
            env=env,
            depth=depth,
            words=members,
            language=prefix_automaton(env, members, depth),
            witness=_witness(min(members), env),
            formula=TRUE if len(members) == len(words) else words_formula(members, env, depth),
        )
        classes.append(info)
    logger.info(f"Extracted {len(classes)} information classes for {tb.process}")
    return classes
