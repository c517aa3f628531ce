"""Time-bounded distinguishability.

A pair (u, v) of environment traces is time-bounded distinguishable for p
when every output sequence that makes u correct finitely violates p's
specification on v. Its complement is built directly: the pairs sharing an
output sequence that is correct on u and has no bad prefix on v.

When membership only depends on a prefix of bounded length, the relation is
also kept as that finite set of prefix pairs together with its cylinder
automaton; information classes are read off that set.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Optional

from automata.complement import complement_nba_bounded
from automata.emptiness import is_empty, lasso_member, live_states
from automata.nba import TRUE_GUARD, Nba, UcaAutomaton, cube_cover, explore, full_guard
from automata.operations import exists_project, pair_product, product, reduce
from automata.pairs import env_letter_bits
from automata.translate import ltl_to_nba, safety_closure
from config import ToolConfig, get_tool_config
from infoflow.compatibility import check_process_formula
from spec_model.architecture import Architecture
from spec_model.words import LassoWord, pair_variables, pair_word

logger = logging.getLogger(__name__)

_IN = "in"
_OUT = "out"


@dataclass(frozen=True)
class TbDistAutomaton:
    inner: UcaAutomaton
    non_lambda: Nba
    lambda_nba: Nba
    process: str
    env: tuple
    depth: Optional[int] = None
    prefix_pairs: Optional[frozenset] = None

    @property
    def incomplete(self) -> bool:
        return self.lambda_nba.incomplete

    @property
    def prefix_determined(self) -> bool:
        return self.depth is not None

    @property
    def empty(self) -> bool:
        """The relation is known to be empty."""
        if self.prefix_determined:
            return not self.prefix_pairs
        return not self.incomplete and is_empty(self.lambda_nba).empty


def prefix_automaton(variables, prefixes, depth: int, inside: bool = True) -> Nba:
    """Cylinder of a set of finite words of length ``depth``, or its complement.

    Words are tuples of letters (bitmasks over ``variables``).
    """
    variables = tuple(variables)
    width = len(variables)
    prefixes = set(prefixes)
    children = {}
    for word in prefixes:
        for i in range(depth):
            children.setdefault(word[:i], set()).add(word[i])
    every_letter = frozenset(range(1 << width))

    def successors(key):
        if key in (_IN, _OUT):
            yield TRUE_GUARD, key
            return
        letters = children.get(key, set())
        if len(key) + 1 == depth:
            for guard in cube_cover(letters, width):
                yield guard, _IN
        else:
            for letter in sorted(letters):
                yield full_guard(letter, width), key + (letter,)
        for guard in cube_cover(every_letter - letters, width):
            yield guard, _OUT

    if depth == 0:
        initial = _IN if prefixes else _OUT
    else:
        initial = ()
    wanted = _IN if inside else _OUT
    automaton, _ = explore(variables, initial, successors, lambda key: key == wanted)
    return automaton


def _tail_states(a: Nba) -> frozenset:
    """States accepting the all-false word."""
    zero = replace(a, edges=tuple(tuple((g, t) for g, t in out if g.matches(0)) for out in a.edges))
    return frozenset(live_states(zero))


def _prefix_pairs(non_lambda: Nba, tail, left_bits, right_bits, depth: int) -> set:
    """Prefix pairs whose all-false continuation lies in the relation."""
    steps = {}

    def step(states, letter):
        key = (states, letter)
        if key not in steps:
            steps[key] = non_lambda.step(states, letter)
        return steps[key]

    words = list(itertools.product(range(len(left_bits)), repeat=depth))
    pairs = set()
    for u in words:
        for v in words:
            states = frozenset({non_lambda.initial})
            for a, b in zip(u, v):
                states = step(states, left_bits[a] | right_bits[b])
            if not states & tail:
                pairs.add((u, v))
    return pairs


def _prefix_cylinder(non_lambda: Nba, complement: Nba, env, config: ToolConfig):
    variables = non_lambda.variables
    tail = _tail_states(non_lambda)
    left_bits = env_letter_bits(variables, env, 1)
    right_bits = env_letter_bits(variables, env, 2)

    for depth in range(config.class_depth + 1):
        if (1 << len(env)) ** (2 * depth) > config.class_words_cap:
            logger.info(f"Prefix depth {depth} exceeds the word cap {config.class_words_cap}")
            break
        pairs = _prefix_pairs(non_lambda, tail, left_bits, right_bits, depth)
        letters = {tuple(left_bits[a] | right_bits[b] for a, b in zip(u, v)) for u, v in pairs}
        inside = prefix_automaton(variables, letters, depth, inside=True)
        outside = prefix_automaton(variables, letters, depth, inside=False)
        if is_empty(product(inside, non_lambda)) and is_empty(product(complement, outside)):
            logger.info(f"Time-bounded distinguishability is determined by prefixes of length "
                        f"{depth} ({len(pairs)} pairs)")
            if complement.incomplete:
                inside = replace(inside, incomplete=True)
            return depth, frozenset(pairs), inside
    return None, None, None


def build_tb_dist_automaton(phi_p, arch: Architecture, process: str,
                            config: Optional[ToolConfig] = None) -> TbDistAutomaton:
    check_process_formula(phi_p, arch, process)
    config = config or get_tool_config()
    logger.info(f"Building time-bounded distinguishability automaton for {process}...")
    outputs = arch.outputs(process)
    env = tuple(sorted(arch.outputs_env))
    variables = tuple(sorted(outputs | arch.outputs_env))

    correct = ltl_to_nba(phi_p, variables)
    safe = safety_closure(phi_p, variables)
    joint = pair_product(correct, safe, equal_on=outputs)
    non_lambda = reduce(exists_project(joint, pair_variables(outputs)))
    logger.info(f"Complement of the relation for {process}: {non_lambda.num_states} states")

    complement = complement_nba_bounded(non_lambda, config.rank_cap_for(non_lambda.num_states))
    if complement.incomplete:
        logger.warning(f"Time-bounded distinguishability of {process} is under-approximated")

    depth, pairs, cylinder = _prefix_cylinder(non_lambda, complement, env, config)
    lambda_nba = cylinder if cylinder is not None else complement
    return TbDistAutomaton(
        inner=UcaAutomaton.dual_of(non_lambda),
        non_lambda=non_lambda,
        lambda_nba=lambda_nba,
        process=process,
        env=env,
        depth=depth,
        prefix_pairs=pairs,
    )


def lambda_member(tb: TbDistAutomaton, left: LassoWord, right: LassoWord) -> bool:
    return not lasso_member(tb.non_lambda, pair_word(left, right))
