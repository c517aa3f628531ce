"""LTL text syntax.

The grammar is documented in docs/ltl_grammar.md. ASCII and the usual
unicode operator symbols are both accepted.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from lark import Lark, Transformer, UnexpectedInput

from errors import LtlSyntaxError, UndeclaredAtomError
from spec_model.ltl import (
    FALSE, TRUE, And, Atom, Finally, Globally, Iff, Implies, Next, Not, Or,
    Release, Until, atoms,
)

logger = logging.getLogger(__name__)

LTL_GRAMMAR = r"""
?start: iff

?iff: implies
    | iff ("<->" | "↔") implies        -> equivalence

?implies: disj
    | disj ("->" | "→") implies         -> implication

?disj: conj
    | disj ("|" | "||" | "∨") conj      -> disjunction

?conj: until
    | conj ("&" | "&&" | "∧") until     -> conjunction

?until: unary
    | unary "U" until                   -> until_op
    | unary "R" until                   -> release

?unary: primary
    | ("!" | "¬" | "~") unary           -> negation
    | ("X" | "○") unary                 -> next
    | ("F" | "◇") unary                 -> eventually
    | ("G" | "□") unary                 -> always

?primary: "true"                        -> true
    | "false"                           -> false
    | NAME                              -> atom
    | "(" iff ")"

NAME: /[A-Za-z_][A-Za-z0-9_]*(@[12])?/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


class LtlTransformer(Transformer):
    def true(self, _):
        return TRUE

    def false(self, _):
        return FALSE

    def atom(self, items):
        return Atom(str(items[0]))

    def negation(self, items):
        return Not(items[0])

    def next(self, items):
        return Next(items[0])

    def eventually(self, items):
        return Finally(items[0])

    def always(self, items):
        return Globally(items[0])

    def until_op(self, items):
        return Until(items[0], items[1])

    def release(self, items):
        return Release(items[0], items[1])

    def conjunction(self, items):
        return And(items[0], items[1])

    def disjunction(self, items):
        return Or(items[0], items[1])

    def implication(self, items):
        return Implies(items[0], items[1])

    def equivalence(self, items):
        return Iff(items[0], items[1])


@lru_cache(maxsize=1)
def _parser():
    return Lark(LTL_GRAMMAR, parser="lalr", transformer=LtlTransformer())


def parse_ltl(text: str, variables=None):
    """Parse ``text``; when ``variables`` is given every atom must be declared."""
    try:
        phi = _parser().parse(text)
    except UnexpectedInput as e:
        raise LtlSyntaxError(f"Unexpected input in formula {text!r}",
                             line=e.line, column=e.column) from e
    if variables is not None:
        undeclared = atoms(phi) - frozenset(variables)
        if undeclared:
            raise UndeclaredAtomError(undeclared)
    return phi
