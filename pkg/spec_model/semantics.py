"""Reference LTL semantics on lasso words.

This evaluator is the oracle the automata constructions are tested against.
Every subformula gets one truth value per lasso position; temporal operators
are solved as fixpoints over the position graph, where the last position
loops back to the first loop position.
"""

from __future__ import annotations

from errors import AlphabetMismatchError
from spec_model.ltl import (
    And, Atom, Const, Finally, Globally, Iff, Implies, Next, Not, Or, Release,
    Until, atoms, subformulas,
)
from spec_model.words import LassoWord


def eval_ltl(w: LassoWord, phi) -> bool:
    return evaluate_positions(w, phi)[0]


def evaluate_positions(w: LassoWord, phi) -> list:
    missing = atoms(phi) - w.variables
    if missing:
        raise AlphabetMismatchError(f"Formula atoms {sorted(missing)} not in word alphabet")

    n = w.length
    succ = [w.successor(i) for i in range(n)]
    values = {}

    for node in subformulas(phi):
        if isinstance(node, Const):
            row = [node.value] * n
        elif isinstance(node, Atom):
            row = [node.name in w.letter(i) for i in range(n)]
        elif isinstance(node, Not):
            row = [not x for x in values[node.operand]]
        elif isinstance(node, And):
            row = [a and b for a, b in zip(values[node.left], values[node.right])]
        elif isinstance(node, Or):
            row = [a or b for a, b in zip(values[node.left], values[node.right])]
        elif isinstance(node, Implies):
            row = [(not a) or b for a, b in zip(values[node.left], values[node.right])]
        elif isinstance(node, Iff):
            row = [a == b for a, b in zip(values[node.left], values[node.right])]
        elif isinstance(node, Next):
            operand = values[node.operand]
            row = [operand[succ[i]] for i in range(n)]
        elif isinstance(node, Until):
            row = _fixpoint(values[node.left], values[node.right], succ, least=True)
        elif isinstance(node, Release):
            row = _fixpoint(values[node.left], values[node.right], succ, least=False)
        elif isinstance(node, Finally):
            row = _fixpoint([True] * n, values[node.operand], succ, least=True)
        elif isinstance(node, Globally):
            row = _fixpoint([False] * n, values[node.operand], succ, least=False)
        else:
            raise TypeError(f"Not a formula: {node!r}")
        values[node] = row

    return values[phi]


def _fixpoint(left, right, succ, least):
    # until:   v[i] = right[i] or (left[i] and v[succ i]),  least fixpoint
    # release: v[i] = right[i] and (left[i] or v[succ i]),  greatest fixpoint
    n = len(succ)
    row = [not least] * n
    changed = True
    while changed:
        changed = False
        for i in reversed(range(n)):
            if least:
                value = right[i] or (left[i] and row[succ[i]])
            else:
                value = right[i] and (left[i] or row[succ[i]])
            if value != row[i]:
                row[i] = value
                changed = True
    return row
