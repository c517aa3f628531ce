"""LTL abstract syntax, printing and rewriting.

Formulas are immutable trees of frozen dataclasses, so they hash and compare
structurally and can be used as cache keys by the automata translation.
Atoms of pair (self-composed) formulas carry a trace index suffix: ``in@1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Union


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Next:
    operand: "Formula"


@dataclass(frozen=True)
class Until:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Release:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Globally:
    operand: "Formula"


@dataclass(frozen=True)
class Finally:
    operand: "Formula"


Formula = Union[Const, Atom, Not, And, Or, Implies, Iff, Next, Until, Release, Globally, Finally]

TRUE = Const(True)
FALSE = Const(False)

UNARY = (Not, Next, Globally, Finally)
BINARY = (And, Or, Implies, Iff, Until, Release)

_SYMBOLS = {
    Not: "!", Next: "X", Globally: "G", Finally: "F",
    And: "&", Or: "|", Implies: "->", Iff: "<->", Until: "U", Release: "R",
}

# Binding strength, loosest first.
_LEVEL = {Iff: 1, Implies: 2, Or: 3, And: 4, Until: 5, Release: 5,
          Not: 6, Next: 6, Globally: 6, Finally: 6, Atom: 7, Const: 7}

_RIGHT_ASSOC = (Implies, Until, Release)


def children(phi):
    if isinstance(phi, UNARY):
        return (phi.operand,)
    if isinstance(phi, BINARY):
        return (phi.left, phi.right)
    return ()


def atoms(phi) -> frozenset:
    found = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        stack.extend(children(node))
    return frozenset(found)


def size(phi) -> int:
    return 1 + sum(size(child) for child in children(phi))


def subformulas(phi) -> list:
    """Post-order list of distinct subformulas (children before parents)."""
    order = []
    seen = set()

    def visit(node):
        if node in seen:
            return
        for child in children(node):
            visit(child)
        seen.add(node)
        order.append(node)

    visit(phi)
    return order


def format_ltl(phi) -> str:
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Atom):
        return phi.name
    level = _LEVEL[type(phi)]
    if isinstance(phi, UNARY):
        inner = _wrap(phi.operand, _LEVEL[type(phi.operand)] < level)
        symbol = _SYMBOLS[type(phi)]
        return f"{symbol}{inner}" if symbol == "!" else f"{symbol} {inner}"
    left_level = _LEVEL[type(phi.left)]
    right_level = _LEVEL[type(phi.right)]
    if isinstance(phi, _RIGHT_ASSOC):
        left = _wrap(phi.left, left_level <= level)
        right = _wrap(phi.right, right_level < level)
    elif isinstance(phi, Iff):
        left = _wrap(phi.left, left_level <= level)
        right = _wrap(phi.right, right_level <= level)
    else:
        left = _wrap(phi.left, left_level < level)
        right = _wrap(phi.right, right_level <= level)
    return f"{left} {_SYMBOLS[type(phi)]} {right}"


def _wrap(phi, parenthesize):
    text = format_ltl(phi)
    return f"({text})" if parenthesize else text


def rebuild(phi, new_children):
    if isinstance(phi, UNARY):
        return type(phi)(new_children[0])
    if isinstance(phi, BINARY):
        return type(phi)(new_children[0], new_children[1])
    return phi


def map_atoms(phi, fn):
    """Replace every atom by ``fn(name)`` (a formula)."""
    if isinstance(phi, Atom):
        return fn(phi.name)
    if isinstance(phi, Const):
        return phi
    return rebuild(phi, [map_atoms(child, fn) for child in children(phi)])


def rename(phi, mapping: Mapping[str, str]):
    return map_atoms(phi, lambda name: Atom(mapping.get(name, name)))


def indexed(phi, copy: int):
    """Attach the trace index ``copy`` to every atom."""
    return map_atoms(phi, lambda name: Atom(f"{name}@{copy}"))


def conjunction(formulas: Iterable) -> Formula:
    items = list(formulas)
    if not items:
        return TRUE
    return reduce(And, items)


def disjunction(formulas: Iterable) -> Formula:
    items = list(formulas)
    if not items:
        return FALSE
    return reduce(Or, items)


def xor(left, right):
    return Not(Iff(left, right))


def next_n(phi, steps: int):
    for _ in range(steps):
        phi = Next(phi)
    return phi


def negate(phi):
    return simplify(Not(phi))


def to_nnf(phi, negated: bool = False):
    """Negation normal form over {const, literal, &, |, X, U, R, G, F}."""
    if isinstance(phi, Const):
        return Const(phi.value != negated)
    if isinstance(phi, Atom):
        return Not(phi) if negated else phi
    if isinstance(phi, Not):
        return to_nnf(phi.operand, not negated)
    if isinstance(phi, And):
        op = Or if negated else And
        return op(to_nnf(phi.left, negated), to_nnf(phi.right, negated))
    if isinstance(phi, Or):
        op = And if negated else Or
        return op(to_nnf(phi.left, negated), to_nnf(phi.right, negated))
    if isinstance(phi, Implies):
        return to_nnf(Or(Not(phi.left), phi.right), negated)
    if isinstance(phi, Iff):
        both = And(phi.left, phi.right)
        neither = And(Not(phi.left), Not(phi.right))
        return to_nnf(Or(both, neither), negated)
    if isinstance(phi, Next):
        return Next(to_nnf(phi.operand, negated))
    if isinstance(phi, Until):
        op = Release if negated else Until
        return op(to_nnf(phi.left, negated), to_nnf(phi.right, negated))
    if isinstance(phi, Release):
        op = Until if negated else Release
        return op(to_nnf(phi.left, negated), to_nnf(phi.right, negated))
    if isinstance(phi, Globally):
        op = Finally if negated else Globally
        return op(to_nnf(phi.operand, negated))
    if isinstance(phi, Finally):
        op = Globally if negated else Finally
        return op(to_nnf(phi.operand, negated))
    raise TypeError(f"Not a formula: {phi!r}")


def _flatten(phi, kind):
    if isinstance(phi, kind):
        return _flatten(phi.left, kind) + _flatten(phi.right, kind)
    return [phi]


def _dedupe(items):
    result = []
    for item in items:
        if item not in result:
            result.append(item)
    return result


def simplify(phi):
    """Constant folding and light syntactic cleanup.

    Negations are pushed through X, F and G so that rendered formulas read
    the usual way (``G !out`` rather than ``!F out``).
    """
    if isinstance(phi, (Const, Atom)):
        return phi
    if isinstance(phi, Not):
        inner = simplify(phi.operand)
        if isinstance(inner, Const):
            return Const(not inner.value)
        if isinstance(inner, Not):
            return inner.operand
        if isinstance(inner, Finally):
            return Globally(simplify(Not(inner.operand)))
        if isinstance(inner, Globally):
            return Finally(simplify(Not(inner.operand)))
        if isinstance(inner, Next):
            return Next(simplify(Not(inner.operand)))
        return Not(inner)
    if isinstance(phi, And):
        parts = [simplify(part) for part in _flatten(phi, And)]
        parts = [p for part in parts for p in _flatten(part, And)]
        if FALSE in parts:
            return FALSE
        parts = _dedupe(p for p in parts if p != TRUE)
        parts = [p for p in parts if not (isinstance(p, Implies) and p.right in parts)]
        return conjunction(parts)
    if isinstance(phi, Or):
        parts = [simplify(part) for part in _flatten(phi, Or)]
        parts = [p for part in parts for p in _flatten(part, Or)]
        if TRUE in parts:
            return TRUE
        parts = _dedupe(p for p in parts if p != FALSE)
        return disjunction(parts)
    if isinstance(phi, Implies):
        left, right = simplify(phi.left), simplify(phi.right)
        if left == FALSE or right == TRUE:
            return TRUE
        if left == TRUE:
            return right
        if right == FALSE:
            return simplify(Not(left))
        if left == right:
            return TRUE
        return Implies(left, right)
    if isinstance(phi, Iff):
        left, right = simplify(phi.left), simplify(phi.right)
        if isinstance(left, Const):
            return right if left.value else simplify(Not(right))
        if isinstance(right, Const):
            return left if right.value else simplify(Not(left))
        if left == right:
            return TRUE
        return Iff(left, right)
    if isinstance(phi, Next):
        inner = simplify(phi.operand)
        return inner if isinstance(inner, Const) else Next(inner)
    if isinstance(phi, Finally):
        inner = simplify(phi.operand)
        if isinstance(inner, (Const, Finally)):
            return inner
        return Finally(inner)
    if isinstance(phi, Globally):
        inner = simplify(phi.operand)
        if isinstance(inner, (Const, Globally)):
            return inner
        return Globally(inner)
    if isinstance(phi, Until):
        left, right = simplify(phi.left), simplify(phi.right)
        if isinstance(right, Const) or left == FALSE:
            return right
        if left == TRUE:
            return simplify(Finally(right))
        return Until(left, right)
    if isinstance(phi, Release):
        left, right = simplify(phi.left), simplify(phi.right)
        if isinstance(right, Const) or left == TRUE:
            return right
        if left == FALSE:
            return simplify(Globally(right))
        return Release(left, right)
    raise TypeError(f"Not a formula: {phi!r}")
