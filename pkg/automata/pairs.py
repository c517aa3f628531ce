"""Guards over pair alphabets, where ``x@1`` and ``x@2`` are the two copies of ``x``."""

from __future__ import annotations

from automata.nba import TRUE_GUARD, Guard, literal_guard


def copy_guard(variables, name: str, copy: int, value: bool) -> Guard:
    return literal_guard(list(variables).index(f"{name}@{copy}"), value)


def conjoin_covers(*covers) -> list:
    """Pairwise conjunction of cube covers, dropping contradictions."""
    result = [TRUE_GUARD]
    for cover in covers:
        result = [c for c in (g.conjoin(h) for g in result for h in cover) if c is not None]
    return list(dict.fromkeys(result))


def equal_cover(variables, names) -> list:
    """Disjoint cubes: every name agrees on both copies."""
    covers = []
    for name in sorted(names):
        covers.append([copy_guard(variables, name, 1, value).conjoin(copy_guard(variables, name, 2, value))
                       for value in (True, False)])
    return conjoin_covers(*covers)


def differ_cover(variables, names) -> list:
    """Cubes (overlapping) whose union is: some name differs between the copies."""
    cover = []
    for name in sorted(names):
        for value in (True, False):
            cover.append(copy_guard(variables, name, 1, value).conjoin(
                copy_guard(variables, name, 2, not value)))
    return cover


def first_copy(variables, name: str, value: bool) -> list:
    return [copy_guard(variables, name, 1, value)]


def letter_table(variables, names) -> list:
    """Map every letter over ``names`` (bitmask in the given order) into a letter over ``variables``."""
    position = {v: i for i, v in enumerate(variables)}
    targets = [position[name] for name in names]
    table = []
    for mask in range(1 << len(targets)):
        bits = 0
        for j, target in enumerate(targets):
            if mask >> j & 1:
                bits |= 1 << target
        table.append(bits)
    return table


def env_letter_bits(variables, env, copy: int) -> list:
    """letter_table for the ``copy`` side of a pair alphabet."""
    return letter_table(variables, [f"{name}@{copy}" for name in env])
