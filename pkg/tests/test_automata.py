"""
Tests for the automata package, checked against the reference semantics.
"""

from __future__ import annotations

import random

import pytest

from automata.complement import complement_nba_bounded, complement_ranked, complement_weak
from automata.emptiness import is_empty, is_weak, lasso_member, live_states
from automata.export import dump_automaton, to_dot
from automata.nba import (
    TRUE_GUARD, Guard, Nba, Nfa, UcaAutomaton, cube_letters, letter_regions, lift, literal_guard, rename,
)
from automata.operations import (
    differ_automaton, exists_project, pair_product, product, reduce, self_compose, union,
)
from automata.safety import (
    bad_prefix_nfa, complement_det, determinize_safety, finite_violation_nba,
)
from automata.translate import ltl_to_nba, safety_closure
from errors import AlphabetMismatchError
from spec_model.ltl import And, format_ltl
from spec_model.ltl_parser import parse_ltl
from spec_model.semantics import eval_ltl
from spec_model.words import combine, enumerate_lassos, enumerate_words, lasso, normalize, pair_word, project

from oracles import random_formula, random_lasso

IO = ("in", "out")


def small_lassos(variables, stem=2, loop=2):
    return list(enumerate_lassos(variables, stem, loop))


def infinitely_often_a() -> Nba:
    """Deterministic GF a; its single SCC mixes accepting and rejecting states."""
    a, not_a = Guard(1, 0), Guard(0, 1)
    return Nba(("a",), (((not_a, 0), (a, 1)), ((not_a, 0), (a, 1))), frozenset({1}))


def contains_out() -> Nfa:
    out = Guard(1, 0)
    return Nfa(("out",), (((TRUE_GUARD, 0), (out, 1)), ((TRUE_GUARD, 1),)), frozenset({1}))


def same_on(u, v, variables) -> bool:
    left, right = normalize(project(u, variables), project(v, variables))
    return left == right


def tracking_automaton(w, variables) -> Nba:
    """Words over ``variables`` whose projection onto the variables of w is w."""
    index = {v: i for i, v in enumerate(variables)}
    edges = []
    for position in w.positions():
        guard = TRUE_GUARD
        for name in w.variables:
            guard = guard.conjoin(literal_guard(index[name], name in w.letter(position)))
        edges.append(((guard, w.successor(position)),))
    return Nba(tuple(variables), tuple(edges), frozenset(range(w.length)))


# ======================== Translation ========================

class TestTranslation:
    def test_eventually(self):
        a = ltl_to_nba(parse_ltl("F out"))
        assert lasso_member(a, lasso([], [set(), {"out"}], {"out"}))
        assert lasso_member(a, lasso([{"out"}], [set()], {"out"}))
        assert not lasso_member(a, lasso([], [set()], {"out"}))

    def test_false_is_empty(self):
        assert is_empty(ltl_to_nba(parse_ltl("false"), IO)).empty

    def test_contradiction_is_empty(self):
        assert is_empty(ltl_to_nba(parse_ltl("G out & F !out"))).empty

    def test_globally_not(self):
        a = ltl_to_nba(parse_ltl("G !out"), IO)
        assert lasso_member(a, lasso([{"in"}], [set()], IO))
        assert not lasso_member(a, lasso([set(), set()], [{"out"}], IO))

    def test_running_example(self):
        a = ltl_to_nba(parse_ltl("in <-> F out"))
        assert not lasso_member(a, lasso([{"in"}], [set()], IO))
        assert lasso_member(a, lasso([{"in"}, set()], [{"out"}], IO))

    def test_word_over_other_alphabet_is_rejected(self):
        with pytest.raises(AlphabetMismatchError):
            lasso_member(ltl_to_nba(parse_ltl("F out")), lasso([], [set()], IO))

    def test_agrees_with_semantics_on_random_formulas(self):
        rng = random.Random(17)
        for _ in range(500):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 8))
            a = ltl_to_nba(phi, ("a", "b"))
            for _ in range(5):
                w = random_lasso(rng, ["a", "b"])
                assert lasso_member(a, w) == eval_ltl(w, phi), f"{format_ltl(phi)} on {w}"

    def test_live_trimmed(self):
        a = ltl_to_nba(parse_ltl("in <-> F out"))
        assert live_states(a) == set(range(a.num_states))

    def test_safety_closure_of_liveness_is_universal(self):
        closure = safety_closure(parse_ltl("F out"))
        for w in small_lassos({"out"}):
            assert lasso_member(closure, w)


# ======================== Emptiness ========================

class TestEmptiness:
    def test_witness_is_accepted(self):
        rng = random.Random(23)
        for _ in range(60):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 7))
            a = ltl_to_nba(phi, ("a", "b"))
            check = is_empty(a)
            if not check.empty:
                assert lasso_member(a, check.witness)
                assert eval_ltl(check.witness, phi)

    def test_bool_means_empty(self):
        assert is_empty(ltl_to_nba(parse_ltl("false"), ("a",)))
        assert not is_empty(ltl_to_nba(parse_ltl("G a")))

    def test_weakness(self):
        assert is_weak(ltl_to_nba(parse_ltl("G !out")))
        assert not is_weak(infinitely_often_a())


# ======================== Boolean operations ========================

class TestOperations:
    def test_product_with_complementary_formula_is_empty(self):
        a = ltl_to_nba(parse_ltl("F a"))
        b = ltl_to_nba(parse_ltl("G !a"))
        assert is_empty(product(a, b)).empty

    def test_product_agrees_with_conjunction(self):
        left, right = parse_ltl("G F a"), parse_ltl("G F b")
        p = product(ltl_to_nba(left, ("a", "b")), ltl_to_nba(right, ("a", "b")))
        for w in small_lassos({"a", "b"}, 1, 2):
            assert lasso_member(p, w) == eval_ltl(w, And(left, right))

    def test_product_requires_same_alphabet(self):
        with pytest.raises(AlphabetMismatchError):
            product(ltl_to_nba(parse_ltl("F a")), ltl_to_nba(parse_ltl("F b")))

    def test_union_with_complement_is_universal(self):
        u = union(ltl_to_nba(parse_ltl("F a")), ltl_to_nba(parse_ltl("G !a")))
        for w in small_lassos({"a"}):
            assert lasso_member(u, w)

    def test_project_globally_out_is_universal(self):
        a = exists_project(ltl_to_nba(parse_ltl("G out"), IO), {"out"})
        assert a.variables == ("in",)
        for w in small_lassos({"in"}):
            assert lasso_member(a, w)

    def test_project_keeps_visible_constraint(self):
        a = exists_project(ltl_to_nba(parse_ltl("in & G out")), {"out"})
        for w in small_lassos({"in"}):
            assert lasso_member(a, w) == ("in" in w.letter(0))

    def test_lift_adds_free_variable(self):
        phi = parse_ltl("F a")
        a = lift(ltl_to_nba(phi), ("a", "b"))
        for w in small_lassos({"a", "b"}, 1, 2):
            assert lasso_member(a, w) == eval_ltl(w, phi)

    def test_self_composition_by_brute_force(self):
        phi = parse_ltl("in <-> F out")
        pairs = self_compose(ltl_to_nba(phi), equal_on={"in"})
        words = small_lassos(set(IO), 1, 1)
        for u in words:
            for v in words:
                expected = (eval_ltl(u, phi) and eval_ltl(v, phi)
                            and ("in" in u.letter(0)) == ("in" in v.letter(0))
                            and all(("in" in u.letter(i)) == ("in" in v.letter(i))
                                    for i in range(1, 3)))
                assert lasso_member(pairs, pair_word(u, v)) == expected

    def test_self_composition_on_random_formulas(self):
        rng = random.Random(41)
        for _ in range(200):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 6))
            pairs = self_compose(ltl_to_nba(phi, ("a", "b")), equal_on={"a"})
            for _ in range(10):
                u = random_lasso(rng, ["a", "b"], 2, 2)
                # half of the partners share the a-projection of u
                if rng.random() < 0.5:
                    v = combine(project(u, {"a"}), random_lasso(rng, ["b"], 2, 2))
                else:
                    v = random_lasso(rng, ["a", "b"], 2, 2)
                expected = eval_ltl(u, phi) and eval_ltl(v, phi) and same_on(u, v, {"a"})
                assert lasso_member(pairs, pair_word(u, v)) == expected, f"{format_ltl(phi)} on {u}, {v}"

    def test_projection_on_random_formulas(self):
        rng = random.Random(43)
        extensions = small_lassos({"b"}, 1, 2)
        for _ in range(200):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 6))
            a = ltl_to_nba(phi, ("a", "b"))
            projected = exists_project(a, {"b"})
            for _ in range(3):
                w = random_lasso(rng, ["a"], 2, 2)
                accepted = lasso_member(projected, w)
                extended = is_empty(product(a, tracking_automaton(w, ("a", "b"))))
                assert accepted == (not extended.empty), f"{format_ltl(phi)} on {w}"
                if accepted:
                    assert eval_ltl(extended.witness, phi)
                    assert same_on(extended.witness, w, {"a"})
                else:
                    assert not any(eval_ltl(combine(w, x), phi) for x in extensions), f"{format_ltl(phi)} on {w}"

    def test_rename_moves_constraints(self):
        a = rename(ltl_to_nba(parse_ltl("F a")), {"a": "z"})
        assert a.variables == ("z",)
        assert lasso_member(a, lasso([], [{"z"}], {"z"}))
        assert not lasso_member(a, lasso([], [set()], {"z"}))

    def test_rename_cannot_merge_variables(self):
        with pytest.raises(AlphabetMismatchError):
            rename(ltl_to_nba(parse_ltl("a & b")), {"a": "b"})

    def test_pair_product_of_different_automata(self):
        left, right = parse_ltl("F a"), parse_ltl("G !a")
        pairs = pair_product(ltl_to_nba(left), ltl_to_nba(right))
        words = small_lassos({"a"}, 1, 2)
        for u in words:
            for v in words:
                expected = eval_ltl(u, left) and eval_ltl(v, right)
                assert lasso_member(pairs, pair_word(u, v)) == expected

    def test_differ_automaton(self):
        variables = ("c@1", "c@2")
        d = differ_automaton(variables, {"c"})
        same = pair_word(lasso([], [{"c"}], {"c"}), lasso([], [{"c"}], {"c"}))
        different = pair_word(lasso([{"c"}], [set()], {"c"}), lasso([], [set()], {"c"}))
        assert not lasso_member(d, same)
        assert lasso_member(d, different)

    def test_reduce_preserves_language(self):
        rng = random.Random(31)
        for _ in range(40):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 7))
            a = ltl_to_nba(phi, ("a", "b"))
            reduced = reduce(a)
            assert reduced.num_states <= a.num_states
            for _ in range(5):
                w = random_lasso(rng, ["a", "b"])
                assert lasso_member(reduced, w) == lasso_member(a, w)

    def test_universal_dual(self):
        nba = ltl_to_nba(parse_ltl("F out"))
        uca = UcaAutomaton.dual_of(nba)
        assert uca.dual() == nba


# ======================== Letter regions ========================

class TestLetterRegions:
    def test_regions_partition_the_alphabet(self):
        guards = [Guard(1, 0), Guard(2, 4), Guard(0, 3), Guard(5, 0)]
        regions = letter_regions(guards)
        for letter in range(8):
            containing = [r for r in regions if r.matches(letter)]
            assert len(containing) == 1
        for region in regions:
            letters = list(cube_letters(region, 3))
            for guard in guards:
                inside = [guard.matches(x) for x in letters]
                assert all(inside) or not any(inside)


# ======================== Finite words ========================

class TestSafety:
    def test_determinize(self):
        dfa = determinize_safety(contains_out())
        assert dfa.num_states == 2
        for n in range(5):
            for word in enumerate_words({"out"}, n):
                assert dfa.accepts(word) == any("out" in x for x in word)

    def test_complement_det(self):
        flipped = complement_det(determinize_safety(contains_out()))
        for n in range(5):
            for word in enumerate_words({"out"}, n):
                assert flipped.accepts(word) == (not any("out" in x for x in word))

    def test_bad_prefixes_of_globally(self):
        bad = bad_prefix_nfa(parse_ltl("G !out"))
        for n in range(4):
            for word in enumerate_words({"out"}, n):
                assert bad.accepts(word) == any("out" in x for x in word)

    def test_bad_prefixes_of_running_example(self):
        bad = bad_prefix_nfa(parse_ltl("in <-> F out"))
        for n in range(4):
            for word in enumerate_words(set(IO), n):
                expected = n > 0 and "in" not in word[0] and any("out" in x for x in word)
                assert bad.accepts(word) == expected

    def test_liveness_has_no_bad_prefix(self):
        assert not bad_prefix_nfa(parse_ltl("F out")).reaches_accepting()

    def test_finite_violation(self):
        viol = finite_violation_nba(parse_ltl("G !out"))
        for w in small_lassos({"out"}):
            assert lasso_member(viol, w) == any("out" in x for x in w.letters())


# ======================== Complementation ========================

class TestComplement:
    def test_false_complements_to_universal(self):
        c = complement_nba_bounded(ltl_to_nba(parse_ltl("false"), ("out",)), 2)
        for w in small_lassos({"out"}):
            assert lasso_member(c, w)

    def test_eventually_complements_to_never(self):
        c = complement_nba_bounded(ltl_to_nba(parse_ltl("F out")), 2)
        never = parse_ltl("G !out")
        for w in small_lassos({"out"}, 3, 3):
            assert lasso_member(c, w) == eval_ltl(w, never)

    def test_double_complement(self):
        phi = parse_ltl("G a")
        twice = complement_weak(complement_weak(ltl_to_nba(phi)))
        for w in small_lassos({"a"}, 2, 3):
            assert lasso_member(twice, w) == eval_ltl(w, phi)

    def test_weak_complement_on_random_formulas(self):
        rng = random.Random(41)
        checked = 0
        for _ in range(80):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 6))
            a = ltl_to_nba(phi, ("a", "b"))
            if not is_weak(a):
                continue
            checked += 1
            c = complement_weak(a)
            for _ in range(5):
                w = random_lasso(rng, ["a", "b"])
                assert lasso_member(c, w) != eval_ltl(w, phi), f"{format_ltl(phi)} on {w}"
        assert checked > 0

    def test_ranked_complement_of_infinitely_often(self):
        a = infinitely_often_a()
        c = complement_ranked(a, 2)
        assert not c.incomplete
        assert is_empty(product(c, a)).empty
        eventually_never = parse_ltl("F G !a")
        for w in small_lassos({"a"}, 2, 3):
            assert lasso_member(c, w) == eval_ltl(w, eventually_never)

    def test_low_rank_cap_is_flagged(self):
        assert complement_ranked(infinitely_often_a(), 1).incomplete

    def test_rank_cap_must_be_positive(self):
        with pytest.raises(ValueError):
            complement_nba_bounded(infinitely_often_a(), 0)


# ======================== Export ========================

class TestExport:
    def test_dot_marks_accepting_states(self):
        source = to_dot(ltl_to_nba(parse_ltl("F out")), "f_out").source
        assert "doublecircle" in source
        assert "out" in source

    def test_dump_writes_file(self, tmp_path):
        path = dump_automaton(ltl_to_nba(parse_ltl("G !out")), tmp_path, "never_out")
        assert (tmp_path / "never_out.dot").exists()
        assert str(path).endswith("never_out.dot")
