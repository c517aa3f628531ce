"""
Tests for the information-flow analyses on the bit transmission example and its variants.
"""

from __future__ import annotations

import random
from dataclasses import replace
from math import lcm

import pytest

from automata.emptiness import lasso_member
from config import get_tool_config
from errors import AlphabetMismatchError, ClassExtractionError, UnsupportedFragmentError
from infoflow.classes import extract_info_classes
from infoflow.compatibility import build_compatibility_automaton, delta_member
from infoflow.component_spec import build_component_spec, relativize_spec
from infoflow.ifa import build_ifa_automaton
from infoflow.locality import locality_violation_automaton
from infoflow.tb_dist import build_tb_dist_automaton, lambda_member
from infoflow.tb_ifa import build_tb_ifa_automaton
from infoflow.uniformity import NON_UNIFORM, UNIFORM, check_uniformity_capped
from spec_model.ltl import TRUE, Atom, Finally, Implies, Not
from spec_model.ltl_parser import parse_ltl
from spec_model.semantics import eval_ltl
from spec_model.words import combine, enumerate_lassos, lasso, pair_word, project

from oracles import random_lasso

ENV = {"in"}
OBSERVED = {"in", "c", "t"}
LOCAL = {"in", "c", "t", "out"}


def env_lassos():
    return list(enumerate_lassos(ENV, 1, 2))


def starts_with_in(w):
    return "in" in w.letter(0)


def same_word(u, v):
    horizon = max(len(u.stem), len(v.stem)) + lcm(len(u.loop), len(v.loop))
    return all(u.letter(i) == v.letter(i) for i in range(horizon))


@pytest.fixture(scope="module")
def arch(bit_spec):
    return bit_spec.arch


@pytest.fixture(scope="module")
def phi_b(bit_spec):
    return bit_spec.phi_q


@pytest.fixture(scope="module")
def compat(phi_b, arch):
    return build_compatibility_automaton(phi_b, arch, "b")


@pytest.fixture(scope="module")
def tb(phi_b, arch):
    return build_tb_dist_automaton(phi_b, arch, "b")


@pytest.fixture(scope="module")
def classes(tb):
    return extract_info_classes(tb)


# ======================== Distinguishability ========================

class TestDistinguishability:
    def test_identical_inputs_are_compatible(self, compat):
        w = lasso([{"in"}], [set()], ENV)
        assert not delta_member(compat, w, w)

    def test_first_value_differs(self, compat):
        assert delta_member(compat, lasso([{"in"}], [set()], ENV), lasso([], [set()], ENV))

    def test_late_difference_is_compatible(self, compat):
        late = lasso([set(), {"in"}], [set()], ENV)
        assert not delta_member(compat, late, lasso([], [set()], ENV))

    def test_matches_closed_form(self, compat):
        for u in env_lassos():
            for v in env_lassos():
                assert delta_member(compat, u, v) == (starts_with_in(u) != starts_with_in(v)), (u, v)

    def test_symmetric(self, compat):
        words = env_lassos()
        for u in words:
            for v in words:
                assert delta_member(compat, u, v) == delta_member(compat, v, u)

    def test_true_spec_distinguishes_nothing(self, arch):
        c = build_compatibility_automaton(TRUE, arch, "b")
        assert not delta_member(c, lasso([{"in"}], [set()], ENV), lasso([], [set()], ENV))

    def test_pair_formula_is_not_a_process_specification(self, arch):
        with pytest.raises(UnsupportedFragmentError):
            build_compatibility_automaton(parse_ltl("in@1 <-> F out"), arch, "b")

    def test_specification_outside_scope(self, arch):
        with pytest.raises(AlphabetMismatchError):
            build_tb_dist_automaton(parse_ltl("in <-> F c"), arch, "b")


class TestIfa:
    def test_equal_initial_input_accepted(self, compat, arch):
        e = build_ifa_automaton(compat, arch)
        left = lasso([{"in", "c"}], [set()], OBSERVED)
        right = lasso([{"in"}], [{"t"}], OBSERVED)
        assert lasso_member(e.inner, pair_word(left, right))

    def test_equal_channel_rejected(self, compat, arch):
        e = build_ifa_automaton(compat, arch)
        left = lasso([{"in", "c"}], [{"c"}], OBSERVED)
        right = lasso([{"c"}], [{"c"}], OBSERVED)
        assert not lasso_member(e.inner, pair_word(left, right))

    def test_late_channel_difference_accepted(self, compat, arch):
        e = build_ifa_automaton(compat, arch)
        left = lasso([{"in", "c"}, {"c"}, {"c"}, set()], [{"c"}], OBSERVED)
        right = lasso([{"c"}], [{"c"}], OBSERVED)
        assert lasso_member(e.inner, pair_word(left, right))

    def test_matches_definition(self, compat, arch):
        e = build_ifa_automaton(compat, arch)
        rng = random.Random(13)
        inputs = arch.inputs("b")
        for _ in range(200):
            u = random_lasso(rng, sorted(OBSERVED), 2, 2)
            v = random_lasso(rng, sorted(OBSERVED), 2, 2)
            expected = (not delta_member(compat, project(u, ENV), project(v, ENV))
                        or not same_word(project(u, inputs), project(v, inputs)))
            assert lasso_member(e.inner, pair_word(u, v)) == expected, (u, v)


# ======================== Time-bounded distinguishability ========================

class TestTbDist:
    def test_prefix_determined_at_depth_one(self, tb):
        assert tb.depth == 1
        assert tb.prefix_pairs == frozenset({((1,), (0,))})
        assert not tb.incomplete

    def test_membership(self, tb):
        with_in = lasso([{"in"}], [set()], ENV)
        without = lasso([], [set()], ENV)
        assert lambda_member(tb, with_in, without)
        assert not lambda_member(tb, without, with_in)
        assert not lambda_member(tb, with_in, with_in)

    def test_matches_closed_form(self, tb):
        for u in env_lassos():
            for v in env_lassos():
                expected = starts_with_in(u) and not starts_with_in(v)
                assert lambda_member(tb, u, v) == expected, (u, v)
                assert lasso_member(tb.lambda_nba, pair_word(u, v)) == expected

    def test_refines_distinguishability(self, tb, compat):
        for u in env_lassos():
            for v in env_lassos():
                if lambda_member(tb, u, v):
                    assert delta_member(compat, u, v)

    def test_true_spec_is_empty(self, arch):
        empty = build_tb_dist_automaton(TRUE, arch, "b")
        assert empty.empty and empty.depth == 0


class TestTbIfa:
    def test_compatible_pair_accepted(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        left = lasso([{"c"}], [set()], OBSERVED)
        right = lasso([{"in"}], [set()], OBSERVED)
        assert lasso_member(chi.inner, pair_word(left, right))

    def test_difference_before_marker_accepted(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        left = lasso([{"in", "c"}, set(), {"t"}], [set()], OBSERVED)
        right = lasso([{"c"}, {"c"}, set()], [set()], OBSERVED)
        assert lasso_member(chi.inner, pair_word(left, right))
        assert not lasso_member(chi.violation, pair_word(left, right))

    def test_no_difference_up_to_marker_rejected(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        left = lasso([{"in", "c"}, {"c", "t"}], [set()], OBSERVED)
        right = lasso([{"c"}, {"c", "t"}], [{"c"}], OBSERVED)
        assert not lasso_member(chi.inner, pair_word(left, right))
        assert lasso_member(chi.violation, pair_word(left, right))

    def test_missing_marker_rejected(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        left = lasso([{"in", "c"}], [set()], OBSERVED)
        right = lasso([{"c"}], [{"c"}], OBSERVED)
        assert not lasso_member(chi.inner, pair_word(left, right))

    def test_violation_is_complement(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        rng = random.Random(17)
        for _ in range(200):
            u = random_lasso(rng, sorted(OBSERVED), 2, 2)
            v = random_lasso(rng, sorted(OBSERVED), 2, 2)
            pair = pair_word(u, v)
            assert lasso_member(chi.inner, pair) != lasso_member(chi.violation, pair), (u, v)

    def test_matches_marker_window(self, tb, arch):
        chi = build_tb_ifa_automaton(tb, arch)
        rng = random.Random(19)
        inputs = arch.inputs("b")
        for _ in range(200):
            u = random_lasso(rng, sorted(OBSERVED), 2, 2)
            v = random_lasso(rng, sorted(OBSERVED), 2, 2)
            marks = [i for i in range(u.length) if "t" in u.letter(i)]
            if not (starts_with_in(u) and not starts_with_in(v)):
                expected = True
            elif not marks:
                expected = False
            else:
                expected = any(u.letter(i) & inputs != v.letter(i) & inputs
                               for i in range(marks[0] + 1))
            assert lasso_member(chi.inner, pair_word(u, v)) == expected, (u, v)


class TestLocality:
    def test_initial_output_difference(self, tb, arch):
        bad = locality_violation_automaton(tb, arch, "b")
        left = lasso([{"in", "out"}], [set()], LOCAL)
        right = lasso([{"in"}], [set()], LOCAL)
        assert lasso_member(bad, pair_word(left, right))

    def test_reaction_after_input_difference(self, tb, arch):
        bad = locality_violation_automaton(tb, arch, "b")
        left = lasso([{"in", "c"}, {"out"}], [set()], LOCAL)
        right = lasso([set(), set()], [set()], LOCAL)
        assert not lasso_member(bad, pair_word(left, right))

    def test_reaction_on_unobserved_input(self, tb, arch):
        bad = locality_violation_automaton(tb, arch, "b")
        left = lasso([{"in"}, set(), {"out"}], [set()], LOCAL)
        right = lasso([set(), set(), set()], [set()], LOCAL)
        assert lasso_member(bad, pair_word(left, right))

    def test_reaction_after_marker(self, tb, arch):
        bad = locality_violation_automaton(tb, arch, "b")
        left = lasso([{"in", "t"}, {"out"}], [set()], LOCAL)
        right = lasso([{"t"}, set()], [set()], LOCAL)
        assert not lasso_member(bad, pair_word(left, right))


# ======================== Classes ========================

class TestInfoClasses:
    def test_two_classes(self, classes):
        assert [c.token for c in classes] == ["ic0", "ic1"]
        assert classes[0].formula == Atom("in")
        assert classes[1].formula == Not(Atom("in"))
        assert classes[0].witness == lasso([{"in"}], [set()], ENV)
        assert classes[1].witness == lasso([set()], [set()], ENV)

    def test_witness_in_language(self, classes):
        for info in classes:
            assert lasso_member(info.language, info.witness)

    def test_distinct_classes_are_distinguishable(self, classes, tb):
        first, second = classes
        assert lambda_member(tb, first.witness, second.witness) or \
            lambda_member(tb, second.witness, first.witness)

    def test_same_class_is_not_distinguishable(self, classes, tb):
        words = env_lassos()
        for info in classes:
            members = [w for w in words if info.contains(w)]
            assert all(lasso_member(info.language, w) for w in members)
            for u in members:
                for v in members:
                    assert not lambda_member(tb, u, v)

    def test_true_spec_has_one_universal_class(self, arch):
        (only,) = extract_info_classes(build_tb_dist_automaton(TRUE, arch, "b"))
        assert only.token == "ic0" and only.universal and only.formula == TRUE

    def test_token_prefix(self, tb):
        assert [c.token for c in extract_info_classes(tb, prefix="k")] == ["k0", "k1"]

    def test_unbounded_relation_is_rejected(self, arch):
        config = replace(get_tool_config(), class_depth=2)
        tb = build_tb_dist_automaton(parse_ltl("F in <-> F out"), arch, "b", config)
        assert not tb.prefix_determined
        with pytest.raises(ClassExtractionError) as info:
            extract_info_classes(tb, config)
        assert "finiteness assumption" in str(info.value)

    def test_class_cap(self, tb):
        with pytest.raises(ClassExtractionError):
            extract_info_classes(tb, replace(get_tool_config(), class_cap=1))


# ======================== Relativized and component specifications ========================

class TestComponentSpec:
    def test_relativized_specs(self, classes, phi_b, arch):
        assert relativize_spec(phi_b, classes[0], arch, "b").formula == parse_ltl("F out")
        assert relativize_spec(phi_b, classes[1], arch, "b").formula == parse_ltl("G !out")

    def test_bit_transmission_component_spec(self, classes, phi_b, arch):
        spec = build_component_spec(phi_b, classes, arch, "b")
        expected = parse_ltl("(G !ic0 | G !ic1) & F (ic0 | ic1) -> (F ic0 -> F out) & (F ic1 -> G !out)")
        assert spec.formula == expected
        assert spec.inputs == {"ic0", "ic1"} and spec.outputs == {"out"}

    def test_single_universal_class(self, arch):
        (only,) = extract_info_classes(build_tb_dist_automaton(TRUE, arch, "b"))
        spec = build_component_spec(TRUE, [only], arch, "b")
        assert spec.formula == Implies(Finally(Atom("ic0")), TRUE)

    def test_no_outputs_means_trivial_guarantee(self, channelless_spec):
        arch = channelless_spec.arch
        assert not arch.outputs("a")
        (only,) = extract_info_classes(build_tb_dist_automaton(TRUE, arch, "a"))
        spec = build_component_spec(TRUE, [only], arch, "a")
        assert spec.formula.right == TRUE

    def test_relativization_as_automaton(self, classes, arch):
        phi = parse_ltl("(in <-> F out) & F (in | !in)")
        relativized = relativize_spec(phi, classes[0], arch, "b")
        assert relativized.formula is None
        assert lasso_member(relativized.violation, lasso([], [set()], {"out"}))
        assert not lasso_member(relativized.violation, lasso([{"out"}], [set()], {"out"}))

    def test_component_violation_from_automata(self, classes, arch):
        phi = parse_ltl("(in <-> F out) & F (in | !in)")
        spec = build_component_spec(phi, classes, arch, "b")
        assert spec.formula is None
        bad = spec.violation_nba()
        names = {"ic0", "ic1", "out"}
        assert lasso_member(bad, lasso([{"ic0"}], [set()], names))
        assert not lasso_member(bad, lasso([{"ic0", "out"}], [set()], names))
        assert not lasso_member(bad, lasso([], [set()], names))
        assert lasso_member(bad, lasso([{"ic1"}, {"out"}], [set()], names))

    def test_formula_violation_matches_formula(self, classes, phi_b, arch):
        spec = build_component_spec(phi_b, classes, arch, "b")
        bad = spec.violation_nba()
        for w in enumerate_lassos({"ic0", "ic1", "out"}, 1, 1):
            assert lasso_member(bad, w) != eval_ltl(w, spec.formula), w


# ======================== Uniformity ========================

class TestUniformity:
    def test_bit_transmission_is_uniform(self, phi_b, arch, tb):
        assert check_uniformity_capped(phi_b, arch, "b", tb=tb).status == UNIFORM

    def test_true_is_uniform(self, arch):
        assert check_uniformity_capped(TRUE, arch, "b").status == UNIFORM

    def test_start_variant_is_not_uniform(self, start_spec):
        verdict = check_uniformity_capped(start_spec.phi_q, start_spec.arch, "b")
        assert verdict.status == NON_UNIFORM
        env, outputs = verdict.witness
        assert eval_ltl(combine(env, outputs), start_spec.phi_q)

