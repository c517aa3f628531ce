"""
Tests for LTL syntax, the reference semantics, lasso words and spec files.
"""

from __future__ import annotations

import random

import pytest

from errors import ArchitectureError, LtlSyntaxError, SpecFileError, UndeclaredAtomError
from spec_model.architecture import (
    SystemSpec, check_formula_scope, format_system_spec, parse_architecture, parse_system_spec,
)
from spec_model.ltl import (
    FALSE, TRUE, And, Atom, Finally, Globally, Iff, Implies, Next, Not, Release,
    Until, format_ltl, simplify, to_nnf,
)
from spec_model.ltl_parser import parse_ltl
from spec_model.semantics import eval_ltl
from spec_model.words import (
    combine, enumerate_lassos, lasso, pair_word, project, split_pair,
)

from oracles import naive_holds, random_formula, random_lasso

BIT_SPEC = """
# bit transmission
[variables]
environment: in
a: c t
b: out

[architecture]
inputs a: in
inputs b: c t
marker b: t

[spec a]
true

[spec b]
in <-> F out
"""


# ======================== Parsing ========================

class TestParseLtl:
    def test_running_example(self):
        assert parse_ltl("in <-> F out") == Iff(Atom("in"), Finally(Atom("out")))

    def test_constant(self):
        assert parse_ltl("true") == TRUE

    def test_nested_binary_temporal(self):
        assert parse_ltl("a U (b R c)") == Until(Atom("a"), Release(Atom("b"), Atom("c")))

    def test_until_is_right_associative(self):
        assert parse_ltl("a U b U c") == Until(Atom("a"), Until(Atom("b"), Atom("c")))

    def test_implication_binds_looser_than_disjunction(self):
        phi = parse_ltl("a | b -> c")
        assert isinstance(phi, Implies)

    def test_unicode_operators(self):
        assert parse_ltl("in ↔ ◇out") == parse_ltl("in <-> F out")
        assert parse_ltl("□(a → ○b)") == Globally(Implies(Atom("a"), Next(Atom("b"))))

    def test_pair_atoms(self):
        phi = parse_ltl("in@1 <-> in@2")
        assert phi == Iff(Atom("in@1"), Atom("in@2"))

    def test_keyword_prefix_is_an_atom(self):
        assert parse_ltl("Xa & Fout") == And(Atom("Xa"), Atom("Fout"))

    def test_syntax_error_reports_position(self):
        with pytest.raises(LtlSyntaxError) as info:
            parse_ltl("a & & b")
        assert info.value.column is not None

    def test_undeclared_atom(self):
        with pytest.raises(UndeclaredAtomError) as info:
            parse_ltl("a & zz", {"a"})
        assert info.value.atoms == {"zz"}

    def test_round_trip_of_random_formulas(self):
        rng = random.Random(7)
        for _ in range(300):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 10))
            assert parse_ltl(format_ltl(phi)) == phi

    def test_format_running_example(self):
        assert format_ltl(parse_ltl("in <-> F out")) == "in <-> F out"


# ======================== Semantics ========================

class TestEvalLtl:
    def test_in_without_out_violates(self):
        w = lasso([{"in"}], [set()], {"in", "out"})
        assert eval_ltl(w, parse_ltl("in <-> F out")) is False

    def test_both_sides_false(self):
        w = lasso([], [set()], {"in", "out"})
        assert eval_ltl(w, parse_ltl("in <-> F out")) is True

    def test_both_sides_true(self):
        w = lasso([{"in"}], [{"out"}], {"in", "out"})
        assert eval_ltl(w, parse_ltl("in <-> F out")) is True

    def test_next_wraps_into_loop(self):
        w = lasso([], [{"a"}, set()], {"a"})
        assert eval_ltl(w, parse_ltl("a & X !a & X X a")) is True

    def test_release_holds_forever(self):
        w = lasso([], [{"b"}], {"a", "b"})
        assert eval_ltl(w, parse_ltl("a R b")) is True

    def test_agrees_with_naive_semantics(self):
        rng = random.Random(11)
        for _ in range(500):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 8))
            w = random_lasso(rng, ["a", "b"])
            assert eval_ltl(w, phi) == naive_holds(w, phi), format_ltl(phi)

    def test_negation_flips(self):
        rng = random.Random(3)
        for _ in range(200):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 8))
            w = random_lasso(rng, ["a", "b"])
            assert eval_ltl(w, Not(phi)) != eval_ltl(w, phi)

    def test_nnf_and_simplify_preserve_semantics(self):
        rng = random.Random(5)
        for _ in range(300):
            phi = random_formula(rng, ["a", "b"], rng.randint(1, 8))
            w = random_lasso(rng, ["a", "b"])
            expected = eval_ltl(w, phi)
            assert eval_ltl(w, to_nnf(phi)) == expected
            assert eval_ltl(w, simplify(phi)) == expected


class TestSimplify:
    def test_iff_with_constants(self):
        assert simplify(parse_ltl("true <-> F out")) == parse_ltl("F out")
        assert simplify(parse_ltl("false <-> F out")) == parse_ltl("G !out")

    def test_subsumed_implication_is_dropped(self):
        assert simplify(parse_ltl("(!b -> G !out) & G !out")) == parse_ltl("G !out")

    def test_constant_until(self):
        assert simplify(Until(TRUE, Atom("a"))) == Finally(Atom("a"))
        assert simplify(Until(Atom("a"), FALSE)) == FALSE


# ======================== Words ========================

class TestWords:
    def test_project(self):
        w = lasso([{"in", "c"}], [{"c"}], {"in", "c"})
        assert project(w, {"c"}) == lasso([{"c"}], [{"c"}], {"c"})

    def test_combine(self):
        left = lasso([{"in"}], [set()], {"in"})
        right = lasso([set()], [{"out"}], {"out"})
        assert combine(left, right) == lasso([{"in"}], [{"out"}], {"in", "out"})

    def test_project_to_nothing(self):
        w = lasso([{"in"}], [{"in"}, set()], {"in"})
        projected = project(w, set())
        assert projected.stem == (frozenset(),) and projected.loop == (frozenset(), frozenset())

    def test_combine_rejects_shared_alphabet(self):
        w = lasso([], [{"a"}], {"a"})
        with pytest.raises(Exception):
            combine(w, w)

    def test_combine_of_projections(self):
        rng = random.Random(2)
        for _ in range(100):
            w = random_lasso(rng, ["a", "b", "c"])
            assert combine(project(w, {"a"}), project(w, {"b", "c"})) == project(w, {"a", "b", "c"})

    def test_pair_word_round_trip(self):
        left = lasso([{"in"}], [set()], {"in"})
        right = lasso([], [set(), {"in"}], {"in"})
        a, b = split_pair(pair_word(left, right))
        assert [a.letter(i) for i in range(6)] == [left.letter(i) for i in range(6)]
        assert [b.letter(i) for i in range(6)] == [right.letter(i) for i in range(6)]

    def test_enumeration_count(self):
        # one variable: stems 0..1 (1 + 2), loops 1..2 (2 + 4)
        assert len(list(enumerate_lassos({"a"}, 1, 2))) == 3 * 6


# ======================== Architecture files ========================

class TestArchitecture:
    def test_bit_transmission(self):
        arch = parse_architecture(BIT_SPEC)
        assert arch.processes == ("a", "b")
        assert arch.outputs_env == {"in"}
        assert arch.outputs("a") == {"c", "t"} and arch.inputs("a") == {"in"}
        assert arch.outputs("b") == {"out"} and arch.inputs("b") == {"c", "t"}
        assert arch.marker("b") == "t"
        assert arch.marker("a") == "t_a"

    def test_overlapping_outputs(self):
        text = BIT_SPEC.replace("b: out", "b: out c")
        with pytest.raises(ArchitectureError) as info:
            parse_architecture(text)
        assert any(e.startswith("partition") for e in info.value.details)

    def test_own_output_as_input(self):
        text = BIT_SPEC.replace("inputs a: in", "inputs a: in c")
        with pytest.raises(ArchitectureError) as info:
            parse_architecture(text)
        assert any(e.startswith("overlap") for e in info.value.details)

    def test_input_not_produced_by_partner(self):
        text = BIT_SPEC.replace("inputs b: c t", "inputs b: c t out")
        with pytest.raises(ArchitectureError) as info:
            parse_architecture(text)
        assert any("out" in e for e in info.value.details)

    def test_undeclared_input(self):
        text = BIT_SPEC.replace("inputs a: in", "inputs a: in zz")
        with pytest.raises(ArchitectureError) as info:
            parse_architecture(text)
        assert any(e.startswith("undeclared") for e in info.value.details)

    def test_marker_must_be_partner_input(self):
        text = BIT_SPEC.replace("marker b: t", "marker b: out")
        with pytest.raises(ArchitectureError) as info:
            parse_architecture(text)
        assert any(e.startswith("marker") for e in info.value.details)

    def test_spec_file(self):
        spec = parse_system_spec(BIT_SPEC)
        assert spec.phi_p == TRUE
        assert spec.phi_q == parse_ltl("in <-> F out")

    def test_spec_scope_is_enforced(self):
        with pytest.raises(SpecFileError):
            parse_system_spec(BIT_SPEC.replace("in <-> F out", "in <-> F c"))

    def test_scope_of_assembled_spec(self):
        spec = parse_system_spec(BIT_SPEC)
        check_formula_scope(spec)
        with pytest.raises(ArchitectureError) as info:
            check_formula_scope(SystemSpec(spec.arch, parse_ltl("G out"), parse_ltl("in <-> F c")))
        assert info.value.details == ["scope: spec of a mentions out", "scope: spec of b mentions c"]

    def test_format_round_trip(self):
        spec = parse_system_spec(BIT_SPEC)
        assert parse_system_spec(format_system_spec(spec)) == spec
