"""
Tests for composition, knowledge sets, local strategies, locality and the class decoder.
"""

from __future__ import annotations

import itertools
from dataclasses import replace

import pytest

from composition.decoder import build_class_decoder
from composition.knowledge import extract_local_strategy, knowledge_set
from composition.locality import check_locality
from composition.practical import compose_practical
from composition.system import (
    compose_hyper, compose_local, hyper_interface, synchronous_product,
)
from config import get_tool_config
from errors import (
    AlphabetMismatchError, ArchitectureError, CompositionCapError, DecoderError, LocalityViolationError,
    TokenMismatchError,
)
from infoflow.classes import extract_info_classes
from infoflow.tb_dist import build_tb_dist_automaton
from spec_model.architecture import SystemSpec
from spec_model.ltl import TRUE
from synthesis.machine import MooreMachine, constant_machine, machine_from_table
from verify.checks import model_check

from conftest import constant_sender, hyper_receiver, sender_machine, token_receiver

IN, NONE = frozenset({"in"}), frozenset()
C, T = frozenset({"c"}), frozenset({"t"})


@pytest.fixture(scope="module")
def config():
    return get_tool_config()


def visible_behaviour(machine, outputs):
    keep = frozenset(outputs)
    return MooreMachine(machine.inputs, tuple(sorted(keep)), tuple(label & keep for label in machine.labels),
                        machine.transitions).minimize()


@pytest.fixture(scope="module")
def arch(bit_spec):
    return bit_spec.arch


@pytest.fixture(scope="module")
def tb_b(bit_spec, config):
    return build_tb_dist_automaton(bit_spec.phi_q, bit_spec.arch, "b", config)


@pytest.fixture(scope="module")
def classes(tb_b, config):
    return extract_info_classes(tb_b, config)


@pytest.fixture(scope="module")
def running_example(arch, config):
    return compose_hyper(sender_machine(("in", "t_a")), hyper_receiver(), arch, config)


@pytest.fixture(scope="module")
def decoder(classes, arch, config):
    return build_class_decoder(sender_machine(), classes, arch, config)


def eager_receiver():
    """Reads in directly and answers at once, before anything was sent."""
    return machine_from_table(
        ("c", "in", "t"), ("out", "t_a"),
        [set(), {"out"}, set()],
        {0: [({"in": True}, 1), ({"in": False}, 2)]},
    )


def test_hyper_interfaces(arch):
    assert hyper_interface(arch, "a") == (("in", "t_a"), ("c", "t"))
    assert hyper_interface(arch, "b") == (("c", "in", "t"), ("out", "t_a"))


def test_composed_running_example(running_example, bit_spec):
    assert running_example.num_states == 4
    assert "out" in running_example.output([IN, NONE, NONE])
    assert all("out" not in running_example.output(w) for w in ([NONE], [NONE, IN], [NONE, IN, IN]))
    assert model_check(running_example, bit_spec.phi_q).holds


def test_composed_outputs_match_component_outputs(running_example):
    for word in itertools.product([IN, NONE], repeat=3):
        state = running_example.machine.run(word)[-1]
        a_state, b_state = running_example.provenance[state]
        shown = sender_machine(("in", "t_a")).labels[a_state] | hyper_receiver().labels[b_state]
        assert running_example.machine.labels[state] == shown & {"c", "t", "out"}


def test_hyper_composition_checks_interfaces(arch):
    with pytest.raises(AlphabetMismatchError):
        compose_hyper(sender_machine(), hyper_receiver(), arch)


def test_composition_cap(arch, config):
    with pytest.raises(CompositionCapError):
        compose_hyper(sender_machine(("in", "t_a")), hyper_receiver(), arch, replace(config, composition_cap=2))


def test_output_clash_is_rejected():
    machine = constant_machine((), ("c",))
    with pytest.raises(AlphabetMismatchError):
        synchronous_product([("x", machine), ("y", machine)], (), ("c",), 10)


def test_unproduced_input_is_rejected():
    reader = constant_machine(("z",), ("c",))
    with pytest.raises(AlphabetMismatchError):
        synchronous_product([("x", reader)], ("in",), ("c",), 10)


def test_knowledge_sets(running_example):
    assert knowledge_set(running_example, "b", [C]) == {(IN,), (NONE,)}
    assert knowledge_set(running_example, "b", [C, T]) == {(IN, IN), (IN, NONE)}
    assert knowledge_set(running_example, "b", [C, C]) == {(NONE, IN), (NONE, NONE)}
    assert knowledge_set(running_example, "b", [T]) == frozenset()
    assert knowledge_set(running_example, "a", [IN]) == {(IN,)}


def test_local_receiver_of_running_example(running_example, config):
    local = extract_local_strategy(running_example, "b", config)
    assert local.inputs == ("c", "t")
    assert local.num_states <= 5
    assert "out" in local.outputs_on([C, T])[-1]
    assert all("out" not in label for label in local.outputs_on([C, C, C, C]))


def test_local_sender_of_running_example(running_example, config):
    local = extract_local_strategy(running_example, "a", config)
    assert local.inputs == ("in",)
    for word in itertools.product([IN, NONE], repeat=3):
        assert local.outputs_on(word) == sender_machine().outputs_on(word)


def test_local_strategies_reproduce_the_composition(running_example, arch, config):
    s_a = extract_local_strategy(running_example, "a", config)
    s_b = extract_local_strategy(running_example, "b", config)
    recomposed = compose_local(s_a, s_b, arch, config)
    for word in itertools.product([IN, NONE], repeat=4):
        assert recomposed.output(word) == running_example.output(word)


def test_constant_system_gives_constant_local_strategy(arch, config):
    composed = compose_local(constant_machine(("in",), ("c", "t")), constant_machine(("c", "t"), ("out",)),
                             arch, config)
    assert extract_local_strategy(composed, "b", config).num_states == 1


def test_non_local_receiver_is_detected(arch, config):
    composed = compose_hyper(sender_machine(("in", "t_a")), eager_receiver(), arch, config)
    with pytest.raises(LocalityViolationError) as raised:
        extract_local_strategy(composed, "b", config)
    assert raised.value.local_word == (C,)


def test_running_example_receiver_is_local(tb_b, arch):
    assert check_locality(hyper_receiver(), tb_b, arch).ok


def test_eager_receiver_breaks_locality(tb_b, arch):
    result = check_locality(eager_receiver(), tb_b, arch)
    assert not result.ok
    left, right = result.counterexample
    assert ("in" in left.letter(0)) != ("in" in right.letter(0))


def test_constant_receiver_is_local(tb_b, arch):
    assert check_locality(constant_machine(("c", "in", "t"), ("out", "t_a")), tb_b, arch).ok


def test_decoder_raises_class_tokens(decoder):
    assert decoder.tokens == ("ic0", "ic1")
    assert decoder.token_round([C, T, T, T]) == (2, "ic0")
    assert decoder.token_round([C, C, C, C]) == (2, "ic1")


def test_decoder_is_sound(decoder):
    sender = sender_machine()
    for word in itertools.product([IN, NONE], repeat=3):
        observed = [label & {"c", "t"} for label in sender.outputs_on(word)]
        _, token = decoder.token_round(observed)
        assert token == ("ic0" if "in" in word[0] else "ic1")


def test_decoder_raises_each_token_once(decoder):
    labels = decoder.machine.outputs_on([C, T, T, T, T, T])
    assert sum(1 for label in labels if label) == 1


def test_single_class_is_known_at_once(bit_spec, config):
    trivial = SystemSpec(bit_spec.arch, TRUE, TRUE)
    tb = build_tb_dist_automaton(trivial.phi_q, trivial.arch, "b", config)
    classes = extract_info_classes(tb, config)
    decoder = build_class_decoder(sender_machine(), classes, trivial.arch, config)
    assert decoder.token_round([C]) == (0, "ic0")


def test_silent_sender_does_not_reveal_class(classes, arch, config):
    with pytest.raises(DecoderError):
        build_class_decoder(constant_sender(), classes, arch, config)


def test_decoder_needs_environment_reading_sender(classes, arch, config):
    receiver_like = constant_machine(("c", "t"), ("out",))
    with pytest.raises(ArchitectureError):
        build_class_decoder(receiver_like, classes, arch, config, sender_process="a")


def test_practical_composition(decoder, arch, config, bit_spec):
    composed = compose_practical(sender_machine(), token_receiver(), decoder, arch, config)
    assert composed.num_states == 7
    assert composed.machine.minimize().num_states == 5
    # five states on the c and out behaviour alone
    assert visible_behaviour(composed.machine, {"c", "out"}).num_states == 5
    assert model_check(composed, bit_spec.phi_q).holds
    assert "out" in composed.output([IN, NONE, NONE])


def test_practical_composition_behaves_like_running_example(decoder, arch, config, running_example):
    composed = compose_practical(sender_machine(), token_receiver(), decoder, arch, config)
    for word in itertools.product([IN, NONE], repeat=4):
        assert ("c" in composed.output(word)) == ("c" in running_example.output(word))
        if "out" in running_example.output(word):
            assert "out" in composed.output(word + (NONE,))


def test_token_mismatch(decoder, arch, config):
    receiver = machine_from_table(("ic0",), ("out",), [set(), {"out"}], {0: [({"ic0": True}, 1)]})
    with pytest.raises(TokenMismatchError):
        compose_practical(sender_machine(), receiver, decoder, arch, config)
