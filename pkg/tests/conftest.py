"""Shared fixtures: shipped spec files and small machines for bit transmission."""

from pathlib import Path

import pytest

from spec_model.architecture import parse_system_spec
from synthesis.machine import constant_machine, machine_from_table

SPECS = Path(__file__).resolve().parent.parent / "specs"


def load_spec(name):
    return parse_system_spec((SPECS / f"{name}.spec").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def bit_spec():
    return load_spec("bit_transmission")


@pytest.fixture(scope="session")
def start_spec():
    return load_spec("start_variant")


@pytest.fixture(scope="session")
def channelless_spec():
    return load_spec("channelless")


def sender_machine(inputs=("in",), outputs=("c", "t")):
    """Sender of the running example: c stays up unless in held, then t is raised."""
    return machine_from_table(
        inputs, outputs,
        [{"c"}, {"c"}, {"t"}],
        {0: [({"in": True}, 2), ({"in": False}, 1)]},
        names=["h0", "h1", "h2"],
    )


def token_receiver():
    """Receiver over class tokens: out on ic0, silence on ic1; ic0 wins a tie."""
    return machine_from_table(
        ("ic0", "ic1"), ("out",),
        [set(), {"out"}, set()],
        {0: [({"ic0": True}, 1), ({"ic1": True}, 2)]},
        names=["b0", "b1", "b2"],
    )


def hyper_receiver():
    """Hyper implementation of b: out only after in was seen and t arrived."""
    return machine_from_table(
        ("c", "in", "t"), ("out", "t_a"),
        [set(), set(), set(), {"out"}],
        {0: [({"in": False}, 1), ({"in": True, "t": True}, 3), ({"in": True, "t": False}, 2)],
         2: [({"t": True}, 3)]},
        names=["h0", "h1", "h2", "h3"],
    )


def constant_sender(label=("c",)):
    return constant_machine(("in",), ("c", "t"), label)


@pytest.fixture
def hyper_sender():
    return sender_machine(("in", "t_a"))


@pytest.fixture
def plain_sender():
    return sender_machine()


@pytest.fixture
def receiver_on_tokens():
    return token_receiver()


@pytest.fixture
def receiver_hyper():
    return hyper_receiver()
