"""Sender, class decoder and token-driven receiver wired into one system."""

from __future__ import annotations

import logging
from typing import Optional

from composition.decoder import ClassDecoder
from composition.system import ComposedSystem, synchronous_product
from config import ToolConfig, get_tool_config
from errors import AlphabetMismatchError, TokenMismatchError
from spec_model.architecture import Architecture
from synthesis.machine import MooreMachine

logger = logging.getLogger(__name__)

DECODER = "decoder"


def compose_practical(sender: MooreMachine, receiver: MooreMachine, decoder: ClassDecoder,
                      arch: Architecture, config: Optional[ToolConfig] = None) -> ComposedSystem:
    config = config or get_tool_config()
    sender_process, receiver_process = decoder.sender_process, decoder.receiver_process
    if frozenset(sender.outputs) != arch.outputs(sender_process):
        raise AlphabetMismatchError(f"Sender writes {list(sender.outputs)}, "
                                    f"{sender_process} owns {sorted(arch.outputs(sender_process))}")
    if frozenset(receiver.outputs) != arch.outputs(receiver_process):
        raise AlphabetMismatchError(f"Receiver writes {list(receiver.outputs)}, "
                                    f"{receiver_process} owns {sorted(arch.outputs(receiver_process))}")
    visible = arch.visible_env(receiver_process)
    token_inputs = set(receiver.inputs) - visible
    if token_inputs != set(decoder.tokens):
        raise TokenMismatchError(
            f"Receiver reads tokens {sorted(token_inputs)}, decoder raises {sorted(decoder.tokens)}")

    components = [(sender_process, sender), (DECODER, decoder.machine), (receiver_process, receiver)]
    machine, provenance = synchronous_product(components, arch.outputs_env,
                                              arch.outputs_p | arch.outputs_q, config.composition_cap)
    logger.info(f"Composed {sender_process}, decoder and {receiver_process}: {machine.num_states} states")
    return ComposedSystem(machine, tuple(name for name, _ in components), provenance, arch)
