import logging
from pathlib import Path

from commands.shared.utils import create_success_response, error_response_for, load_spec_file
from composition.decoder import build_class_decoder
from composition.knowledge import extract_local_strategy
from composition.practical import compose_practical
from composition.system import compose_hyper, compose_local
from errors import EXIT_OK, InputError
from infoflow.classes import extract_info_classes
from infoflow.tb_dist import build_tb_dist_automaton
from pipeline import token_prefix
from synthesis.machine import load_machine, machine_to_dot, save_machine

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Compose Handler
    Composes two machines and optionally extracts the local strategies
    """

    logger.info("Compose request received")

    try:
        spec = load_spec_file(args.spec)
        first, second = (load_machine(path) for path in args.machines)
        composed = compose_machines(spec, args.mode, first, second, config)

        data = {'mode': args.mode, 'states': composed.num_states}
        lines = [f"Composed system: {composed.num_states} states"]
        local = {}
        if args.extract:
            local = {p: extract_local_strategy(composed, p, config) for p in spec.arch.processes}
            data['local'] = {p: m.num_states for p, m in local.items()}
            lines += [f"  local strategy of {p}: {m.num_states} states" for p, m in local.items()]

        if args.out:
            directory = Path(args.out)
            save_machine(composed.machine, directory / "composed.json")
            machine_to_dot(composed.machine, "composed").save("composed.dot", directory=str(directory))
            for process, machine in local.items():
                save_machine(machine, directory / f"local_{process}.json")
            data['out'] = str(directory)
            lines.append(f"Written to {directory}")

        return create_success_response(EXIT_OK, data, "\n".join(lines))

    except Exception as e:
        logger.error(f"Compose error: {str(e)}")
        return error_response_for(e)


def compose_machines(spec, mode, first, second, config):
    arch = spec.arch
    if mode == "hyper":
        return compose_hyper(first, second, arch, config)
    if mode == "local":
        return compose_local(first, second, arch, config)
    if mode == "practical":
        decoder_sender = next((p for p in arch.processes if frozenset(first.outputs) == arch.outputs(p)), None)
        if decoder_sender is None:
            raise InputError(f"Sender outputs {list(first.outputs)} match no process")
        receiver = arch.other(decoder_sender)
        tb = build_tb_dist_automaton(spec.phi(receiver), arch, receiver, config)
        classes = extract_info_classes(tb, config, token_prefix(arch))
        decoder = build_class_decoder(first, classes, arch, config, sender_process=decoder_sender)
        return compose_practical(first, second, decoder, arch, config)
    raise InputError(f"Unknown composition mode: {mode}")
