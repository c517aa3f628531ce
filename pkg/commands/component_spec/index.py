import logging

from commands.shared.utils import create_success_response, error_response_for, load_spec_file, require_process
from errors import EXIT_OK
from infoflow.classes import extract_info_classes
from infoflow.component_spec import build_component_spec
from infoflow.tb_dist import build_tb_dist_automaton
from pipeline import token_prefix
from spec_model.ltl import format_ltl

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Component Spec Handler
    Builds the component specification of a process over its visible inputs and class tokens
    """

    logger.info("Component spec request received")

    try:
        spec = load_spec_file(args.spec)
        process = require_process(spec, args.process)
        tb = build_tb_dist_automaton(spec.phi(process), spec.arch, process, config)
        classes = extract_info_classes(tb, config, token_prefix(spec.arch))
        component = build_component_spec(spec.phi(process), classes, spec.arch, process)

        relativized = []
        for info, r in zip(component.classes, component.relativized):
            relativized.append({
                'token': info.token,
                'formula': format_ltl(r.formula) if r.formula is not None else None,
                'automatonStates': r.violation.num_states if r.formula is None else None,
            })
        data = {
            'process': process,
            'inputs': sorted(component.inputs),
            'outputs': sorted(component.outputs),
            'formula': format_ltl(component.formula) if component.formula is not None else None,
            'relativized': relativized,
        }
        if data['formula'] is not None:
            text = data['formula']
        else:
            text = "\n".join(f"F {r['token']} -> automaton with {r['automatonStates']} states"
                             if r['formula'] is None else f"F {r['token']} -> {r['formula']}"
                             for r in relativized)
        return create_success_response(EXIT_OK, data, text)

    except Exception as e:
        logger.error(f"Component spec error: {str(e)}")
        return error_response_for(e)
