import logging

from automata.export import dump_automaton
from commands.shared.utils import create_success_response, error_response_for, load_spec_file
from errors import EXIT_OK
from infoflow.compatibility import build_compatibility_automaton
from infoflow.ifa import build_ifa_automaton
from infoflow.tb_dist import build_tb_dist_automaton
from infoflow.uniformity import check_uniformity_capped

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Analyze Handler
    Builds the distinguishability automata of both processes and checks uniformity
    """

    logger.info("Analyze request received")

    try:
        spec = load_spec_file(args.spec)
        processes = {}
        for process in spec.arch.processes:
            processes[process] = analyze_process(spec, process, config)

        text = "\n".join(render_process(process, data) for process, data in processes.items())
        return create_success_response(EXIT_OK, {'processes': processes}, text)

    except Exception as e:
        logger.error(f"Analyze error: {str(e)}")
        return error_response_for(e)


def analyze_process(spec, process, config):
    phi = spec.phi(process)
    compat = build_compatibility_automaton(phi, spec.arch, process)
    ifa = build_ifa_automaton(compat, spec.arch)
    tb = build_tb_dist_automaton(phi, spec.arch, process, config)
    uniformity = check_uniformity_capped(phi, spec.arch, process, config, tb=tb)

    if config.dump_dir:
        dump_automaton(compat.inner, config.dump_dir, f"delta_{process}")
        dump_automaton(ifa.inner, config.dump_dir, f"ifa_{process}")
        dump_automaton(tb.lambda_nba, config.dump_dir, f"lambda_{process}")

    return {
        'deltaStates': compat.inner.num_states,
        'ifaStates': ifa.inner.num_states,
        'lambdaStates': tb.lambda_nba.num_states,
        'lambdaEmpty': tb.empty,
        'lambdaIncomplete': tb.incomplete,
        'prefixDepth': tb.depth,
        'uniformity': uniformity.status,
        'uniformityReason': uniformity.reason,
        'witness': [str(w) for w in uniformity.witness] if uniformity.witness else None,
    }


def render_process(process, data):
    relation = "empty" if data['lambdaEmpty'] else "nonempty"
    depth = f", determined by prefixes of length {data['prefixDepth']}" if data['prefixDepth'] is not None else ""
    lines = [
        f"{process}:",
        f"  compatibility automaton: {data['deltaStates']} states",
        f"  information flow assumption: {data['ifaStates']} states",
        f"  time-bounded distinguishability: {relation} ({data['lambdaStates']} states{depth})",
        f"  uniformity: {data['uniformity']} ({data['uniformityReason']})",
    ]
    if data['witness']:
        lines.append(f"  witness: {' with outputs '.join(data['witness'])}")
    return "\n".join(lines)
