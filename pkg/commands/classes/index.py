import logging

from commands.shared.utils import create_success_response, error_response_for, load_spec_file, require_process
from errors import EXIT_OK
from infoflow.classes import extract_info_classes
from infoflow.tb_dist import build_tb_dist_automaton
from pipeline import token_prefix
from spec_model.ltl import format_ltl

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Classes Handler
    Lists the information classes a process needs to tell apart
    """

    logger.info("Classes request received")

    try:
        spec = load_spec_file(args.spec)
        process = require_process(spec, args.process)
        tb = build_tb_dist_automaton(spec.phi(process), spec.arch, process, config)
        classes = extract_info_classes(tb, config, token_prefix(spec.arch))

        data = {
            'process': process,
            'depth': tb.depth,
            'classes': [class_record(info) for info in classes],
        }
        lines = [f"{len(classes)} information classes for {process} (prefix length {tb.depth}):"]
        lines += [f"  {c['token']}: {c['words']} prefixes, {c['formula']}, e.g. {c['witness']}"
                  for c in data['classes']]
        return create_success_response(EXIT_OK, data, "\n".join(lines))

    except Exception as e:
        logger.error(f"Classes error: {str(e)}")
        return error_response_for(e)


def class_record(info):
    return {
        'token': info.token,
        'words': len(info.words),
        'formula': format_ltl(info.formula),
        'witness': str(info.witness),
    }
