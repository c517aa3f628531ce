import logging

from commands.shared.utils import create_success_response, error_response_for, load_spec_file
from composition.bundle import load_bundle
from errors import EXIT_OK, EXIT_VERIFICATION_FAILED
from pipeline import write_report
from verify.certify import certify_end_to_end

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Verify Handler
    Re-certifies a solution bundle read back from disk
    """

    logger.info("Verify request received")

    try:
        bundle = load_bundle(args.solution)
        spec = load_spec_file(args.spec) if args.spec else bundle.spec
        report = certify_end_to_end(spec, bundle, config)
        write_report(report, args.solution)

        exit_code = EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
        return create_success_response(exit_code, {'passed': report.passed, 'checks': report.to_rows()},
                                       report.render())

    except Exception as e:
        logger.error(f"Verify error: {str(e)}")
        return error_response_for(e)
