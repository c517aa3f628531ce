import logging

from commands.shared.utils import create_success_response, error_response_for, load_spec_file
from errors import EXIT_OK, EXIT_UNREALIZABLE, EXIT_VERIFICATION_FAILED
from pipeline import CERTIFIED, UNREALIZABLE, run_pipeline

logger = logging.getLogger()
logger.setLevel(logging.INFO)

EXIT_CODES = {
    CERTIFIED: EXIT_OK,
    UNREALIZABLE: EXIT_UNREALIZABLE,
}


def handler(args, config):
    """
    Synthesize Handler
    Runs the full pipeline and writes the solution bundle
    """

    logger.info("Synthesize request received")

    try:
        spec = load_spec_file(args.spec)
        result = run_pipeline(spec, args.mode, config, bound=args.bound, out_dir=args.out)

        data = {
            'status': result.status,
            'mode': args.mode,
            'bounds': result.bounds,
            'timings': {name: round(t, 3) for name, t in result.timings.items()},
            'sizes': result.sizes(),
        }
        lines = [f"{args.mode} synthesis: {result.status}"]
        if result.unrealizable:
            data['unrealizable'] = list(result.unrealizable)
            lines += [f"  {p}: no implementation up to bound {result.bounds[p]}" for p in result.unrealizable]
        for stem, states in data['sizes'].items():
            lines.append(f"  {stem}: {states} states")
        if result.report is not None:
            data['checks'] = result.report.to_rows()
            lines.append(result.report.render())
        if args.out and result.bundle is not None:
            lines.append(f"Solution written to {args.out}")

        exit_code = EXIT_CODES.get(result.status, EXIT_VERIFICATION_FAILED)
        return create_success_response(exit_code, data, "\n".join(lines))

    except Exception as e:
        logger.error(f"Synthesize error: {str(e)}")
        return error_response_for(e)
