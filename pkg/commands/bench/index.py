import json
import logging
from pathlib import Path

from benchmarks.generator import FAMILIES
from benchmarks.harness import ERROR, TIMEOUT, cmd_bench, render_table
from commands.shared.utils import create_success_response, error_response_for
from errors import EXIT_OK, EXIT_VERIFICATION_FAILED
from pipeline import CERTIFIED

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Bench Handler
    Runs benchmark rows and reports per-phase times
    """

    logger.info("Bench request received")

    try:
        families = args.families or list(FAMILIES)
        records = cmd_bench(families, args.params, args.arch, args.mode, config,
                            time_limit=args.time_limit, out_dir=args.out)
        rows = [r.to_row() for r in records]
        if args.out:
            path = Path(args.out) / "results.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")

        failed = [r for r in records if r.outcome == ERROR]
        solved = sum(1 for r in records if r.outcome == CERTIFIED)
        timed_out = sum(1 for r in records if r.outcome == TIMEOUT)
        logger.info(f"Benchmarks finished: {solved} solved, {timed_out} timed out, {len(failed)} errors")
        exit_code = EXIT_VERIFICATION_FAILED if failed else EXIT_OK
        return create_success_response(exit_code, {'rows': rows}, render_table(records))

    except Exception as e:
        logger.error(f"Bench error: {str(e)}")
        return error_response_for(e)
