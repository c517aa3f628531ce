import logging
from pathlib import Path

from benchmarks.generator import gen_benchmark
from commands.shared.utils import create_success_response, error_response_for
from errors import EXIT_OK

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def handler(args, config):
    """
    Gen Handler
    Writes a benchmark spec file
    """

    logger.info("Gen request received")

    try:
        instance = gen_benchmark(args.family, args.param, args.arch)
        text = instance.render()
        data = {'benchmark': instance.name}
        if args.out:
            path = Path(args.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            data['path'] = str(path)
            logger.info(f"Benchmark {instance.name} written to {path}")
            text = f"Wrote {instance.name} to {path}"
        return create_success_response(EXIT_OK, data, text.rstrip("\n"))

    except Exception as e:
        logger.error(f"Gen error: {str(e)}")
        return error_response_for(e)
