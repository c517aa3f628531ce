import argparse
import dataclasses
import json
import logging
import sys

from commands.analyze.index import handler as analyze_handler
from commands.bench.index import handler as bench_handler
from commands.classes.index import handler as classes_handler
from commands.component_spec.index import handler as component_spec_handler
from commands.compose.index import handler as compose_handler
from commands.gen.index import handler as gen_handler
from commands.synthesize.index import handler as synthesize_handler
from commands.verify.index import handler as verify_handler
from config import get_tool_config

HANDLERS = {
    'analyze': analyze_handler,
    'classes': classes_handler,
    'component-spec': component_spec_handler,
    'synthesize': synthesize_handler,
    'compose': compose_handler,
    'verify': verify_handler,
    'bench': bench_handler,
    'gen': gen_handler,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ifsynth",
        description="Compositional synthesis of two-process reactive systems from information flow assumptions")
    parser.add_argument("--bound-max", type=int, help="largest machine size tried by bounded synthesis")
    parser.add_argument("--class-cap", type=int, help="maximum number of information classes")
    parser.add_argument("--rank-cap", type=int, help="rank cap of bounded complementation")
    parser.add_argument("--solver", dest="solver_path", help="external DIMACS solver executable")
    parser.add_argument("--dump-automata", dest="dump_dir", help="directory for DOT dumps of automata")
    parser.add_argument("--timeout", type=float, help="time limit per benchmark row in seconds")
    parser.add_argument("--format", choices=("table", "rows"), default="table", help="output format")
    parser.add_argument("--log-level", help="logging level")

    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="build the information flow automata and check uniformity")
    analyze.add_argument("spec")

    for name, text in (("classes", "list information classes"),
                       ("component-spec", "build a component specification")):
        command = sub.add_parser(name, help=text)
        command.add_argument("spec")
        command.add_argument("--process", help="process to analyze (default: the second one)")

    synthesize = sub.add_parser("synthesize", help="synthesize, compose, extract and certify")
    synthesize.add_argument("spec")
    synthesize.add_argument("--mode", choices=("hyper", "practical"), default="practical")
    synthesize.add_argument("--bound", type=int, help="bound for this run (default --bound-max)")
    synthesize.add_argument("--out", help="solution directory")

    compose = sub.add_parser("compose", help="compose two machines")
    compose.add_argument("spec")
    compose.add_argument("machines", nargs=2, help="hyper or local machines of both processes, "
                                                   "or sender and receiver in practical mode")
    compose.add_argument("--mode", choices=("hyper", "local", "practical"), default="hyper")
    compose.add_argument("--extract", action="store_true", help="also extract local strategies")
    compose.add_argument("--out", help="output directory")

    verify = sub.add_parser("verify", help="certify a solution directory")
    verify.add_argument("solution")
    verify.add_argument("--spec", help="spec file (default: the one stored with the solution)")

    bench = sub.add_parser("bench", help="run benchmark rows")
    bench.add_argument("--families", nargs="*", choices=("AC", "EC", "SA"))
    bench.add_argument("--params", nargs="*", type=int, default=[1])
    bench.add_argument("--arch", nargs="*", choices=("dir", "bidir"), default=["dir"])
    bench.add_argument("--mode", choices=("hyper", "practical"))
    bench.add_argument("--time-limit", type=float, help="seconds per row (default --timeout)")
    bench.add_argument("--out", help="directory for artifacts and results.json")

    gen = sub.add_parser("gen", help="generate a benchmark spec")
    gen.add_argument("family", choices=("AC", "EC", "SA"))
    gen.add_argument("param", type=int)
    gen.add_argument("--arch", choices=("dir", "bidir"), default="dir")
    gen.add_argument("--out", help="spec file to write (default: standard output)")
    return parser


def config_from_args(args, config):
    overrides = {
        'bound_max': args.bound_max,
        'class_cap': args.class_cap,
        'rank_cap': args.rank_cap,
        'solver_path': args.solver_path,
        'dump_dir': args.dump_dir,
        'timeout': args.timeout,
        'log_level': args.log_level,
    }
    return dataclasses.replace(config, **{k: v for k, v in overrides.items() if v is not None})


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = config_from_args(args, get_tool_config())
    logging.basicConfig(level=config.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")

    response = HANDLERS[args.command](args, config)
    if args.format == "rows":
        print(json.dumps(response['body'], indent=2, default=str))
    else:
        print(response['text'])
    return response['exitCode']


if __name__ == "__main__":
    sys.exit(main())
