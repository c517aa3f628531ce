"""Incremental bounded synthesis."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional

from config import ToolConfig, get_tool_config
from synthesis.encoding import decode_machine, encode_run_graph
from synthesis.machine import MooreMachine
from synthesis.problem import SynthesisProblem, hyper2_problem, ltl_problem
from synthesis.solver import EMBEDDED, EXTERNAL, solve_cnf

logger = logging.getLogger(__name__)

REALIZABLE = "realizable"
UNREALIZABLE_AT_BOUND = "unrealizable-at-bound"


@dataclass(frozen=True)
class SynthesisResult:
    status: str
    machine: Optional[MooreMachine]
    bound: int
    seconds: float = 0.0

    @property
    def realizable(self) -> bool:
        return self.status == REALIZABLE


def bounded_synthesize(problem: SynthesisProblem, config: Optional[ToolConfig] = None,
                       bound: Optional[int] = None) -> SynthesisResult:
    """Try bounds 1..``bound`` (default ``config.bound_max``); the first model wins."""
    config = config or get_tool_config()
    bound = bound or config.bound_max
    backend = EXTERNAL if config.solver_path else EMBEDDED
    started = time.perf_counter()
    for n in range(1, bound + 1):
        cnf = encode_run_graph(problem, n)
        model = solve_cnf(cnf, backend, config.solver, config.solver_path, config.timeout)
        if model is None:
            logger.info(f"{problem.name}: no machine with {n} states")
            continue
        machine = decode_machine(cnf, model, problem, n).minimize()
        elapsed = time.perf_counter() - started
        logger.info(f"{problem.name}: realized at bound {n} with {machine.num_states} states "
                    f"in {elapsed:.2f} s")
        return SynthesisResult(REALIZABLE, machine, n, elapsed)
    elapsed = time.perf_counter() - started
    logger.info(f"{problem.name}: unrealizable up to bound {bound}")
    return SynthesisResult(UNREALIZABLE_AT_BOUND, None, bound, elapsed)


def bounded_synthesize_ltl(phi, inputs, outputs, config: Optional[ToolConfig] = None,
                           bound: Optional[int] = None, name: str = "machine") -> SynthesisResult:
    return bounded_synthesize(ltl_problem(phi, inputs, outputs, name), config, bound)


def bounded_synthesize_hyper2(inputs, outputs, trace=(), bodies=(), pair_violations=(),
                              config: Optional[ToolConfig] = None, bound: Optional[int] = None,
                              name: str = "machine") -> SynthesisResult:
    problem = hyper2_problem(inputs, outputs, trace, bodies, pair_violations, name)
    return bounded_synthesize(problem, config, bound)
