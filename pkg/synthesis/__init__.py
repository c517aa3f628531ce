from synthesis.bounded import (
    REALIZABLE,
    UNREALIZABLE_AT_BOUND,
    SynthesisResult,
    bounded_synthesize,
    bounded_synthesize_hyper2,
    bounded_synthesize_ltl,
)
from synthesis.encoding import decode_machine, encode_run_graph
from synthesis.machine import (
    MooreMachine,
    constant_machine,
    load_machine,
    machine_from_json,
    machine_from_table,
    machine_to_dot,
    machine_to_json,
    pair_language,
    save_machine,
    trace_language,
)
from synthesis.problem import SynthesisProblem, fit_pair_violation, hyper2_problem, ltl_problem
from synthesis.solver import EMBEDDED, EXTERNAL, CnfInstance, solve_cnf
