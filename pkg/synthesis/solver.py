"""Propositional back ends: an embedded pysat solver or any external DIMACS solver."""

from __future__ import annotations

import logging
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Optional

from pysat.formula import CNF, IDPool
from pysat.solvers import Solver

from errors import MalformedSolverOutputError, SolverError, SolverNotFoundError

logger = logging.getLogger(__name__)

EMBEDDED = "embedded"
EXTERNAL = "external"

SAT_EXIT = 10
UNSAT_EXIT = 20


@dataclass
class CnfInstance:
    """Clauses over variables named by hashable keys."""

    pool: IDPool = field(default_factory=IDPool)
    clauses: list = field(default_factory=list)

    def var(self, key: Hashable) -> int:
        return self.pool.id(key)

    def add(self, clause: Iterable[int]):
        self.clauses.append(list(clause))

    def extend(self, clauses):
        for clause in clauses:
            self.add(clause)

    @property
    def num_vars(self) -> int:
        return self.pool.top

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def to_cnf(self) -> CNF:
        return CNF(from_clauses=self.clauses)

    def write_dimacs(self, path) -> Path:
        path = Path(path)
        self.to_cnf().to_file(str(path))
        return path


def _check_model(instance: CnfInstance, model: frozenset):
    for clause in instance.clauses:
        if not any(lit in model for lit in clause):
            raise SolverError("Solver model violates a clause", [f"clause {clause}"])


def _solve_embedded(instance: CnfInstance, name: str) -> Optional[frozenset]:
    with Solver(name=name, bootstrap_with=instance.clauses) as solver:
        if not solver.solve():
            return None
        return frozenset(solver.get_model())


def _parse_output(text: str, returncode: int) -> Optional[list]:
    status = None
    values = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            values.extend(int(token) for token in line[2:].split())
    if status is None:
        status = {SAT_EXIT: "SATISFIABLE", UNSAT_EXIT: "UNSATISFIABLE"}.get(returncode)
    if status == "UNSATISFIABLE":
        return None
    if status != "SATISFIABLE":
        raise MalformedSolverOutputError(f"Solver reported no result (exit code {returncode})")
    if not values or values[-1] != 0:
        raise MalformedSolverOutputError("Solver model is not terminated by 0")
    return values[:-1]


def _solve_external(instance: CnfInstance, solver_path: str, timeout: Optional[float]) -> Optional[frozenset]:
    executable = shutil.which(solver_path)
    if executable is None:
        raise SolverNotFoundError(f"External solver {solver_path} not found")
    with tempfile.TemporaryDirectory() as directory:
        path = instance.write_dimacs(Path(directory) / "instance.cnf")
        try:
            completed = subprocess.run([executable, str(path)], capture_output=True, text=True,
                                       timeout=timeout)
        except subprocess.TimeoutExpired as e:
            raise SolverError(f"External solver timed out after {timeout} s") from e
    values = _parse_output(completed.stdout, completed.returncode)
    if values is None:
        return None
    assigned = {abs(v) for v in values}
    # unassigned variables are don't-cares; fix them false
    return frozenset(values) | frozenset(-v for v in range(1, instance.num_vars + 1) if v not in assigned)


def solve_cnf(instance: CnfInstance, backend: str = EMBEDDED, solver: str = "cadical153",
              solver_path: Optional[str] = None, timeout: Optional[float] = None) -> Optional[frozenset]:
    """Satisfying assignment as a set of true and false literals, or None if unsatisfiable."""
    logger.info(f"Solving {instance.num_vars} variables, {instance.num_clauses} clauses ({backend})")
    if backend == EMBEDDED:
        model = _solve_embedded(instance, solver)
    elif backend == EXTERNAL:
        if not solver_path:
            raise SolverNotFoundError("External backend requested without a solver path")
        model = _solve_external(instance, solver_path, timeout)
    else:
        raise SolverError(f"Unknown solver backend {backend}")
    if model is not None:
        _check_model(instance, model)
    return model
