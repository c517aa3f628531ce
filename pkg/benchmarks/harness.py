"""Benchmark harness: one pipeline run per row, each in its own worker process."""

from __future__ import annotations

import logging
import multiprocessing
import queue
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from benchmarks.generator import DIR, gen_benchmark
from composition.bundle import HYPER, PRACTICAL
from config import ToolConfig, get_tool_config
from pipeline import CERTIFIED, UNREALIZABLE, run_pipeline

logger = logging.getLogger(__name__)

ERROR = "error"
TIMEOUT = "TO"
PHASES = ("analysis", "classes", "synthesis", "composition", "verification")


@dataclass
class RunRecord:
    benchmark: str
    arch: str
    param: int
    mode: str
    outcome: str
    timings: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)
    detail: str = ""
    seconds: float = 0.0

    def phase_time(self, phase: str) -> Optional[float]:
        found = [t for name, t in self.timings.items() if name == phase or name.startswith(f"{phase}_")]
        return sum(found) if found else None

    def to_row(self) -> dict:
        row = asdict(self)
        row["timings"] = {name: round(t, 3) for name, t in self.timings.items()}
        row["seconds"] = round(self.seconds, 3)
        return row


def default_mode(arch_mode: str) -> str:
    return PRACTICAL if arch_mode == DIR else HYPER


def _run_row(family, param, arch_mode, mode, config, out_dir, results):
    try:
        instance = gen_benchmark(family, param, arch_mode)
        directory = Path(out_dir) / instance.name if out_dir else None
        if directory is not None:
            directory.mkdir(parents=True, exist_ok=True)
            (directory / f"{instance.name}.spec").write_text(instance.render(), encoding="utf-8")
        result = run_pipeline(instance.spec, mode, config, out_dir=directory)
        outcome = result.status if result.status in (CERTIFIED, UNREALIZABLE) else ERROR
        detail = "" if result.report is None or result.report.passed else \
            "; ".join(v.name for v in result.report.failures)
        if result.unrealizable:
            detail = f"unrealizable for {', '.join(result.unrealizable)}"
        results.put((outcome, result.timings, result.sizes(), detail))
    except Exception as e:
        results.put((ERROR, {}, {}, str(e)))


def run_benchmark_row(family: str, param: int, arch_mode: str = DIR, mode: Optional[str] = None,
                      config: Optional[ToolConfig] = None, time_limit: Optional[float] = None,
                      out_dir=None) -> RunRecord:
    config = config or get_tool_config()
    mode = mode or default_mode(arch_mode)
    time_limit = config.timeout if time_limit is None else time_limit
    record = RunRecord(family, arch_mode, param, mode, TIMEOUT)
    if time_limit <= 0:
        return record

    results = multiprocessing.Queue()
    worker = multiprocessing.Process(target=_run_row,
                                     args=(family, param, arch_mode, mode, config, out_dir, results))
    started = time.perf_counter()
    worker.start()
    try:
        outcome, timings, sizes, detail = results.get(timeout=time_limit)
    except queue.Empty:
        logger.warning(f"{family} {arch_mode} {param} timed out after {time_limit} s")
        worker.terminate()
    else:
        record.outcome, record.timings, record.sizes, record.detail = outcome, timings, sizes, detail
    finally:
        worker.join()
        record.seconds = time.perf_counter() - started
    logger.info(f"{family} {arch_mode} {param}: {record.outcome} in {record.seconds:.2f} s")
    return record


def cmd_bench(families, params, arch_modes=(DIR,), mode: Optional[str] = None,
              config: Optional[ToolConfig] = None, time_limit: Optional[float] = None,
              out_dir=None) -> list:
    config = config or get_tool_config()
    records = []
    for family in families:
        for arch_mode in arch_modes:
            for param in params:
                records.append(run_benchmark_row(family, param, arch_mode, mode, config, time_limit, out_dir))
    return records


def _cell(value) -> str:
    return "-" if value is None else f"{value:.2f}"


def render_table(records) -> str:
    header = ["Bench.", "Arch.", "Par.", "Mode"] + [p.capitalize() for p in PHASES] + ["Total", "Outcome"]
    rows = [header]
    for r in records:
        cells = [r.benchmark, r.arch, str(r.param), r.mode]
        cells += [TIMEOUT if r.outcome == TIMEOUT else _cell(r.phase_time(p)) for p in PHASES]
        cells += [_cell(r.seconds), r.outcome]
        rows.append(cells)
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)
