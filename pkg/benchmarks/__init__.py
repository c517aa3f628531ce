from benchmarks.generator import (
    AC, ARCH_MODES, BIDIR, DIR, EC, FAMILIES, SA, BenchmarkInstance, gen_benchmark,
)
from benchmarks.harness import ERROR, TIMEOUT, RunRecord, cmd_bench, render_table, run_benchmark_row
