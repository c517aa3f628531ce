"""End-to-end certification of a solution bundle."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from composition.bundle import HYPER, SolutionBundle
from composition.system import compose_local
from config import ToolConfig, get_tool_config
from infoflow.compatibility import build_compatibility_automaton
from infoflow.ifa import build_ifa_automaton
from infoflow.tb_dist import build_tb_dist_automaton
from infoflow.tb_ifa import build_tb_ifa_automaton
from spec_model.architecture import SystemSpec
from spec_model.ltl import And
from verify.checks import (
    check_ifa, check_knowledge_consistency, check_local_correctness, check_prefix_equality, model_check,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CertificationReport:
    verdicts: tuple

    @property
    def passed(self) -> bool:
        return all(v.holds for v in self.verdicts)

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if not v.holds]

    def to_rows(self) -> list:
        return [v.to_row() for v in self.verdicts]

    def render(self) -> str:
        width = max((len(v.name) for v in self.verdicts), default=0)
        lines = []
        for v in self.verdicts:
            line = f"{v.name.ljust(width)}  {v.status}"
            if v.counterexample is not None:
                line += f"  {v.describe_counterexample()}"
            lines.append(line)
        lines.append("PASSED" if self.passed else f"FAILED ({len(self.failures)} checks)")
        return "\n".join(lines)


def certify_end_to_end(spec: SystemSpec, bundle: SolutionBundle,
                       config: Optional[ToolConfig] = None) -> CertificationReport:
    config = config or get_tool_config()
    arch = spec.arch
    p, q = arch.p, arch.q
    logger.info(f"Certifying {bundle.mode} solution...")
    phi = And(spec.phi_p, spec.phi_q)
    verdicts = [model_check(bundle.composed, phi, "composed system satisfies the specification")]

    for process in (p, q):
        compat = build_compatibility_automaton(spec.phi(process), arch, process)
        verdicts.append(check_ifa(bundle.composed, build_ifa_automaton(compat, arch), arch, config))

    if bundle.mode == HYPER:
        tbs = {}
        for process in (p, q):
            tbs[process] = bundle.analysis.get(process) \
                or build_tb_dist_automaton(spec.phi(process), arch, process, config)
        for process in (p, q):
            partner = arch.other(process)
            verdicts.extend(check_local_correctness(
                bundle.hyper[process], spec.phi(process), process, tbs[process],
                build_tb_ifa_automaton(tbs[partner], arch), arch))

    for process in (p, q):
        verdicts.append(check_knowledge_consistency(bundle.composed, process, config.knowledge_depth))
    s_p, s_q = bundle.local[p], bundle.local[q]
    verdicts.append(check_prefix_equality(bundle.composed, s_p, s_q, config.prefix_depth))
    verdicts.append(model_check(compose_local(s_p, s_q, arch, config), phi,
                                "local strategies satisfy the specification"))

    report = CertificationReport(tuple(verdicts))
    logger.info(f"Certification {'passed' if report.passed else 'failed'}: "
                f"{len(verdicts) - len(report.failures)}/{len(verdicts)} checks hold")
    return report
