# ifsynth/config.py
from dataclasses import dataclass
from typing import Optional
import os


@dataclass(frozen=True)
class ToolConfig:
    bound_max: int
    rank_cap: Optional[int]
    class_cap: int
    class_depth: int
    class_words_cap: int
    composition_cap: int
    decoder_cap: int

    lasso_stem: int
    lasso_loop: int
    knowledge_depth: int
    prefix_depth: int
    uniformity_stem: int
    uniformity_loop: int

    solver: str
    solver_path: Optional[str]
    timeout: float
    dump_dir: Optional[str]
    log_level: str

    def rank_cap_for(self, num_states: int) -> int:
        if self.rank_cap is not None:
            return self.rank_cap
        return max(1, 2 * num_states)


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


def _env_optional(name):
    value = os.environ.get(name)
    return value if value else None


def get_tool_config() -> ToolConfig:
    """
    Configuration for the synthesis toolkit
    Every field can be overridden with an IFSYNTH_* environment variable
    """

    rank_cap = _env_optional('IFSYNTH_RANK_CAP')

    return ToolConfig(
        bound_max=_env_int('IFSYNTH_BOUND_MAX', 8),
        rank_cap=int(rank_cap) if rank_cap else None,  # None means 2 * |states|
        class_cap=_env_int('IFSYNTH_CLASS_CAP', 16),
        class_depth=_env_int('IFSYNTH_CLASS_DEPTH', 3),
        class_words_cap=_env_int('IFSYNTH_CLASS_WORDS_CAP', 4096),
        composition_cap=_env_int('IFSYNTH_COMPOSITION_CAP', 10000),
        decoder_cap=_env_int('IFSYNTH_DECODER_CAP', 4096),

        lasso_stem=_env_int('IFSYNTH_LASSO_STEM', 3),
        lasso_loop=_env_int('IFSYNTH_LASSO_LOOP', 3),
        knowledge_depth=_env_int('IFSYNTH_KNOWLEDGE_DEPTH', 6),  # knowledge consistency check
        prefix_depth=_env_int('IFSYNTH_PREFIX_DEPTH', 8),  # prefix equality check
        uniformity_stem=_env_int('IFSYNTH_UNIFORMITY_STEM', 2),
        uniformity_loop=_env_int('IFSYNTH_UNIFORMITY_LOOP', 1),

        solver=os.environ.get('IFSYNTH_SOLVER', 'cadical153'),
        solver_path=_env_optional('IFSYNTH_SOLVER_PATH'),  # external DIMACS solver
        timeout=float(os.environ.get('IFSYNTH_TIMEOUT', '120')),
        dump_dir=_env_optional('IFSYNTH_DUMP_DIR'),
        log_level=os.environ.get('IFSYNTH_LOG_LEVEL', 'INFO'),
    )
