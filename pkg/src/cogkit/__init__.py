"""cogkit: compositional temporal visual-reasoning task battery.

Builds task graphs from eight operators, renders English instructions,
synthesizes minimally-biased image sequences by reverse execution, and
scores/audits model responses; exposed as a library, a CLI and an HTTP
episode service.
"""

__version__ = "0.1.0"

from .catalog import CATALOG_VERSION, get_task, load_catalog, task_names
from .counting import count_graph_instances, count_instances
from .episodes import episode_for, episode_stream
from .generation import (
    GenStats,
    add_distractors,
    generate_episode,
    sample_target,
    verify_episode,
)
from .handcrafted import generate_handcrafted
from .operators import (
    TaskGraph,
    TaskInstance,
    allowable_outputs,
    evaluate,
    instantiate,
    render_instruction,
)
from .rng import derive_rng
from .scoring import (
    AuditReport,
    PointingTarget,
    ScoreReport,
    audit_bias,
    chance_level,
    pointing_distribution,
    score_frame,
    score_stream,
    simulate_chance,
)
from .taskspec import build_graph, parse_task
from .types import (
    COLORS,
    GenerationConfig,
    Episode,
    Frame,
    INVALID,
    Loc,
    ResponseValue,
    SHAPES,
    SceneObject,
    TIME_REFS,
    VOCABULARY,
)

__all__ = [
    "AuditReport",
    "CATALOG_VERSION",
    "COLORS",
    "Episode",
    "Frame",
    "GenStats",
    "GenerationConfig",
    "INVALID",
    "Loc",
    "PointingTarget",
    "ResponseValue",
    "SHAPES",
    "SceneObject",
    "ScoreReport",
    "TIME_REFS",
    "TaskGraph",
    "TaskInstance",
    "VOCABULARY",
    "add_distractors",
    "allowable_outputs",
    "audit_bias",
    "build_graph",
    "chance_level",
    "count_graph_instances",
    "count_instances",
    "derive_rng",
    "episode_for",
    "episode_stream",
    "evaluate",
    "generate_episode",
    "generate_handcrafted",
    "get_task",
    "instantiate",
    "load_catalog",
    "parse_task",
    "pointing_distribution",
    "render_instruction",
    "sample_target",
    "score_frame",
    "score_stream",
    "simulate_chance",
    "task_names",
    "verify_episode",
]
