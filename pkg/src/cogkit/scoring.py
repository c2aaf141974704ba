"""Scoring, chance levels and dataset bias audits.

Pointing correctness uses the 7x7 grid criterion: a pointing response is
correct when it lands in the same grid cell as the target.  Frames whose
target is invalid are skipped (no credit, no penalty) and counted
separately.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass

from scipy.stats import chi2

from .catalog import CATALOG_VERSION, get_task
from .episodes import episode_for
from .generation import GenStats, memory_durations
from .operators import (
    OutputSpace,
    TaskInstance,
    allowable_outputs,
    instantiate,
)
from .rng import derive_rng
from .types import GenerationConfig, Loc, ResponseValue

GRID = 7
POINT_SIGMA = 0.1


@dataclass(frozen=True)
class PointingTarget:
    """A pointing target with its soft scoring distribution: the Gaussian
    (sigma = 0.1 canvas fractions) centered at the location, evaluated at
    the 7x7 cell centers and normalized to sum to one."""

    loc: Loc
    sigma: float = POINT_SIGMA

    @property
    def grid(self) -> list[float]:
        return pointing_distribution(self.loc, GRID, self.sigma)

    @property
    def cell(self) -> tuple[int, int]:
        return grid_cell(self.loc)


def grid_cell(loc: Loc, grid: int = GRID) -> tuple[int, int]:
    """Grid cell containing a location; edge coordinates clamp inward."""
    col = min(grid - 1, max(0, int(loc.x * grid)))
    row = min(grid - 1, max(0, int(loc.y * grid)))
    return col, row


def score_frame(pred: ResponseValue, target: ResponseValue) -> str:
    """Return "correct", "incorrect" or "skipped" for one frame."""
    if target.is_invalid:
        return "skipped"
    if pred.kind == "point":
        if target.kind != "point":
            return "incorrect"
        return ("correct" if grid_cell(pred.loc) == grid_cell(target.loc)
                else "incorrect")
    pred_word = pred.as_word()
    target_word = target.as_word()
    if pred_word is None or target_word is None:
        return "incorrect"
    return "correct" if pred_word == target_word else "incorrect"


def pointing_distribution(target: Loc, grid: int = GRID,
                          sigma: float = POINT_SIGMA) -> list[float]:
    """Normalized Gaussian cell probabilities centered at the target.

    Cells are listed row-major with centers at ((i + 0.5)/grid, (j + 0.5)/grid).
    """
    weights = []
    for row in range(grid):
        cy = (row + 0.5) / grid
        for col in range(grid):
            cx = (col + 0.5) / grid
            d2 = (cx - target.x) ** 2 + (cy - target.y) ** 2
            weights.append(math.exp(-d2 / (2 * sigma * sigma)))
    total = sum(weights)
    return [w / total for w in weights]


# ---------------------------------------------------------------------------
# Score reports

@dataclass
class ScoreReport:
    per_task: dict[str, float]
    overall: float
    scored: int
    skipped: int
    correct: int

    def to_obj(self) -> dict:
        return {
            "overall": self.overall,
            "per_task": self.per_task,
            "scored": self.scored,
            "skipped": self.skipped,
            "correct": self.correct,
        }


def score_stream(pairs) -> ScoreReport:
    """Score (task_name, pred, target) triples into a report."""
    per_task_counts: dict[str, list[int]] = {}
    skipped = 0
    for task_name, pred, target in pairs:
        outcome = score_frame(pred, target)
        if outcome == "skipped":
            skipped += 1
            continue
        bucket = per_task_counts.setdefault(task_name, [0, 0])
        bucket[1] += 1
        if outcome == "correct":
            bucket[0] += 1
    per_task = {name: (c / n if n else 0.0)
                for name, (c, n) in sorted(per_task_counts.items())}
    correct = sum(c for c, _ in per_task_counts.values())
    scored = sum(n for _, n in per_task_counts.values())
    overall = correct / scored if scored else 0.0
    return ScoreReport(per_task=per_task, overall=overall, scored=scored,
                       skipped=skipped, correct=correct)


# ---------------------------------------------------------------------------
# Chance levels

def chance_level(task_or_instance) -> float:
    """Expected accuracy of a uniform guesser over the task's outputs.

    A guesser picks uniformly among the root's possible responses (49 grid
    cells for pointing); with balanced targets this is 1 / domain size.
    """
    if isinstance(task_or_instance, TaskInstance):
        instance = task_or_instance
    else:
        doc = get_task(str(task_or_instance))
        instance = instantiate(doc.graph, random.Random(0), doc.name)
    return 1.0 / allowable_outputs(instance).guess_domain_size()


def simulate_chance(task_name: str, n: int, seed: int = 0) -> float:
    """Monte-carlo chance estimate: a uniform guesser against sampled targets."""
    doc = get_task(task_name)
    rng = derive_rng(seed, 0, label=f"chance:{task_name}")
    hits = 0
    for _ in range(n):
        instance = instantiate(doc.graph, rng, doc.name)
        space = allowable_outputs(instance)
        target = space.sample(rng)
        guess = _uniform_guess(space, rng)
        if score_frame(guess, target) == "correct":
            hits += 1
    return hits / n


def _uniform_guess(space: OutputSpace, rng: random.Random) -> ResponseValue:
    """One guess uniform over the response domain (cells for pointing)."""
    if space.kind == "switch":
        sizes = [b.guess_domain_size() for b in space.branches]
        pick = rng.randrange(sum(sizes))
        branch = space.branches[0] if pick < sizes[0] else space.branches[1]
        return _uniform_guess(branch, rng)
    if space.kind == "point":
        col = rng.randrange(GRID)
        row = rng.randrange(GRID)
        return ResponseValue.point((col + 0.5) / GRID, (row + 0.5) / GRID)
    if space.kind == "bool":
        return ResponseValue.boolean(rng.random() < 0.5)
    return ResponseValue.verbal(space.values[rng.randrange(len(space.values))])


# ---------------------------------------------------------------------------
# Bias audit

@dataclass
class AuditReport:
    task: str
    episodes: int
    config: GenerationConfig
    target_counts: dict[str, int]          # all frames, canonical word / cell
    final_frame_counts: dict[str, int]     # one per episode (independent)
    invalid_rate: float
    true_rate: float | None
    chi_square: dict | None
    memory_histogram: dict[int, int]
    mean_memory_duration: float | None
    distractor_deletion_rate: float

    def to_obj(self) -> dict:
        return {
            "task": self.task,
            "episodes": self.episodes,
            "config": self.config.to_obj(),
            "target_counts": dict(self.target_counts),
            "final_frame_counts": dict(self.final_frame_counts),
            "invalid_rate": self.invalid_rate,
            "true_rate": self.true_rate,
            "chi_square": self.chi_square,
            "memory_histogram": {str(k): v
                                 for k, v in sorted(self.memory_histogram.items())},
            "mean_memory_duration": self.mean_memory_duration,
            "distractor_deletion_rate": self.distractor_deletion_rate,
        }


def _target_label(target: ResponseValue) -> str:
    if target.kind == "point":
        col, row = grid_cell(target.loc)
        return f"cell:{col},{row}"
    return target.as_word()


def audit_bias(task_name: str, n: int, config: GenerationConfig,
               seed: int | None = None,
               *, catalog_version: str = CATALOG_VERSION) -> AuditReport:
    """Generate ``n`` episodes and report the recorded-target distribution.

    The chi-square statistic uses one target per episode (the final frame),
    since repeated lookups of a remembered object duplicate targets across
    frames of one episode; the all-frames distribution is reported alongside.
    """
    if n < 1:
        raise ValueError("audit needs at least one episode")
    config = config if seed is None else GenerationConfig(
        frames=config.frames, max_memory=config.max_memory,
        max_distractors=config.max_distractors, canvas=config.canvas,
        seed=seed)
    all_counts: Counter[str] = Counter()
    final_counts: Counter[str] = Counter()
    invalid = 0
    total = 0
    true_count = 0
    bool_count = 0
    durations: Counter[int] = Counter()
    tried = 0
    deleted = 0
    for index in range(n):
        stats = GenStats()
        episode = episode_for(task_name, config, index,
                              catalog_version=catalog_version, stats=stats)
        tried += stats.distractors_tried
        deleted += stats.distractors_deleted
        for duration in memory_durations(episode):
            durations[duration] += 1
        for target in episode.targets:
            total += 1
            if target.is_invalid:
                invalid += 1
                continue
            all_counts[_target_label(target)] += 1
            if target.kind == "bool":
                bool_count += 1
                if target.flag:
                    true_count += 1
        final = episode.targets[-1]
        if not final.is_invalid:
            final_counts[_target_label(final)] += 1

    doc = get_task(task_name, catalog_version)
    instance = instantiate(doc.graph, random.Random(0), doc.name)
    space = allowable_outputs(instance)
    chi = _chi_square_vs_uniform(space, final_counts)
    n_durations = sum(durations.values())
    mean_duration = (sum(k * v for k, v in durations.items()) / n_durations
                     if n_durations else None)
    return AuditReport(
        task=task_name,
        episodes=n,
        config=config,
        target_counts=dict(sorted(all_counts.items())),
        final_frame_counts=dict(sorted(final_counts.items())),
        invalid_rate=invalid / total if total else 0.0,
        true_rate=(true_count / bool_count) if bool_count else None,
        chi_square=chi,
        memory_histogram=dict(durations),
        mean_memory_duration=mean_duration,
        distractor_deletion_rate=(deleted / tried) if tried else 0.0,
    )


def _chi_square_vs_uniform(space: OutputSpace, counts: Counter) -> dict | None:
    """Chi-square of the final-frame targets against the uniform null.

    Only defined for closed discrete output spaces (booleans and verbal
    attributes); pointing and mixed switch roots report counts without a
    test statistic.
    """
    if space.kind == "bool":
        labels = ["true", "false"]
    elif space.kind in ("color", "shape"):
        labels = list(space.values)
    else:
        return None
    n = sum(counts.values())
    if n == 0:
        return None
    expected = n / len(labels)
    stat = sum((counts.get(label, 0) - expected) ** 2 / expected
               for label in labels)
    df = len(labels) - 1
    p_value = float(chi2.sf(stat, df))
    return {"statistic": stat, "df": df, "p_value": p_value, "n": n}
