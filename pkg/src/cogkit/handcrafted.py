"""Scripted delayed-match episodes for the five hand-designed tasks.

These tasks keep the usual task graphs (for instructions and forward
evaluation) but build their scenes from fixed scripts instead of the
generic backward pass: a cue object on frame 0 and one probe display per
later frame, with probe attributes coined so boolean targets stay
balanced.  Targets are still recorded from the forward interpreter.
"""

from __future__ import annotations

import random

from .errors import UnknownTaskError
from .generation import (
    GenStats,
    PLACE_HIGH,
    PLACE_LOW,
    PLACE_RETRIES,
    _draw_excluding,
    _separated,
    EPISODE_RETRIES,
)
from .errors import GenerationRetryExceeded, PlacementError
from .operators import TaskInstance, evaluate, render_instruction
from .types import (
    COLORS,
    GenerationConfig,
    Episode,
    Frame,
    Loc,
    SHAPES,
    SceneObject,
)

SCRIPTED_TASKS = (
    "GoColorOf",
    "GoShapeOf",
    "ExistLastColorSameShape",
    "ExistLastShapeSameColor",
    "ExistLastObjectSameObject",
)


def _put(frames: list[Frame], t: int, color: str, shape: str,
         rng: random.Random, provenance: str = "required") -> SceneObject:
    frame = frames[t]
    for _ in range(PLACE_RETRIES):
        loc = Loc(rng.uniform(PLACE_LOW, PLACE_HIGH),
                  rng.uniform(PLACE_LOW, PLACE_HIGH))
        if _separated(loc, frame):
            obj = SceneObject(color, shape, loc, t, provenance)
            frame.objects.append(obj)
            return obj
    raise PlacementError(f"frame {t} has no room left")


def _script_frames(task_name: str, instance: TaskInstance,
                   config: GenerationConfig, rng: random.Random) -> list[Frame]:
    frames = [Frame(i) for i in range(config.frames)]
    draw_color = lambda: COLORS[rng.randrange(len(COLORS))]
    draw_shape = lambda: SHAPES[rng.randrange(len(SHAPES))]

    if task_name == "GoColorOf":
        cue_shape = instance.value("cue", "shape")
        cue_color = draw_color()
        _put(frames, 0, cue_color, cue_shape, rng)
        for t in range(1, config.frames):
            _put(frames, t, cue_color, _draw_excluding(SHAPES, cue_shape, rng), rng)
            _put(frames, t, _draw_excluding(COLORS, cue_color, rng),
                 _draw_excluding(SHAPES, cue_shape, rng), rng)
    elif task_name == "GoShapeOf":
        cue_color = instance.value("cue", "color")
        cue_shape = draw_shape()
        _put(frames, 0, cue_color, cue_shape, rng)
        for t in range(1, config.frames):
            _put(frames, t, _draw_excluding(COLORS, cue_color, rng), cue_shape, rng)
            _put(frames, t, _draw_excluding(COLORS, cue_color, rng),
                 _draw_excluding(SHAPES, cue_shape, rng), rng)
    elif task_name == "ExistLastColorSameShape":
        cue_color = instance.value("cue", "color")
        cue_shape = draw_shape()
        _put(frames, 0, cue_color, cue_shape, rng)
        for t in range(1, config.frames):
            same = rng.random() < 0.5
            shape = cue_shape if same else _draw_excluding(SHAPES, cue_shape, rng)
            _put(frames, t, _draw_excluding(COLORS, cue_color, rng), shape, rng)
    elif task_name == "ExistLastShapeSameColor":
        cue_shape = instance.value("cue", "shape")
        cue_color = draw_color()
        _put(frames, 0, cue_color, cue_shape, rng)
        for t in range(1, config.frames):
            same = rng.random() < 0.5
            color = cue_color if same else _draw_excluding(COLORS, cue_color, rng)
            _put(frames, t, color, _draw_excluding(SHAPES, cue_shape, rng), rng)
    elif task_name == "ExistLastObjectSameObject":
        prev_color, prev_shape = draw_color(), draw_shape()
        _put(frames, 0, prev_color, prev_shape, rng)
        for t in range(1, config.frames):
            if rng.random() < 0.5:
                color, shape = prev_color, prev_shape
            elif rng.random() < 0.5:
                color = _draw_excluding(COLORS, prev_color, rng)
                shape = prev_shape
            else:
                color = prev_color
                shape = _draw_excluding(SHAPES, prev_shape, rng)
            _put(frames, t, color, shape, rng)
            prev_color, prev_shape = color, shape
    else:
        raise UnknownTaskError(task_name)
    return frames


def generate_handcrafted(task_name: str, instance: TaskInstance,
                         config: GenerationConfig, rng: random.Random,
                         *, stats: GenStats | None = None,
                         seed_path: tuple[int, int] | None = None) -> Episode:
    """Build one scripted episode; targets come from the forward oracle."""
    if task_name not in SCRIPTED_TASKS:
        raise UnknownTaskError(task_name)
    stats = stats if stats is not None else GenStats()
    last_error = None
    for attempt in range(EPISODE_RETRIES):
        if attempt:
            stats.episode_retries += 1
        try:
            frames = _script_frames(task_name, instance, config, rng)
        except PlacementError as exc:
            last_error = exc
            continue
        targets = [evaluate(instance, frames, t, config.max_memory)
                   for t in range(config.frames)]
        if config.max_distractors >= 1:
            _add_one_distractor(instance, config, frames, targets, rng, stats)
        return Episode(
            task_name=task_name,
            instance=instance,
            instruction=render_instruction(instance),
            frames=frames,
            targets=targets,
            config=config,
            seed_path=seed_path or (config.seed, 0),
        )
    raise GenerationRetryExceeded(str(last_error))


def _add_one_distractor(instance, config, frames, targets, rng, stats) -> None:
    """One floating distractor per episode, deleted if it moves any target."""
    stats.distractors_tried += 1
    t = rng.randrange(config.frames)
    color = COLORS[rng.randrange(len(COLORS))]
    shape = SHAPES[rng.randrange(len(SHAPES))]
    for _ in range(PLACE_RETRIES):
        loc = Loc(rng.uniform(PLACE_LOW, PLACE_HIGH),
                  rng.uniform(PLACE_LOW, PLACE_HIGH))
        if _separated(loc, frames[t]):
            break
    else:
        return
    frames[t].objects.append(SceneObject(color, shape, loc, t, "distractor"))
    for t_check in range(config.frames):
        if evaluate(instance, frames, t_check, config.max_memory) \
                != targets[t_check]:
            frames[t].objects.pop()
            stats.distractors_deleted += 1
            return
