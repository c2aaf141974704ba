"""Backward episode synthesis.

Targets are chosen first (uniformly over the root's allowable outputs) and
scenes are built to produce them: frames are visited newest-first and each
frame's graph is walked root-first, so every operator decides the inputs it
needs and mutates the scene accordingly.

Two rules keep the recorded targets near-uniform:

* read-back: before an operator invents a value, it checks whether the
  committed scene already determines one (a remembered object still serving
  a "latest"/"last" select, a boolean forced by existing objects).  A
  determined value is reused instead of resampled, which is what keeps
  repeated queries of one remembered object consistent across frames.
* frame consistency retry: after a frame's pass, every already-built frame
  is re-run through the forward interpreter; if an insertion disturbed an
  earlier decision the frame is rolled back and redrawn.  Residual conflicts
  are accepted with the forward value recorded (and show up in the audit).

Recorded targets are always the forward interpreter's output on the final
scene, never the sampled intentions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import GenerationRetryExceeded, PlacementError
from .operators import (
    INVALID_VALUE,
    TaskInstance,
    allowable_outputs,
    equal_side_type,
    evaluate,
    match_in_frame,
    render_instruction,
    time_window,
    to_response,
)
from .types import (
    COLORS,
    GenerationConfig,
    Episode,
    Frame,
    Loc,
    ResponseValue,
    SHAPES,
    SceneObject,
    in_half_plane,
    opposite_relation,
)

PLACE_LOW, PLACE_HIGH = 0.08, 0.92
MIN_SEPARATION = 0.18
PLACE_RETRIES = 100
FRAME_RETRIES = 8
EPISODE_RETRIES = 20

SQRT_HALF = math.sqrt(0.5)
#: P(true, false), P(false, true), P(false, false) given a false conjunction;
#: chosen so the two conjuncts are statistically independent when the
#: conjunction itself is balanced.
AND_FALSE_TABLE = (2 * SQRT_HALF - 1, 2 * SQRT_HALF - 1, 3 - 4 * SQRT_HALF)


@dataclass
class GenStats:
    """Instrumentation collected while generating one episode."""

    placements: list[tuple[int, int]] = field(default_factory=list)  # (query t, frame)
    near_misses: list[str] = field(default_factory=list)  # flipped dimension
    search_hits: int = 0
    frame_retries: int = 0
    episode_retries: int = 0
    distractors_tried: int = 0
    distractors_deleted: int = 0


def sample_target(instance: TaskInstance, rng: random.Random) -> ResponseValue:
    """Uniform draw over the instance's allowable outputs."""
    return allowable_outputs(instance).sample(rng)


def draw_and_inputs(target: bool, rng: random.Random) -> tuple[bool, bool]:
    """Input booleans for a conjunction with the given target value."""
    if target:
        return True, True
    u = rng.random()
    if u < AND_FALSE_TABLE[0]:
        return True, False
    if u < AND_FALSE_TABLE[0] + AND_FALSE_TABLE[1]:
        return False, True
    return False, False


def draw_equal_pair(same: bool, domain: tuple[str, ...],
                    rng: random.Random) -> tuple[str, str]:
    """A pair of attribute values that are equal or distinct, uniformly."""
    first = domain[rng.randrange(len(domain))]
    if same:
        return first, first
    second = first
    while second == first:
        second = domain[rng.randrange(len(domain))]
    return first, second


def _draw_excluding(domain: tuple[str, ...], exclude, rng: random.Random) -> str:
    value = domain[rng.randrange(len(domain))]
    while value == exclude:
        value = domain[rng.randrange(len(domain))]
    return value


# ---------------------------------------------------------------------------
# Scene bookkeeping

class _Ctx:
    """State threaded through one frame's backward pass."""

    __slots__ = ("instance", "frames", "t", "m_max", "rng", "stats", "graph")

    def __init__(self, instance: TaskInstance, frames: list[Frame], t: int,
                 m_max: int, rng: random.Random, stats: GenStats):
        self.instance = instance
        self.graph = instance.graph
        self.frames = frames
        self.t = t
        self.m_max = m_max
        self.rng = rng
        self.stats = stats


def _random_loc(rng: random.Random, relation=None, anchor=None) -> Loc:
    """Uniform location in the placement box, optionally inside a half-plane."""
    for _ in range(PLACE_RETRIES):
        loc = Loc(rng.uniform(PLACE_LOW, PLACE_HIGH),
                  rng.uniform(PLACE_LOW, PLACE_HIGH))
        if relation is None or in_half_plane(loc, relation, anchor):
            return loc
    raise PlacementError(f"no location satisfies {relation} of {anchor}")


def _separated(loc: Loc, frame: Frame) -> bool:
    for obj in frame.objects:
        if abs(obj.loc.x - loc.x) < MIN_SEPARATION \
                and abs(obj.loc.y - loc.y) < MIN_SEPARATION \
                and (obj.loc.x - loc.x) ** 2 + (obj.loc.y - loc.y) ** 2 \
                        < MIN_SEPARATION ** 2:
            return False
    return True


def _place(ctx: _Ctx, frame_idx: int, color: str | None, shape: str | None,
           loc: Loc | None, relation=None, anchor=None,
           provenance: str = "required") -> SceneObject:
    """Add one object, drawing unspecified attributes uniformly."""
    rng = ctx.rng
    frame = ctx.frames[frame_idx]
    if color is None:
        color = COLORS[rng.randrange(len(COLORS))]
    if shape is None:
        shape = SHAPES[rng.randrange(len(SHAPES))]
    if loc is not None:
        if not _separated(loc, frame):
            raise PlacementError(
                f"pinned location {loc} collides on frame {frame_idx}")
    else:
        for _ in range(PLACE_RETRIES):
            candidate = _random_loc(rng, relation, anchor)
            if _separated(candidate, frame):
                loc = candidate
                break
        else:
            raise PlacementError(f"frame {frame_idx} has no room left")
    obj = SceneObject(color=color, shape=shape, loc=loc, frame=frame_idx,
                      provenance=provenance)
    frame.objects.append(obj)
    return obj


# ---------------------------------------------------------------------------
# Probing: is a node's value already fixed by the committed scene?

_OPEN = ("open", None)


def _probe(ctx: _Ctx, node_id: str):
    """("det", value) when the committed scene already determines the node's
    forward value at frame t; ("open", None) when the backward pass may still
    choose it."""
    node = ctx.graph.node(node_id)
    kind = node.kind

    if kind == "select":
        resolved = _resolve_select_feeds(ctx, node, materialize=False)
        if resolved is None:
            return _OPEN
        if resolved is INVALID_VALUE:
            return "det", INVALID_VALUE
        color, shape, relation, anchor, time_ref = resolved
        lo, hi = time_window(time_ref, ctx.t, len(ctx.frames), ctx.m_max)
        if hi < lo:
            return "det", []
        matches = _scan(ctx, color, shape, relation, anchor, lo, hi)
        if matches:
            return "det", matches
        return _OPEN

    if kind in ("getcolor", "getshape", "getloc"):
        state, value = _probe(ctx, node.inputs["objects"])
        if state == "open":
            return _OPEN
        if value is INVALID_VALUE or len(value) != 1:
            return "det", INVALID_VALUE
        return "det", _attr_of(kind, value[0])

    if kind == "exist":
        state, value = _probe(ctx, node.inputs["objects"])
        if state == "open":
            return _OPEN
        if value is INVALID_VALUE:
            return "det", INVALID_VALUE
        return "det", len(value) > 0

    if kind == "equal":
        values = []
        for side in ("lhs", "rhs"):
            if side in node.params:
                values.append(ctx.instance.value(node_id, side))
            else:
                state, value = _probe(ctx, node.inputs[side])
                if state == "open":
                    return _OPEN
                if value is INVALID_VALUE:
                    return "det", INVALID_VALUE
                values.append(value)
        return "det", values[0] == values[1]

    if kind == "and":
        states = [_probe(ctx, node.inputs[s]) for s in ("lhs", "rhs")]
        for state, value in states:
            if state == "det" and value is INVALID_VALUE:
                return "det", INVALID_VALUE
        if all(state == "det" for state, _ in states):
            return "det", states[0][1] and states[1][1]
        return _OPEN

    if kind == "switch":
        state, value = _probe(ctx, node.inputs["condition"])
        if state == "open":
            return _OPEN
        if value is INVALID_VALUE:
            return "det", INVALID_VALUE
        branch = node.inputs["if_true"] if value else node.inputs["if_false"]
        return _probe(ctx, branch)

    raise AssertionError(kind)


def _attr_of(kind: str, obj: SceneObject):
    if kind == "getcolor":
        return obj.color
    if kind == "getshape":
        return obj.shape
    return obj.loc


def _scan(ctx: _Ctx, color, shape, relation, anchor, lo: int, hi: int):
    """Objects a select returns: all matches on the most recent matching
    frame inside the window."""
    for idx in range(hi, lo - 1, -1):
        found = match_in_frame(ctx.frames[idx], color, shape, relation, anchor)
        if found:
            return found
    return []


def _resolve_select_feeds(ctx: _Ctx, node, materialize: bool):
    """Resolve a select's color/shape/relation/anchor/time slots.

    Returns (color, shape, relation, anchor, time) with fed slots replaced by
    their upstream values.  When ``materialize`` is false, returns None if any
    feed is still open; when true, open feeds are given freshly drawn values
    and their subgraphs are built to produce them.  INVALID_VALUE signals a
    dead feed (absorbed invalid).
    """
    instance, node_id = ctx.instance, node.id
    out = {}
    for slot, domain in (("color", COLORS), ("shape", SHAPES)):
        if slot in node.inputs:
            state, value = _probe(ctx, node.inputs[slot])
            if state == "det":
                if value is INVALID_VALUE:
                    return INVALID_VALUE
                out[slot] = value
            elif not materialize:
                return None
            else:
                want = domain[ctx.rng.randrange(len(domain))]
                achieved = _backward(ctx, node.inputs[slot], want)
                if achieved is INVALID_VALUE:
                    return INVALID_VALUE
                out[slot] = achieved
        elif slot in node.params:
            out[slot] = instance.value(node_id, slot)
        else:
            out[slot] = None

    relation = instance.value(node_id, "relation") if "relation" in node.params else None
    anchor = None
    if "anchor" in node.inputs:
        state, value = _probe(ctx, node.inputs["anchor"])
        if state == "det":
            if value is INVALID_VALUE:
                return INVALID_VALUE
            anchor = value
        elif not materialize:
            return None
        else:
            want = Loc(ctx.rng.uniform(0.1, 0.9), ctx.rng.uniform(0.1, 0.9))
            achieved = _backward(ctx, node.inputs["anchor"], want)
            if achieved is INVALID_VALUE:
                return INVALID_VALUE
            anchor = achieved
    elif "anchor" in node.params:
        anchor = instance.value(node_id, "anchor")

    time_ref = instance.value(node_id, "time")
    return out["color"], out["shape"], relation, anchor, time_ref


# ---------------------------------------------------------------------------
# Backward pass proper

def _backward(ctx: _Ctx, node_id: str, target):
    """Build scene content so the node produces ``target`` at frame t (where
    possible) and return the value it will actually produce."""
    node = ctx.graph.node(node_id)
    kind = node.kind
    rng = ctx.rng

    if kind == "select":
        return _backward_select(ctx, node, target)

    if kind in ("getcolor", "getshape", "getloc"):
        state, value = _probe(ctx, node.inputs["objects"])
        if state == "det":
            if value is INVALID_VALUE or len(value) != 1:
                return INVALID_VALUE
            return _attr_of(kind, value[0])
        if target is None:
            if kind == "getcolor":
                target = COLORS[rng.randrange(len(COLORS))]
            elif kind == "getshape":
                target = SHAPES[rng.randrange(len(SHAPES))]
            else:
                target = Loc(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
        slot = {"getcolor": "color", "getshape": "shape", "getloc": "loc"}[kind]
        objs = _backward_select(ctx, ctx.graph.node(node.inputs["objects"]),
                                [{slot: target}])
        if objs is INVALID_VALUE or len(objs) != 1:
            return INVALID_VALUE
        return _attr_of(kind, objs[0])

    if kind == "exist":
        state, value = _probe(ctx, node.inputs["objects"])
        if state == "det":
            if value is INVALID_VALUE:
                return INVALID_VALUE
            return len(value) > 0
        flag = target if target is not None else rng.random() < 0.5
        sel = ctx.graph.node(node.inputs["objects"])
        objs = _backward_select(ctx, sel, [{}] if flag else [])
        if objs is INVALID_VALUE:
            return INVALID_VALUE
        return len(objs) > 0

    if kind == "equal":
        return _backward_equal(ctx, node, target)

    if kind == "and":
        return _backward_and(ctx, node, target)

    if kind == "switch":
        state, value = _probe(ctx, node.inputs["condition"])
        if state == "det":
            if value is INVALID_VALUE:
                return INVALID_VALUE
            cond = value
        else:
            cond = _backward(ctx, node.inputs["condition"], rng.random() < 0.5)
            if cond is INVALID_VALUE:
                return INVALID_VALUE
        branch = node.inputs["if_true"] if cond else node.inputs["if_false"]
        return _backward(ctx, branch, None)

    raise AssertionError(kind)


def _equal_sides(ctx: _Ctx, node):
    """Per side: ("lit", value) | ("det", value) | ("open", feeder id)."""
    sides = []
    for side in ("lhs", "rhs"):
        if side in node.params:
            sides.append(("lit", ctx.instance.value(node.id, side)))
        else:
            state, value = _probe(ctx, node.inputs[side])
            if state == "det":
                sides.append(("det", value))
            else:
                sides.append(("open", node.inputs[side]))
    return sides


def _backward_equal(ctx: _Ctx, node, target):
    rng = ctx.rng
    sides = _equal_sides(ctx, node)
    for state, value in sides:
        if state == "det" and value is INVALID_VALUE:
            return INVALID_VALUE
    open_idx = [i for i, (state, _) in enumerate(sides) if state == "open"]
    if not open_idx:
        return sides[0][1] == sides[1][1]

    domain = COLORS if equal_side_type(ctx.graph, node) == "color" else SHAPES
    same = target if target is not None else rng.random() < 0.5
    if len(open_idx) == 1:
        fixed_value = sides[1 - open_idx[0]][1]
        want = fixed_value if same else _draw_excluding(domain, fixed_value, rng)
        achieved = _backward(ctx, sides[open_idx[0]][1], want)
        if achieved is INVALID_VALUE:
            return INVALID_VALUE
        return achieved == fixed_value

    want1, want2 = draw_equal_pair(same, domain, rng)
    achieved1 = _backward(ctx, sides[0][1], want1)
    achieved2 = _backward(ctx, sides[1][1], want2)
    if achieved1 is INVALID_VALUE or achieved2 is INVALID_VALUE:
        return INVALID_VALUE
    return achieved1 == achieved2


def _backward_and(ctx: _Ctx, node, target):
    rng = ctx.rng
    states = {side: _probe(ctx, node.inputs[side]) for side in ("lhs", "rhs")}
    for state, value in states.values():
        if state == "det" and value is INVALID_VALUE:
            return INVALID_VALUE
    det = {s: v for s, (st, v) in states.items() if st == "det"}

    if len(det) == 2:
        return det["lhs"] and det["rhs"]

    flag = target if target is not None else rng.random() < 0.5
    if len(det) == 1:
        (det_side, det_value), = det.items()
        open_side = "rhs" if det_side == "lhs" else "lhs"
        if det_value:
            want = flag
        else:
            # Result is false regardless; keep the open side's marginal at
            # sqrt(0.5) so the two inputs stay independent overall.
            want = rng.random() < SQRT_HALF
        achieved = _backward(ctx, node.inputs[open_side], want)
        if achieved is INVALID_VALUE:
            return INVALID_VALUE
        return det_value and achieved

    want1, want2 = draw_and_inputs(flag, rng)
    achieved1 = _backward(ctx, node.inputs["lhs"], want1)
    achieved2 = _backward(ctx, node.inputs["rhs"], want2)
    if achieved1 is INVALID_VALUE or achieved2 is INVALID_VALUE:
        return INVALID_VALUE
    return achieved1 and achieved2


def _backward_select(ctx: _Ctx, node, target):
    """Ensure the select produces ``target`` (a list of object constraint
    dicts, or [] for an empty result) and return the objects it will yield."""
    rng = ctx.rng
    resolved = _resolve_select_feeds(ctx, node, materialize=True)
    if resolved is INVALID_VALUE:
        return INVALID_VALUE
    color, shape, relation, anchor, time_ref = resolved
    lo, hi = time_window(time_ref, ctx.t, len(ctx.frames), ctx.m_max)
    if hi < lo:
        return []

    current = _scan(ctx, color, shape, relation, anchor, lo, hi)

    if not target:  # empty result wanted
        if current:
            return current  # committed objects force a non-empty result
        dims = []
        if color is not None:
            dims.append("color")
        if shape is not None:
            dims.append("shape")
        if relation is not None:
            dims.append("range")
        if dims:
            _insert_near_miss(ctx, node, dims, color, shape, relation, anchor,
                              time_ref, lo, hi)
        return []

    assert len(target) == 1, "selects receive at most one output constraint"
    spec = target[0]
    want_color = spec.get("color", color)
    want_shape = spec.get("shape", shape)
    want_loc = spec.get("loc")
    if (color is not None and want_color != color) or \
            (shape is not None and want_shape != shape):
        return current  # constraint conflicts with the select's own filter

    if current:
        newest = current[0].frame
        for obj in current:
            if (want_color is None or obj.color == want_color) and \
                    (want_shape is None or obj.shape == want_shape) and \
                    (want_loc is None or obj.loc == want_loc):
                ctx.stats.search_hits += 1
                return current
        frame_idx = _draw_insert_frame(ctx, time_ref, lo, hi, newest_match=newest)
        if frame_idx is None:
            return current  # nothing can outrank the committed match
    else:
        frame_idx = _draw_insert_frame(ctx, time_ref, lo, hi, newest_match=None)

    _place(ctx, frame_idx, want_color, want_shape, want_loc,
           relation=relation, anchor=anchor, provenance="required")
    ctx.stats.placements.append((ctx.t, frame_idx))
    return _scan(ctx, color, shape, relation, anchor, lo, hi)


def _draw_insert_frame(ctx: _Ctx, time_ref: str, lo: int, hi: int,
                       newest_match: int | None) -> int | None:
    """Pick the frame for a new object: the current frame for "now", else a
    uniform M steps back, constrained to outrank any committed match."""
    if time_ref == "now":
        return ctx.t if newest_match is None else None
    min_frame = lo if newest_match is None else newest_match + 1
    if min_frame > hi:
        return None
    return ctx.rng.randint(min_frame, hi)


def _insert_near_miss(ctx: _Ctx, node, dims, color, shape, relation, anchor,
                      time_ref, lo, hi) -> None:
    """Place one object that misses the select's description in exactly one
    dimension, blocking object-counting shortcuts."""
    rng = ctx.rng
    flip = dims[rng.randrange(len(dims))]
    nm_color = color
    nm_shape = shape
    nm_relation = relation
    if flip == "color":
        nm_color = _draw_excluding(COLORS, color, rng)
    elif flip == "shape":
        nm_shape = _draw_excluding(SHAPES, shape, rng)
    else:
        nm_relation = opposite_relation(relation)
    frame_idx = ctx.t if time_ref == "now" else rng.randint(lo, hi)
    _place(ctx, frame_idx, nm_color, nm_shape, None,
           relation=nm_relation, anchor=anchor, provenance="near-miss")
    ctx.stats.near_misses.append(flip)


# ---------------------------------------------------------------------------
# Episode assembly

def generate_episode(instance: TaskInstance, config: GenerationConfig,
                     rng: random.Random, *, stats: GenStats | None = None,
                     seed_path: tuple[int, int] | None = None) -> Episode:
    """Generate one episode for a graph task.

    Frames are visited newest-first; after each frame the already-built
    frames are re-checked through the forward interpreter and the frame is
    redrawn if an insertion disturbed them.  Distractors are added last and
    deleted again if they change any target.  The recorded targets are the
    forward interpreter's values on the final scene.
    """
    stats = stats if stats is not None else GenStats()
    last_error: PlacementError | None = None
    for attempt in range(EPISODE_RETRIES):
        if attempt:
            stats.episode_retries += 1
        try:
            frames, intended = _build_frames(instance, config, rng, stats)
        except PlacementError as exc:
            last_error = exc
            continue
        _add_distractors_inplace(instance, config, frames, intended, rng, stats)
        targets = [evaluate(instance, frames, t, config.max_memory)
                   for t in range(config.frames)]
        return Episode(
            task_name=instance.task_name,
            instance=instance,
            instruction=render_instruction(instance),
            frames=frames,
            targets=targets,
            config=config,
            seed_path=seed_path or (config.seed, 0),
        )
    raise GenerationRetryExceeded(str(last_error))


def _build_frames(instance: TaskInstance, config: GenerationConfig,
                  rng: random.Random, stats: GenStats):
    frames = [Frame(i) for i in range(config.frames)]
    intended: dict[int, ResponseValue] = {}
    m_max = config.max_memory

    for t in range(config.frames - 1, -1, -1):
        committed = False
        for trial in range(FRAME_RETRIES):
            if trial:
                stats.frame_retries += 1
            snapshot = [len(f.objects) for f in frames]
            ctx = _Ctx(instance, frames, t, m_max, rng, stats)
            try:
                value = _backward(ctx, instance.graph.root, None)
            except PlacementError:
                for i, kept in enumerate(snapshot):
                    del frames[i].objects[kept:]
                continue
            intended[t] = to_response(value)
            touched = [i for i, f in enumerate(frames)
                       if len(f.objects) != snapshot[i]]
            check_hi = min(config.frames - 1,
                           (max(touched) + m_max) if touched else t)
            ok = True
            for t_check in range(t, check_hi + 1):
                if t_check not in intended:
                    continue
                actual = evaluate(instance, frames, t_check, m_max)
                if actual != intended[t_check]:
                    ok = False
                    break
            if ok:
                committed = True
                break
            for i, kept in enumerate(snapshot):
                del frames[i].objects[kept:]
        if not committed:
            # Keep one last attempt and record what the scene actually does;
            # a placement failure here aborts the whole episode attempt.
            ctx = _Ctx(instance, frames, t, m_max, rng, stats)
            _backward(ctx, instance.graph.root, None)
            for t_patch in range(t, config.frames):
                intended[t_patch] = evaluate(instance, frames, t_patch, m_max)
    return frames, intended


def _add_distractors_inplace(instance: TaskInstance, config: GenerationConfig,
                             frames: list[Frame], intended: dict,
                             rng: random.Random, stats: GenStats) -> None:
    if config.max_distractors < 1:
        return
    n_frames = config.frames
    for t in range(n_frames):
        count = rng.randint(1, config.max_distractors)
        for _ in range(count):
            stats.distractors_tried += 1
            color = COLORS[rng.randrange(len(COLORS))]
            shape = SHAPES[rng.randrange(len(SHAPES))]
            loc = None
            for _ in range(PLACE_RETRIES):
                candidate = Loc(rng.uniform(PLACE_LOW, PLACE_HIGH),
                                rng.uniform(PLACE_LOW, PLACE_HIGH))
                if _separated(candidate, frames[t]):
                    loc = candidate
                    break
            if loc is None:
                continue  # frame is full; the cap is an upper bound
            obj = SceneObject(color=color, shape=shape, loc=loc, frame=t,
                              provenance="distractor")
            frames[t].objects.append(obj)
            for t_check in range(n_frames):
                if evaluate(instance, frames, t_check, config.max_memory) \
                        != intended[t_check]:
                    frames[t].objects.pop()
                    stats.distractors_deleted += 1
                    break


def add_distractors(episode: Episode, instance: TaskInstance | None,
                    config: GenerationConfig, rng: random.Random,
                    *, stats: GenStats | None = None) -> Episode:
    """Add interference-checked distractors to an existing episode."""
    instance = instance or episode.instance
    stats = stats if stats is not None else GenStats()
    intended = dict(enumerate(episode.targets))
    _add_distractors_inplace(instance, config, episode.frames, intended,
                             rng, stats)
    episode.targets = [evaluate(instance, episode.frames, t, config.max_memory)
                       for t in range(config.frames)]
    return episode


# ---------------------------------------------------------------------------
# Verification

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    mismatches: tuple[tuple[int, ResponseValue, ResponseValue], ...] = ()

    def first_mismatch(self) -> str | None:
        if self.ok:
            return None
        t, expected, recorded = self.mismatches[0]
        return (f"frame {t}: recorded {recorded.to_obj()} but forward "
                f"evaluation gives {expected.to_obj()}")


def verify_episode(episode: Episode,
                   instance: TaskInstance | None = None) -> VerifyResult:
    """Re-run the forward interpreter and check every recorded target."""
    instance = instance or episode.instance
    mismatches = []
    for t in range(len(episode.frames)):
        expected = evaluate(instance, episode.frames, t,
                            episode.config.max_memory)
        if expected != episode.targets[t]:
            mismatches.append((t, expected, episode.targets[t]))
    return VerifyResult(ok=not mismatches, mismatches=tuple(mismatches))


def memory_durations(episode: Episode) -> list[int]:
    """Query-to-placement gaps for every past-time select lookup."""
    instance = episode.instance
    out = []
    for t in range(len(episode.frames)):
        trace: dict[str, int] = {}
        evaluate(instance, episode.frames, t, episode.config.max_memory,
                 select_trace=trace)
        out.extend(t - frame_idx for frame_idx in trace.values())
    return out
