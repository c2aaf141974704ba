import random

import pytest
from hypothesis import given, settings, strategies as st

from cogkit.operators import evaluate, instantiate
from cogkit.taskspec import build_graph
from cogkit.types import (
    COLORS,
    Frame,
    INVALID,
    Loc,
    ResponseValue,
    SHAPES,
    SceneObject,
)


def _frames(*specs):
    """specs: per frame, a list of (color, shape, x, y) tuples."""
    frames = []
    for index, objs in enumerate(specs):
        frame = Frame(index)
        frame.objects = [SceneObject(c, s, Loc(x, y), index)
                         for c, s, x, y in objs]
        frames.append(frame)
    return frames


def _instance(text, seed=0):
    return instantiate(build_graph(text), random.Random(seed))


EXIST_RED_NOW = (
    "task T\n"
    "node sel select color=red time=now\n"
    "node ex exist objects=@sel\n"
    "root ex\n")


def test_exist_now_direct():
    inst = _instance(EXIST_RED_NOW)
    frames = _frames([("red", "circle", 0.5, 0.5)], [])
    assert evaluate(inst, frames, 0, 3) == ResponseValue.boolean(True)
    assert evaluate(inst, frames, 1, 3) == ResponseValue.boolean(False)


def test_get_on_two_matches_is_invalid():
    inst = _instance(
        "task T\n"
        "node sel select shape=circle time=now\n"
        "node col getcolor objects=@sel\n"
        "root col\n")
    frames = _frames([("red", "circle", 0.2, 0.2), ("blue", "circle", 0.7, 0.7)])
    assert evaluate(inst, frames, 0, 3) == INVALID


def test_get_on_empty_is_invalid():
    inst = _instance(
        "task T\n"
        "node sel select shape=circle time=now\n"
        "node col getcolor objects=@sel\n"
        "root col\n")
    assert evaluate(inst, _frames([]), 0, 3) == INVALID


def test_last_excludes_current_frame_latest_includes():
    history = _frames(
        [("red", "b", 0.2, 0.2)],
        [],
        [("blue", "b", 0.8, 0.8)],
    )
    last = _instance(
        "task T\nnode sel select shape=b time=last\n"
        "node go getloc objects=@sel\nroot go\n")
    latest = _instance(
        "task T\nnode sel select shape=b time=latest\n"
        "node go getloc objects=@sel\nroot go\n")
    assert evaluate(last, history, 2, 3) == ResponseValue.point(0.2, 0.2)
    assert evaluate(latest, history, 2, 3) == ResponseValue.point(0.8, 0.8)


def test_last_at_frame_zero_is_empty():
    inst = _instance(EXIST_RED_NOW.replace("time=now", "time=last"))
    frames = _frames([("red", "circle", 0.5, 0.5)])
    assert evaluate(inst, frames, 0, 3) == ResponseValue.boolean(False)


def test_memory_window_bounds_lookback():
    inst = _instance(EXIST_RED_NOW.replace("time=now", "time=latest"))
    frames = _frames([("red", "circle", 0.5, 0.5)], [], [], [], [])
    assert evaluate(inst, frames, 3, 3) == ResponseValue.boolean(True)
    assert evaluate(inst, frames, 4, 3) == ResponseValue.boolean(False)
    assert evaluate(inst, frames, 4, None) == ResponseValue.boolean(True)


def test_most_recent_matching_frame_rule():
    # Two matches in the most recent matching frame make Get* invalid.
    inst = _instance(
        "task T\n"
        "node sel select color=red time=latest\n"
        "node shp getshape objects=@sel\n"
        "root shp\n")
    frames = _frames(
        [("red", "circle", 0.2, 0.2)],
        [("red", "square", 0.3, 0.3), ("red", "cross", 0.7, 0.7)],
        [],
    )
    assert evaluate(inst, frames, 2, 3) == INVALID
    # With a unique match on a more recent frame, that frame wins.
    frames2 = _frames(
        [("red", "circle", 0.2, 0.2)],
        [("red", "square", 0.3, 0.3)],
        [],
    )
    assert evaluate(inst, frames2, 2, 3) == ResponseValue.verbal("square")


def test_spatial_select():
    inst = _instance(
        "task T\n"
        "node sel select relation=left-of anchor=0.5,0.5 time=now\n"
        "node ex exist objects=@sel\n"
        "root ex\n")
    assert evaluate(inst, _frames([("red", "b", 0.4, 0.9)]), 0, 3) \
        == ResponseValue.boolean(True)
    assert evaluate(inst, _frames([("red", "b", 0.6, 0.9)]), 0, 3) \
        == ResponseValue.boolean(False)


def test_equal_and_and():
    inst = _instance(
        "task T\n"
        "node s1 select shape=circle time=now\n"
        "node c1 getcolor objects=@s1\n"
        "node eq equal lhs=@c1 rhs=red\n"
        "root eq\n")
    assert evaluate(inst, _frames([("red", "circle", 0.5, 0.5)]), 0, 3) \
        == ResponseValue.boolean(True)
    assert evaluate(inst, _frames([("blue", "circle", 0.5, 0.5)]), 0, 3) \
        == ResponseValue.boolean(False)


def test_invalid_propagates_to_root():
    inst = _instance(
        "task T\n"
        "node cue select shape=circle time=now\n"
        "node col getcolor objects=@cue\n"
        "node sel select color=@col time=now\n"
        "node ex exist objects=@sel\n"
        "root ex\n")
    # two circles -> getcolor invalid -> fed select invalid -> exist invalid
    frames = _frames([("red", "circle", 0.2, 0.2), ("blue", "circle", 0.7, 0.7)])
    assert evaluate(inst, frames, 0, 3) == INVALID


def test_and_absorbs_invalid_even_when_other_side_false():
    inst = _instance(
        "task T\n"
        "node s1 select shape=circle time=now\n"
        "node c1 getcolor objects=@s1\n"
        "node eq equal lhs=@c1 rhs=red\n"
        "node s2 select color=blue time=now\n"
        "node e2 exist objects=@s2\n"
        "node both and lhs=@eq rhs=@e2\n"
        "root both\n")
    frames = _frames([])  # getcolor(empty) invalid; exist false
    assert evaluate(inst, frames, 0, 3) == INVALID


def test_switch_laziness():
    inst = _instance(
        "task T\n"
        "node s1 select color=red time=now\n"
        "node e1 exist objects=@s1\n"
        "node s2 select color=blue time=now\n"
        "node g2 getloc objects=@s2\n"
        "node s3 select color=green time=now\n"
        "node g3 getloc objects=@s3\n"
        "node sw switch condition=@e1 if_true=@g2 if_false=@g3\n"
        "root sw\n")
    frames = _frames([("red", "b", 0.2, 0.2), ("blue", "b", 0.7, 0.7),
                      ("green", "b", 0.5, 0.9)])
    visited = []
    result = evaluate(inst, frames, 0, 3, on_visit=visited.append)
    assert result == ResponseValue.point(0.7, 0.7)
    assert "g3" not in visited and "s3" not in visited


def test_switch_invalid_condition():
    inst = _instance(
        "task T\n"
        "node s1 select shape=circle time=now\n"
        "node c1 getcolor objects=@s1\n"
        "node eq equal lhs=@c1 rhs=red\n"
        "node s2 select color=blue time=now\n"
        "node g2 getloc objects=@s2\n"
        "node s3 select color=green time=now\n"
        "node g3 getloc objects=@s3\n"
        "node sw switch condition=@eq if_true=@g2 if_false=@g3\n"
        "root sw\n")
    assert evaluate(inst, _frames([]), 0, 3) == INVALID


class _GuardedFrames(list):
    """History proxy recording which frame indices the interpreter reads."""

    def __init__(self, frames):
        super().__init__(frames)
        self.accessed = set()

    def __getitem__(self, index):
        if isinstance(index, int):
            self.accessed.add(index)
        return super().__getitem__(index)


def test_interpreter_never_reads_outside_window():
    inst = _instance(EXIST_RED_NOW.replace("time=now", "time=latest"))
    raw = _frames([], [], [], [], [], [])
    m_max = 2
    for t in range(6):
        guarded = _GuardedFrames(raw)
        evaluate(inst, guarded, t, m_max)
        assert all(t - m_max <= idx <= t for idx in guarded.accessed), \
            (t, guarded.accessed)


@st.composite
def _histories(draw):
    n_frames = draw(st.integers(min_value=1, max_value=5))
    specs = []
    for _ in range(n_frames):
        n_objs = draw(st.integers(min_value=0, max_value=3))
        objs = []
        for _ in range(n_objs):
            objs.append((
                draw(st.sampled_from(COLORS[:5])),
                draw(st.sampled_from(SHAPES[:5])),
                draw(st.floats(min_value=0.05, max_value=0.95)),
                draw(st.floats(min_value=0.05, max_value=0.95)),
            ))
        specs.append(objs)
    return _frames(*specs)


@settings(max_examples=60, deadline=None)
@given(
    history=_histories(),
    color=st.sampled_from(COLORS[:5]),
    shape=st.sampled_from(SHAPES[:5]),
    time_ref=st.sampled_from(["now", "last", "latest"]),
    wrap=st.sampled_from(["exist", "getcolor", "getshape", "getloc"]),
)
def test_invalid_absorption_property(history, color, shape, time_ref, wrap):
    """Feeding an invalid attribute into a select poisons every downstream
    operator all the way to the root."""
    feeder = (
        "node cue select color=red time=now\n"
        "node fed getcolor objects=@cue\n")
    if wrap == "exist":
        tail = "node ex exist objects=@sel\nroot ex\n"
    else:
        tail = f"node out {wrap} objects=@sel\nroot out\n"
    inst = _instance(
        "task T\n" + feeder +
        f"node sel select color=@fed shape={shape} time={time_ref}\n" + tail)
    # Make the feeder invalid: two red objects on every frame queried "now".
    for frame in history:
        frame.objects = [o for o in frame.objects if o.color != "red"]
        frame.objects.append(SceneObject("red", "b", Loc(0.1, 0.1), frame.index))
        frame.objects.append(SceneObject("red", "c", Loc(0.9, 0.9), frame.index))
    for t in range(len(history)):
        assert evaluate(inst, history, t, 3) == INVALID


@settings(max_examples=60, deadline=None)
@given(
    history=_histories(),
    color=st.sampled_from(COLORS[:5]),
    shape=st.sampled_from(SHAPES[:5]),
    anchor_x=st.floats(min_value=0.2, max_value=0.8),
)
def test_select_monotonicity_property(history, color, shape, anchor_x):
    """Adding a parameter (color, shape or spatial range) to a select never
    enlarges the matched set on any fixed frame.

    The property is stated per frame: with a multi-frame window the
    most-recent-matching-frame rule may pick an older, larger frame once a
    constraint rules the newest one out.
    """
    from cogkit.operators import match_in_frame
    from cogkit.types import Loc

    anchor = Loc(anchor_x, 0.5)
    for frame in history:
        plain = {id(o) for o in match_in_frame(frame, None, None, None, None)}
        with_color = {id(o) for o in
                      match_in_frame(frame, color, None, None, None)}
        with_both = {id(o) for o in
                     match_in_frame(frame, color, shape, None, None)}
        with_range = {id(o) for o in
                      match_in_frame(frame, color, shape, "left-of", anchor)}
        assert with_range <= with_both <= with_color <= plain


def test_determinism_of_evaluate():
    inst = _instance(EXIST_RED_NOW)
    frames = _frames([("red", "circle", 0.5, 0.5)], [("blue", "b", 0.1, 0.1)])
    first = [evaluate(inst, frames, t, 3) for t in range(2)]
    second = [evaluate(inst, frames, t, 3) for t in range(2)]
    assert first == second
