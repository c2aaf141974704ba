"""Core value types shared across the task DSL, generator, renderer and harness.

Everything here is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

# ---------------------------------------------------------------------------
# Attribute vocabularies

COLORS: tuple[str, ...] = (
    "red", "green", "blue", "yellow", "purple", "orange", "cyan",
    "magenta", "lime", "pink", "teal", "lavender", "brown", "beige",
    "maroon", "mint", "olive", "coral", "navy",
)

GEOMETRIC_SHAPES: tuple[str, ...] = (
    "circle", "square", "triangle", "cross", "vbar", "hbar",
)

LETTER_SHAPES: tuple[str, ...] = tuple("abcdefghijklmnopqrstuvwxyz")

SHAPES: tuple[str, ...] = GEOMETRIC_SHAPES + LETTER_SHAPES

TIME_REFS: tuple[str, ...] = ("now", "last", "latest")

SPATIAL_RELATIONS: tuple[str, ...] = ("left-of", "right-of", "above", "below")

#: Closed verbal vocabulary: every verbal response is one of these words.
VOCABULARY: tuple[str, ...] = COLORS + SHAPES + ("true", "false", "invalid")


class Loc(NamedTuple):
    """A point in the unit square; (0, 0) is the top-left canvas corner."""

    x: float
    y: float


def in_half_plane(loc: Loc, relation: str, anchor: Loc) -> bool:
    """Strict half-plane membership on the relevant coordinate."""
    if relation == "left-of":
        return loc.x < anchor.x
    if relation == "right-of":
        return loc.x > anchor.x
    if relation == "above":
        return loc.y < anchor.y
    if relation == "below":
        return loc.y > anchor.y
    raise ValueError(f"unknown spatial relation {relation!r}")


def opposite_relation(relation: str) -> str:
    return {
        "left-of": "right-of",
        "right-of": "left-of",
        "above": "below",
        "below": "above",
    }[relation]


# ---------------------------------------------------------------------------
# Scene content

@dataclass(frozen=True, slots=True)
class SceneObject:
    """One rendered object: a colored shape at a location on one frame."""

    color: str
    shape: str
    loc: Loc
    frame: int
    provenance: str = "required"  # required | near-miss | distractor

    def replace_loc(self, loc: Loc) -> "SceneObject":
        return SceneObject(self.color, self.shape, loc, self.frame, self.provenance)


@dataclass(slots=True)
class Frame:
    index: int
    objects: list[SceneObject] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Responses

@dataclass(frozen=True, slots=True)
class ResponseValue:
    """A task response: a verbal word, a pointing location, a boolean, or invalid.

    Booleans map to the verbal words "true"/"false"; invalid means the frame
    carries no scoreable target.
    """

    kind: str  # verbal | point | bool | invalid
    word: str | None = None
    loc: Loc | None = None
    flag: bool | None = None

    @staticmethod
    def verbal(word: str) -> "ResponseValue":
        if word not in VOCABULARY:
            raise ValueError(f"{word!r} is not in the response vocabulary")
        return ResponseValue("verbal", word=word)

    @staticmethod
    def point(x: float, y: float) -> "ResponseValue":
        return ResponseValue("point", loc=Loc(float(x), float(y)))

    @staticmethod
    def boolean(flag: bool) -> "ResponseValue":
        return ResponseValue("bool", flag=bool(flag))

    @property
    def is_invalid(self) -> bool:
        return self.kind == "invalid"

    def as_word(self) -> str | None:
        """Canonical verbal form, or None for pointing responses."""
        if self.kind == "verbal":
            return self.word
        if self.kind == "bool":
            return "true" if self.flag else "false"
        if self.kind == "invalid":
            return "invalid"
        return None

    def to_obj(self) -> dict:
        if self.kind == "point":
            return {"kind": "point", "x": self.loc.x, "y": self.loc.y}
        if self.kind == "invalid":
            return {"kind": "invalid"}
        return {"kind": "verbal", "word": self.as_word()}

    @staticmethod
    def from_obj(obj: dict) -> "ResponseValue":
        kind = obj.get("kind")
        if kind == "point":
            return ResponseValue.point(obj["x"], obj["y"])
        if kind == "invalid":
            return INVALID
        if kind == "verbal":
            word = obj["word"]
            if word == "true":
                return ResponseValue.boolean(True)
            if word == "false":
                return ResponseValue.boolean(False)
            return ResponseValue.verbal(word)
        raise ValueError(f"bad response object: {obj!r}")


INVALID = ResponseValue("invalid")


# ---------------------------------------------------------------------------
# Generation configuration and episodes

@dataclass(frozen=True, slots=True)
class GenerationConfig:
    """Episode-shape parameters: frame count, memory window, distractor cap."""

    frames: int = 4
    max_memory: int = 3
    max_distractors: int = 1
    canvas: int = 112
    seed: int = 0

    def __post_init__(self):
        if self.frames < 1:
            raise ValueError("frames must be >= 1")
        if self.max_memory < 0:
            raise ValueError("max_memory must be >= 0")
        if self.max_distractors < 0:
            raise ValueError("max_distractors must be >= 0")
        if self.canvas < 16:
            raise ValueError("canvas must be >= 16 pixels")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @staticmethod
    def canonical(seed: int = 0) -> "GenerationConfig":
        return GenerationConfig(frames=4, max_memory=3, max_distractors=1, seed=seed)

    @staticmethod
    def hard(seed: int = 0) -> "GenerationConfig":
        return GenerationConfig(frames=8, max_memory=7, max_distractors=10, seed=seed)

    def to_obj(self) -> dict:
        return {
            "frames": self.frames,
            "max_memory": self.max_memory,
            "max_distractors": self.max_distractors,
            "canvas": self.canvas,
            "seed": self.seed,
        }

    @staticmethod
    def from_obj(obj: dict) -> "GenerationConfig":
        return GenerationConfig(
            frames=obj["frames"],
            max_memory=obj["max_memory"],
            max_distractors=obj["max_distractors"],
            canvas=obj.get("canvas", 112),
            seed=obj.get("seed", 0),
        )


@dataclass(slots=True)
class Episode:
    """One generated trial: instruction, frame sequence and per-frame targets.

    ``targets[t]`` always equals the forward interpreter's value on
    ``frames`` at ``t`` under the episode's config; ``verify_episode``
    re-checks that invariant.
    """

    task_name: str
    instance: "object"  # TaskInstance; untyped here to avoid an import cycle
    instruction: str
    frames: list[Frame]
    targets: list[ResponseValue]
    config: GenerationConfig
    seed_path: tuple[int, int]  # (dataset seed, episode index)
