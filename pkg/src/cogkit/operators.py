"""Task graphs: operator nodes, validation, instantiation, instruction
rendering and the forward interpreter.

A task graph is a rooted DAG over eight operator kinds.  ``Select`` filters
scene objects by color, shape, a spatial half-plane and a time reference;
``get*`` project attributes of a unique selected object; ``exist``,
``equal`` and ``and_`` produce booleans; ``switch`` picks one of two branch
subgraphs based on a boolean condition.  Attribute slots may be fixed,
free (bound per instance) or fed by an upstream operator's output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ArityError, CatalogError, CycleError
from .types import (
    COLORS,
    INVALID,
    SHAPES,
    SPATIAL_RELATIONS,
    TIME_REFS,
    Frame,
    Loc,
    ResponseValue,
    in_half_plane,
)

OPERATOR_KINDS = (
    "select", "getcolor", "getshape", "getloc", "exist", "equal", "and", "switch",
)

#: Node kinds whose output can stand as a task response.
RESPONSE_KINDS = ("getcolor", "getshape", "getloc", "exist", "equal", "and", "switch")

BOOLEAN_KINDS = ("exist", "equal", "and")

MIN_NODES = 2
MAX_NODES = 11

ANCHOR_LOW, ANCHOR_HIGH = 0.1, 0.9

_REL_WORDS = {
    "left-of": "left of",
    "right-of": "right of",
    "above": "above",
    "below": "below",
}

# Which upstream kind may feed each input port.
_PORT_SOURCES = {
    ("select", "color"): ("getcolor",),
    ("select", "shape"): ("getshape",),
    ("select", "anchor"): ("getloc",),
    ("getcolor", "objects"): ("select",),
    ("getshape", "objects"): ("select",),
    ("getloc", "objects"): ("select",),
    ("exist", "objects"): ("select",),
    ("equal", "lhs"): ("getcolor", "getshape"),
    ("equal", "rhs"): ("getcolor", "getshape"),
    ("and", "lhs"): BOOLEAN_KINDS,
    ("and", "rhs"): BOOLEAN_KINDS,
    ("switch", "condition"): BOOLEAN_KINDS,
    ("switch", "if_true"): RESPONSE_KINDS[:-1],  # no nested switch
    ("switch", "if_false"): RESPONSE_KINDS[:-1],
}


@dataclass(frozen=True)
class Param:
    """A literal attribute slot: either fixed to a value or free over a domain.

    Free domains: a tuple of words for colors/shapes/times/relations, or the
    sentinel "box" for a continuous spatial anchor in [0.1, 0.9]^2.
    """

    fixed: object = None
    domain: tuple | str | None = None

    @property
    def is_free(self) -> bool:
        return self.domain is not None


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    params: dict[str, Param] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)  # port -> node id


@dataclass(frozen=True)
class TaskGraph:
    name: str
    nodes: dict[str, Node]          # insertion-ordered
    root: str
    order: tuple[str, ...]          # topological order, upstream first

    def node(self, node_id: str) -> Node:
        return self.nodes[node_id]

    @property
    def root_node(self) -> Node:
        return self.nodes[self.root]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class TaskInstance:
    """A task graph with every free slot bound to a concrete value."""

    graph: TaskGraph
    bindings: dict[tuple[str, str], object]
    task_name: str

    def value(self, node_id: str, slot: str) -> object:
        param = self.graph.node(node_id).params[slot]
        if param.is_free:
            return self.bindings[(node_id, slot)]
        return param.fixed


def select_variant(node: Node) -> str:
    """Classify a select by which of color/shape it constrains."""
    has_color = "color" in node.params or "color" in node.inputs
    has_shape = "shape" in node.params or "shape" in node.inputs
    if has_color and has_shape:
        return "both"
    if has_color:
        return "color"
    if has_shape:
        return "shape"
    return "plain"


# ---------------------------------------------------------------------------
# Graph construction and validation

def make_graph(name: str, nodes: list[Node], root: str) -> TaskGraph:
    """Validate operator nodes and assemble a task graph.

    Raises CatalogError for unknown kinds or a bad node count, CycleError
    for cycles, ArityError for port/type violations.
    """
    if not MIN_NODES <= len(nodes) <= MAX_NODES:
        raise CatalogError(
            f"{name}: node count {len(nodes)} outside [{MIN_NODES}, {MAX_NODES}]"
        )
    by_id: dict[str, Node] = {}
    for node in nodes:
        if node.kind not in OPERATOR_KINDS:
            raise CatalogError(f"{name}: unknown operator kind {node.kind!r}")
        if node.id in by_id:
            raise CatalogError(f"{name}: duplicate node id {node.id!r}")
        by_id[node.id] = node

    if sum(1 for n in nodes if n.kind == "switch") > 1:
        raise CatalogError(f"{name}: at most one switch operator is allowed")
    if root not in by_id:
        raise CatalogError(f"{name}: root {root!r} is not a node")
    if by_id[root].kind not in RESPONSE_KINDS:
        raise ArityError(f"{name}: root must produce a response, not an object set")

    for node in nodes:
        _check_node(name, node, by_id)

    order = _topo_order(name, by_id)
    _check_connected(name, by_id, root)
    return TaskGraph(name=name, nodes=by_id, root=root, order=order)


def _check_node(name: str, node: Node, by_id: dict[str, Node]) -> None:
    for port, src in node.inputs.items():
        allowed = _PORT_SOURCES.get((node.kind, port))
        if allowed is None:
            raise ArityError(f"{name}: {node.kind} has no input port {port!r}")
        if src not in by_id:
            raise ArityError(f"{name}: {node.id} references missing node {src!r}")
        if by_id[src].kind not in allowed:
            raise ArityError(
                f"{name}: port {node.id}.{port} cannot take a {by_id[src].kind}"
            )

    kind = node.kind
    if kind == "select":
        _check_select(name, node)
    elif kind in ("getcolor", "getshape", "getloc", "exist"):
        if set(node.inputs) != {"objects"} or node.params:
            raise ArityError(f"{name}: {kind} takes exactly one object-set input")
    elif kind == "equal":
        _check_equal(name, node, by_id)
    elif kind == "and":
        if set(node.inputs) != {"lhs", "rhs"} or node.params:
            raise ArityError(f"{name}: and takes exactly two boolean inputs")
    elif kind == "switch":
        if set(node.inputs) != {"condition", "if_true", "if_false"} or node.params:
            raise ArityError(f"{name}: switch takes condition and two branches")


def _check_select(name: str, node: Node) -> None:
    for slot in node.params:
        if slot not in ("color", "shape", "relation", "anchor", "time"):
            raise ArityError(f"{name}: select has no slot {slot!r}")
    for slot in ("color", "shape", "anchor"):
        if slot in node.params and slot in node.inputs:
            raise ArityError(f"{name}: select slot {slot!r} is both literal and fed")
    if "time" not in node.params:
        raise ArityError(f"{name}: select requires a time reference")
    has_anchor = "anchor" in node.params or "anchor" in node.inputs
    if has_anchor != ("relation" in node.params):
        raise ArityError(f"{name}: spatial range needs both relation and anchor")
    _check_domains(name, node)


def _check_domains(name: str, node: Node) -> None:
    spaces = {"color": COLORS, "shape": SHAPES, "time": TIME_REFS,
              "relation": SPATIAL_RELATIONS}
    for slot, param in node.params.items():
        if slot == "anchor":
            if param.is_free:
                if param.domain != "box":
                    raise ArityError(f"{name}: free anchor domain must be 'box'")
            elif not (isinstance(param.fixed, Loc)):
                raise ArityError(f"{name}: fixed anchor must be a location")
            continue
        space = spaces.get(slot)
        if space is None:
            continue
        if param.is_free:
            if not param.domain or any(v not in space for v in param.domain):
                raise ArityError(f"{name}: bad free domain for {node.id}.{slot}")
        elif param.fixed not in space:
            raise ArityError(f"{name}: bad fixed value {param.fixed!r} for {slot}")


def _check_equal(name: str, node: Node, by_id: dict[str, Node]) -> None:
    side_types = []
    for side in ("lhs", "rhs"):
        fed = side in node.inputs
        lit = side in node.params
        if fed == lit:
            raise ArityError(f"{name}: equal side {side} must be fed or literal")
        if fed:
            side_types.append("color" if by_id[node.inputs[side]].kind == "getcolor"
                              else "shape")
        else:
            param = node.params[side]
            values = param.domain if param.is_free else (param.fixed,)
            if all(v in COLORS for v in values):
                side_types.append("color")
            elif all(v in SHAPES for v in values):
                side_types.append("shape")
            else:
                raise ArityError(f"{name}: equal literal must be a color or shape")
    extra = set(node.params) - {"lhs", "rhs"}
    if extra:
        raise ArityError(f"{name}: equal has no slots {sorted(extra)}")
    if side_types[0] != side_types[1]:
        raise ArityError(f"{name}: equal compares attributes of different kinds")


def equal_side_type(graph: TaskGraph, node: Node) -> str:
    """Attribute kind ("color"/"shape") compared by an equal node."""
    if "lhs" in node.inputs:
        return "color" if graph.node(node.inputs["lhs"]).kind == "getcolor" else "shape"
    param = node.params["lhs"]
    values = param.domain if param.is_free else (param.fixed,)
    return "color" if values[0] in COLORS else "shape"


def _topo_order(name: str, by_id: dict[str, Node]) -> tuple[str, ...]:
    state: dict[str, int] = {}
    order: list[str] = []

    def visit(node_id: str) -> None:
        mark = state.get(node_id, 0)
        if mark == 1:
            raise CycleError(f"{name}: cycle through {node_id!r}")
        if mark == 2:
            return
        state[node_id] = 1
        for src in by_id[node_id].inputs.values():
            visit(src)
        state[node_id] = 2
        order.append(node_id)

    for node_id in by_id:
        visit(node_id)
    return tuple(order)


def _check_connected(name: str, by_id: dict[str, Node], root: str) -> None:
    seen: set[str] = set()
    stack = [root]
    while stack:
        node_id = stack.pop()
        if node_id in seen:
            continue
        seen.add(node_id)
        stack.extend(by_id[node_id].inputs.values())
    orphans = set(by_id) - seen
    if orphans:
        raise ArityError(f"{name}: nodes unreachable from root: {sorted(orphans)}")


# ---------------------------------------------------------------------------
# Instantiation

_SLOT_ORDER = ("color", "shape", "relation", "anchor", "time", "lhs", "rhs")


def free_slots(graph: TaskGraph) -> list[tuple[str, str, Param]]:
    """Free slots in deterministic (node declaration, slot) order."""
    out = []
    for node_id in graph.nodes:
        node = graph.nodes[node_id]
        for slot in _SLOT_ORDER:
            param = node.params.get(slot)
            if param is not None and param.is_free:
                out.append((node_id, slot, param))
    return out


def draw_binding(param: Param, rng: random.Random) -> object:
    if param.domain == "box":
        return Loc(rng.uniform(ANCHOR_LOW, ANCHOR_HIGH),
                   rng.uniform(ANCHOR_LOW, ANCHOR_HIGH))
    return param.domain[rng.randrange(len(param.domain))]


def instantiate(graph: TaskGraph, rng: random.Random,
                task_name: str | None = None) -> TaskInstance:
    """Bind every free slot by a uniform draw over its attribute space."""
    bindings = {(node_id, slot): draw_binding(param, rng)
                for node_id, slot, param in free_slots(graph)}
    return TaskInstance(graph=graph, bindings=bindings,
                        task_name=task_name or graph.name)


# ---------------------------------------------------------------------------
# Instruction rendering

def render_instruction(instance: TaskInstance) -> str:
    """Assemble the instruction string by root-first template substitution."""
    graph = instance.graph

    def frag(node_id: str) -> str:
        node = graph.node(node_id)
        kind = node.kind
        if kind == "select":
            parts = [str(instance.value(node_id, "time"))]
            has_attr = False
            if "color" in node.inputs:
                parts.append(frag(node.inputs["color"]))
                has_attr = True
            elif "color" in node.params:
                parts.append(str(instance.value(node_id, "color")))
                has_attr = True
            if "shape" in node.inputs:
                parts.append(frag(node.inputs["shape"]))
                has_attr = True
            elif "shape" in node.params:
                parts.append(str(instance.value(node_id, "shape")))
                has_attr = True
            if not has_attr:
                parts.append("object")
            if "relation" in node.params:
                rel = _REL_WORDS[str(instance.value(node_id, "relation"))]
                if "anchor" in node.inputs:
                    anchor_text = frag(node.inputs["anchor"])
                else:
                    loc = instance.value(node_id, "anchor")
                    anchor_text = f"({loc.x:.2f}, {loc.y:.2f})"
                parts.append(f"{rel} {anchor_text}")
            return " ".join(parts)
        if kind == "getcolor":
            return f"color of {frag(node.inputs['objects'])}"
        if kind == "getshape":
            return f"shape of {frag(node.inputs['objects'])}"
        if kind == "getloc":
            return f"point to {frag(node.inputs['objects'])}"
        if kind == "exist":
            return f"exist {frag(node.inputs['objects'])}"
        if kind == "equal":
            sides = []
            for side in ("lhs", "rhs"):
                if side in node.inputs:
                    sides.append(frag(node.inputs[side]))
                else:
                    sides.append(str(instance.value(node_id, side)))
            return f"{sides[0]} equal {sides[1]}"
        if kind == "and":
            return f"{frag(node.inputs['lhs'])} and {frag(node.inputs['rhs'])}"
        if kind == "switch":
            return (f"if {frag(node.inputs['condition'])} "
                    f"then {frag(node.inputs['if_true'])} "
                    f"else {frag(node.inputs['if_false'])}")
        raise AssertionError(kind)

    return frag(graph.root)


# ---------------------------------------------------------------------------
# Forward interpreter

class _Invalid:
    """Interpreter-internal invalid sentinel; absorbs through every operator."""

    __slots__ = ()

    def __repr__(self):
        return "<invalid>"


INVALID_VALUE = _Invalid()


def time_window(time_ref: str, t: int, n_frames: int, m_max: int | None):
    """Frame index range (lo, hi) scanned by a select, newest first; hi < lo
    means the window is empty."""
    low_bound = 0 if m_max is None else max(0, t - m_max)
    if time_ref == "now":
        return t, t
    if time_ref == "latest":
        return low_bound, t
    if time_ref == "last":
        return low_bound, t - 1
    raise ValueError(f"unknown time reference {time_ref!r}")


def match_in_frame(frame: Frame, color, shape, relation, anchor) -> list:
    out = []
    for obj in frame.objects:
        if color is not None and obj.color != color:
            continue
        if shape is not None and obj.shape != shape:
            continue
        if relation is not None and not in_half_plane(obj.loc, relation, anchor):
            continue
        out.append(obj)
    return out


def evaluate(instance: TaskInstance, frames: list[Frame], t: int,
             m_max: int | None = None, on_visit=None,
             select_trace: dict | None = None) -> ResponseValue:
    """Run the task forward on a frame history and return the response at t.

    ``m_max`` bounds how far back "last"/"latest" may look (None: to frame 0).
    ``on_visit`` gets each evaluated node id (for laziness instrumentation);
    ``select_trace`` collects {select node id: serving frame index}.
    """
    if not 0 <= t < len(frames):
        raise IndexError(f"frame index {t} outside history of {len(frames)}")
    graph = instance.graph
    memo: dict[str, object] = {}

    def ev(node_id: str):
        if node_id in memo:
            return memo[node_id]
        if on_visit is not None:
            on_visit(node_id)
        node = graph.node(node_id)
        value = _ev_node(node)
        memo[node_id] = value
        return value

    def resolve_slot(node: Node, slot: str):
        """Literal/bound value, fed value, or None when the slot is absent.

        Returns INVALID_VALUE when a feeding subgraph is invalid.
        """
        if slot in node.inputs:
            return ev(node.inputs[slot])
        if slot in node.params:
            return instance.value(node.id, slot)
        return None

    def _ev_node(node: Node):
        kind = node.kind
        if kind == "select":
            color = resolve_slot(node, "color")
            shape = resolve_slot(node, "shape")
            anchor = resolve_slot(node, "anchor")
            if color is INVALID_VALUE or shape is INVALID_VALUE \
                    or anchor is INVALID_VALUE:
                return INVALID_VALUE
            relation = resolve_slot(node, "relation")
            time_ref = instance.value(node.id, "time")
            lo, hi = time_window(time_ref, t, len(frames), m_max)
            if time_ref == "now":
                if hi < lo:
                    return []
                return match_in_frame(frames[t], color, shape, relation, anchor)
            # Most recent frame in the window that contains any match wins.
            for idx in range(hi, lo - 1, -1):
                found = match_in_frame(frames[idx], color, shape, relation, anchor)
                if found:
                    if select_trace is not None:
                        select_trace[node.id] = idx
                    return found
            return []
        if kind in ("getcolor", "getshape", "getloc"):
            objs = ev(node.inputs["objects"])
            if objs is INVALID_VALUE or len(objs) != 1:
                return INVALID_VALUE
            obj = objs[0]
            if kind == "getcolor":
                return obj.color
            if kind == "getshape":
                return obj.shape
            return obj.loc
        if kind == "exist":
            objs = ev(node.inputs["objects"])
            if objs is INVALID_VALUE:
                return INVALID_VALUE
            return len(objs) > 0
        if kind == "equal":
            sides = []
            for side in ("lhs", "rhs"):
                value = resolve_slot(node, side)
                if value is INVALID_VALUE:
                    return INVALID_VALUE
                sides.append(value)
            return sides[0] == sides[1]
        if kind == "and":
            lhs = ev(node.inputs["lhs"])
            rhs = ev(node.inputs["rhs"])
            if lhs is INVALID_VALUE or rhs is INVALID_VALUE:
                return INVALID_VALUE
            return lhs and rhs
        if kind == "switch":
            cond = ev(node.inputs["condition"])
            if cond is INVALID_VALUE:
                return INVALID_VALUE
            branch = node.inputs["if_true"] if cond else node.inputs["if_false"]
            return ev(branch)
        raise AssertionError(kind)

    return to_response(ev(graph.root))


def to_response(value) -> ResponseValue:
    """Convert an interpreter value at the root into a ResponseValue."""
    if value is INVALID_VALUE:
        return INVALID
    if isinstance(value, bool):
        return ResponseValue.boolean(value)
    if isinstance(value, Loc):
        return ResponseValue.point(value.x, value.y)
    if isinstance(value, str):
        return ResponseValue.verbal(value)
    raise TypeError(f"root produced a non-response value: {value!r}")


# ---------------------------------------------------------------------------
# Output spaces

@dataclass(frozen=True)
class OutputSpace:
    """The domain a task's root response is drawn from.

    kind is one of bool/color/shape/point/switch; for switch the two branch
    spaces are kept separately so samples stay modality-consistent with the
    branch the condition takes.
    """

    kind: str
    values: tuple[str, ...] = ()
    branches: tuple["OutputSpace", ...] = ()

    def sample(self, rng: random.Random) -> ResponseValue:
        if self.kind == "bool":
            return ResponseValue.boolean(rng.random() < 0.5)
        if self.kind in ("color", "shape"):
            return ResponseValue.verbal(self.values[rng.randrange(len(self.values))])
        if self.kind == "point":
            return ResponseValue.point(rng.uniform(ANCHOR_LOW, ANCHOR_HIGH),
                                       rng.uniform(ANCHOR_LOW, ANCHOR_HIGH))
        if self.kind == "switch":
            branch = self.branches[0] if rng.random() < 0.5 else self.branches[1]
            return branch.sample(rng)
        raise AssertionError(self.kind)

    def guess_domain_size(self) -> int:
        """Number of equally-likely guesses available to a uniform guesser;
        pointing counts its 49 scoring cells."""
        if self.kind == "bool":
            return 2
        if self.kind in ("color", "shape"):
            return len(self.values)
        if self.kind == "point":
            return 49
        return sum(b.guess_domain_size() for b in self.branches)


def allowable_outputs(instance: TaskInstance) -> OutputSpace:
    """Output space of the instance's root operator."""
    graph = instance.graph

    def space_of(node_id: str) -> OutputSpace:
        node = graph.node(node_id)
        kind = node.kind
        if kind in BOOLEAN_KINDS:
            return OutputSpace("bool")
        if kind == "getcolor":
            return OutputSpace("color", values=COLORS)
        if kind == "getshape":
            return OutputSpace("shape", values=SHAPES)
        if kind == "getloc":
            return OutputSpace("point")
        if kind == "switch":
            return OutputSpace("switch", branches=(
                space_of(node.inputs["if_true"]),
                space_of(node.inputs["if_false"]),
            ))
        raise ArityError(f"node kind {kind} does not produce a response")

    return space_of(graph.root)
