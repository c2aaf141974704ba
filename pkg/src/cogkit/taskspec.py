"""Declarative task documents: a line-oriented UTF-8 format for task graphs.

One document describes one task::

    task GoColor
    family go
    generator backward
    node sel select color=free time=free
    node go getloc objects=@sel
    root go

``node <id> <kind> [slot=value ...]`` declares an operator.  Slot values:

* ``@other``          — an edge from node ``other`` into this input port
* ``free``            — a free literal slot over the slot's full domain
* ``free{a,b}``       — a free slot restricted to the listed values
* ``0.30,0.80``       — a fixed anchor location
* anything else       — a fixed literal (color/shape/time/relation word)

``root <id>`` names the node whose output is the task response.  Lines
starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CatalogError
from .operators import Node, Param, TaskGraph, make_graph
from .types import COLORS, SHAPES, SPATIAL_RELATIONS, TIME_REFS, Loc

_FULL_DOMAINS = {
    "color": COLORS,
    "shape": SHAPES,
    "time": TIME_REFS,
    "relation": SPATIAL_RELATIONS,
}


@dataclass(frozen=True)
class TaskDoc:
    name: str
    family: str
    generator: str  # backward | script
    graph: TaskGraph


def _parse_param(slot: str, raw: str) -> Param:
    if raw == "free":
        if slot == "anchor":
            return Param(domain="box")
        domain = _FULL_DOMAINS.get(slot)
        if domain is None:
            raise CatalogError(f"slot {slot!r} has no default free domain")
        return Param(domain=domain)
    if raw.startswith("free{") and raw.endswith("}"):
        values = tuple(v.strip() for v in raw[5:-1].split(",") if v.strip())
        return Param(domain=values)
    if slot == "anchor":
        try:
            x_str, y_str = raw.split(",")
            return Param(fixed=Loc(float(x_str), float(y_str)))
        except ValueError as exc:
            raise CatalogError(f"bad anchor literal {raw!r}") from exc
    return Param(fixed=raw)


def _parse_equal_literal(raw: str) -> Param:
    """Equal sides default to the domain matching a bare type name."""
    if raw == "free:color":
        return Param(domain=COLORS)
    if raw == "free:shape":
        return Param(domain=SHAPES)
    return _parse_param("lhs", raw) if raw.startswith("free{") else Param(fixed=raw)


def parse_task(text: str) -> TaskDoc:
    """Parse one task document and return its validated graph."""
    name = None
    family = ""
    generator = "backward"
    nodes: list[Node] = []
    root = None

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        keyword = parts[0]
        if keyword == "task":
            if len(parts) != 2:
                raise CatalogError(f"line {lineno}: task needs one name")
            name = parts[1]
        elif keyword == "family":
            family = parts[1] if len(parts) > 1 else ""
        elif keyword == "generator":
            if len(parts) != 2 or parts[1] not in ("backward", "script"):
                raise CatalogError(f"line {lineno}: generator must be backward|script")
            generator = parts[1]
        elif keyword == "node":
            if len(parts) < 3:
                raise CatalogError(f"line {lineno}: node needs id and kind")
            node_id, kind = parts[1], parts[2]
            params: dict[str, Param] = {}
            inputs: dict[str, str] = {}
            for assign in parts[3:]:
                if "=" not in assign:
                    raise CatalogError(f"line {lineno}: bad assignment {assign!r}")
                slot, raw = assign.split("=", 1)
                if raw.startswith("@"):
                    inputs[slot] = raw[1:]
                elif kind == "equal" and slot in ("lhs", "rhs"):
                    params[slot] = _parse_equal_literal(raw)
                else:
                    params[slot] = _parse_param(slot, raw)
            nodes.append(Node(id=node_id, kind=kind, params=params, inputs=inputs))
        elif keyword == "root":
            if len(parts) != 2:
                raise CatalogError(f"line {lineno}: root needs one node id")
            root = parts[1]
        else:
            raise CatalogError(f"line {lineno}: unknown keyword {keyword!r}")

    if name is None:
        raise CatalogError("task document missing a 'task' line")
    if root is None:
        raise CatalogError(f"{name}: task document missing a 'root' line")
    graph = make_graph(name, nodes, root)
    return TaskDoc(name=name, family=family, generator=generator, graph=graph)


def build_graph(text: str) -> TaskGraph:
    """Build and validate a task graph from a declarative document."""
    return parse_task(text).graph
