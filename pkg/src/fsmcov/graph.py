"""Directed-graph FSM model, its JSON/DOT readers and basic reachability."""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import DeterminismError, ModelError, SchemaError


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    input: Optional[str] = None
    output: Optional[str] = None

    def __post_init__(self):
        if (self.input is None) != (self.output is None):
            raise ModelError(f"edge {self.id!r}: input and output must be given together")

    @property
    def labelled(self) -> bool:
        return self.input is not None

    def to_dict(self) -> dict:
        d = {"id": self.id, "from": self.source, "to": self.target}
        if self.labelled:
            d["input"] = self.input
            d["output"] = self.output
        return d


@dataclass(frozen=True)
class FsmGraph:
    """A finite state machine as a directed multigraph with a start vertex and end set.

    Vertices are opaque strings. Edges are identified by ``id`` so parallel
    edges between the same pair of vertices are distinct transitions.
    Instances are immutable and validated on construction.
    """

    vertices: tuple
    edges: tuple
    start: str
    ends: frozenset
    warnings: tuple = field(default=(), compare=False)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge], start: str,
                 ends: Iterable[str]):
        vs = [str(v) for v in vertices]
        if not vs:
            raise ModelError("graph must have at least one vertex")
        if len(set(vs)) != len(vs):
            raise ModelError("duplicate vertex identifiers")
        es = sorted(edges, key=lambda e: e.id)
        object.__setattr__(self, "vertices", tuple(sorted(vs)))
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "start", str(start))
        object.__setattr__(self, "ends", frozenset(str(v) for v in ends))
        self._validate()
        unreachable = sorted(set(self.vertices) - reachable_vertices(self))
        object.__setattr__(self, "warnings", tuple(
            f"vertex {v!r} is unreachable from start" for v in unreachable))

    def _validate(self):
        vset = set(self.vertices)
        if self.start not in vset:
            raise ModelError(f"start vertex {self.start!r} is not a vertex")
        stray = self.ends - vset
        if stray:
            raise ModelError(f"end vertices not in graph: {sorted(stray)}")
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise ModelError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.source not in vset or e.target not in vset:
                raise ModelError(f"edge {e.id!r} references an unknown vertex")
        if any(e.labelled for e in self.edges):
            for v in self.vertices:
                inputs = [e.input for e in self.out_edges(v) if e.labelled]
                if len(inputs) != len(set(inputs)):
                    raise DeterminismError(
                        f"vertex {v!r} has two outgoing edges with the same input")

    # -- indices ---------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.target].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def edge(self, edge_id: str) -> Edge:
        return self._by_id[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._by_id

    def out_edges(self, v: str) -> tuple:
        """Outgoing edges of ``v`` in canonical (edge-id) order."""
        return self._out[v]

    def in_edges(self, v: str) -> tuple:
        return self._in[v]

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    @cached_property
    def has_labels(self) -> bool:
        """True when every edge carries a Mealy input/output pair."""
        return bool(self.edges) and all(e.labelled for e in self.edges)

    @cached_property
    def inputs(self) -> tuple:
        return tuple(sorted({e.input for e in self.edges if e.labelled}))

    @cached_property
    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.target] += 1
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        removed = 0
        while queue:
            v = queue.popleft()
            removed += 1
            for e in self._out[v]:
                indeg[e.target] -= 1
                if indeg[e.target] == 0:
                    queue.append(e.target)
        return removed == len(self.vertices)

    def step(self, v: str, symbol: str) -> Optional[Edge]:
        """The transition taken from ``v`` on input ``symbol``, or None if blocked."""
        for e in self._out[v]:
            if e.input == symbol:
                return e
        return None

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "start": self.start,
            "ends": sorted(self.ends),
            "edges": [e.to_dict() for e in self.edges],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    def to_dot(self) -> str:
        lines = ["digraph {"]
        for v in self.vertices:
            attrs = []
            if v == self.start:
                attrs.append("start=true")
            if v in self.ends:
                attrs.append("end=true")
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f'  "{v}"{suffix};')
        for e in self.edges:
            attrs = [f'id="{e.id}"']
            if e.labelled:
                attrs.append(f'label="{e.input}/{e.output}"')
            lines.append(f'  "{e.source}" -> "{e.target}" [{", ".join(attrs)}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def with_labels(self, labels: dict) -> "FsmGraph":
        """Copy of the graph with ``labels[edge_id] = (input, output)`` attached."""
        edges = [Edge(e.id, e.source, e.target, *labels.get(e.id, (None, None)))
                 for e in self.edges]
        return FsmGraph(self.vertices, edges, self.start, self.ends)

    def subgraph(self, keep: Iterable[str]) -> "FsmGraph":
        keep = set(keep)
        edges = [e for e in self.edges if e.source in keep and e.target in keep]
        return FsmGraph(keep, edges, self.start, self.ends & keep)


def reachable_vertices(g: FsmGraph) -> set:
    """Vertices reachable from ``g.start`` by directed edges, start included."""
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            if e.target not in seen:
                seen.add(e.target)
                queue.append(e.target)
    return seen


def coreachable_vertices(g: FsmGraph) -> set:
    """Vertices from which some end vertex can be reached."""
    seen = set(g.ends)
    queue = deque(g.ends)
    while queue:
        v = queue.popleft()
        for e in g.in_edges(v):
            if e.source not in seen:
                seen.add(e.source)
                queue.append(e.source)
    return seen


# -- JSON ----------------------------------------------------------------

def _ident(value, what):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(f"{what} must be a string, got {value!r}")
    return str(value)


def graph_from_dict(doc) -> FsmGraph:
    if not isinstance(doc, dict):
        raise SchemaError("graph document must be a JSON object")
    for key in ("vertices", "start", "ends", "edges"):
        if key not in doc:
            raise SchemaError(f"graph document is missing {key!r}")
    if not isinstance(doc["vertices"], list) or not isinstance(doc["ends"], list) \
            or not isinstance(doc["edges"], list):
        raise SchemaError("'vertices', 'ends' and 'edges' must be arrays")
    vertices = [_ident(v, "vertex") for v in doc["vertices"]]
    ends = [_ident(v, "end vertex") for v in doc["ends"]]
    start = _ident(doc["start"], "start")
    edges = []
    for raw in doc["edges"]:
        if not isinstance(raw, dict):
            raise SchemaError("each edge must be an object")
        for key in ("id", "from", "to"):
            if key not in raw:
                raise SchemaError(f"edge is missing {key!r}")
        unknown = set(raw) - {"id", "from", "to", "input", "output"}
        if unknown:
            raise SchemaError(f"unknown edge keys {sorted(unknown)}")
        inp = raw.get("input")
        out = raw.get("output")
        if (inp is None) != (out is None):
            raise SchemaError(f"edge {raw['id']!r}: 'input' and 'output' come as a pair")
        edges.append(Edge(
            _ident(raw["id"], "edge id"),
            _ident(raw["from"], "edge source"),
            _ident(raw["to"], "edge target"),
            None if inp is None else _ident(inp, "input"),
            None if out is None else _ident(out, "output"),
        ))
    return FsmGraph(vertices, edges, start, ends)


def parse_graph_json(text: str) -> FsmGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


# -- DOT subset ----------------------------------------------------------

_DOT_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<arrow>->)
  | (?P<punct>[{}\[\];,=])
  | (?P<ident>[A-Za-z0-9_.]+)
""", re.VERBOSE | re.DOTALL)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise SchemaError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        value = m.group()
        if kind == "string":
            value = bytes(value[1:-1], "utf-8").decode("unicode_escape")
            kind = "ident"
        tokens.append((kind, value))
    return tokens


class _DotParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None, kind=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value) or \
                (kind is not None and tok[0] != kind):
            want = value or kind
            raise SchemaError(f"expected {want!r}, found {tok[1]!r}")
        self.i += 1
        return tok[1]

    def attrs(self):
        out = {}
        if self.peek()[1] != "[":
            return out
        self.take("[")
        while self.peek()[1] != "]":
            key = self.take(kind="ident")
            self.take("=")
            out[key] = self.take(kind="ident")
            if self.peek()[1] in (",", ";"):
                self.i += 1
        self.take("]")
        return out

    def parse(self):
        if self.peek()[1] in ("strict",):
            raise SchemaError("strict graphs are not supported")
        if self.take(kind="ident") != "digraph":
            raise SchemaError("only 'digraph' documents are supported")
        if self.peek()[0] == "ident":
            self.i += 1
        self.take("{")
        nodes = {}
        order = []
        edges = []
        while self.peek()[1] != "}":
            if self.peek()[0] is None:
                raise SchemaError("unterminated digraph body")
            if self.peek()[1] == ";":
                self.i += 1
                continue
            name = self.take(kind="ident")
            if name in ("graph", "node", "edge") and self.peek()[1] == "[":
                self.attrs()
                continue
            if self.peek()[0] == "arrow":
                self.take(kind="arrow")
                target = self.take(kind="ident")
                if self.peek()[0] == "arrow":
                    raise SchemaError("edge chains are not supported; one edge per statement")
                edges.append((name, target, self.attrs()))
                for v in (name, target):
                    if v not in nodes:
                        nodes[v] = {}
                        order.append(v)
            else:
                if self.peek()[1] == "=":
                    raise SchemaError("graph-level attributes are not supported")
                if name not in nodes:
                    nodes[name] = {}
                    order.append(name)
                nodes[name].update(self.attrs())
        self.take("}")
        if self.peek()[0] is not None:
            raise SchemaError("trailing content after digraph")
        return nodes, order, edges


def _truthy(value):
    return str(value).lower() in ("true", "1", "yes")


def parse_graph_dot(text: str) -> FsmGraph:
    nodes, order, raw_edges = _DotParser(_tokenize(text)).parse()
    starts = [v for v in order if _truthy(nodes[v].get("start", "false"))]
    if len(starts) != 1:
        raise ModelError(f"exactly one node must carry start=true, found {len(starts)}")
    ends = [v for v in order if _truthy(nodes[v].get("end", "false"))]
    edges = []
    for source, target, attrs in raw_edges:
        if "id" not in attrs:
            raise SchemaError(f"edge {source}->{target} lacks an id attribute")
        inp = out = None
        if "label" in attrs:
            if "/" not in attrs["label"]:
                raise SchemaError(f"edge label {attrs['label']!r} is not of the form in/out")
            inp, out = attrs["label"].split("/", 1)
        edges.append(Edge(attrs["id"], source, target, inp, out))
    return FsmGraph(order, edges, starts[0], ends)
