"""Walks, suites and the path predicates every criterion is phrased in.

A path is a non-empty tuple of edge ids. Equality is edge-level, so two
walks through the same vertices over different parallel edges differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidPathError, SchemaError, UnknownEdgeError
from .graph import FsmGraph

Path = tuple


def as_path(p: Iterable[str]) -> Path:
    return tuple(str(e) for e in p)


def is_valid_path(g: FsmGraph, p: Sequence[str]) -> bool:
    for eid in p:
        if not g.has_edge(eid):
            raise UnknownEdgeError(f"unknown edge {eid!r}")
    if not p:
        return False
    return all(g.edge(x).target == g.edge(y).source for x, y in zip(p, p[1:]))


def check_path(g: FsmGraph, p: Sequence[str]) -> Path:
    """Return ``p`` as a Path, raising InvalidPathError unless it is a walk in ``g``."""
    if not is_valid_path(g, p):
        raise InvalidPathError(f"{'-'.join(p) or '<empty>'} is not a walk in the graph")
    return as_path(p)


def vertex_sequence(g: FsmGraph, p: Sequence[str]) -> list:
    if not p:
        return []
    return [g.edge(p[0]).source] + [g.edge(e).target for e in p]


def head(g: FsmGraph, p: Sequence[str]) -> str:
    return g.edge(p[0]).source


def tail(g: FsmGraph, p: Sequence[str]) -> str:
    return g.edge(p[-1]).target


def is_simple(g: FsmGraph, p: Sequence[str]) -> bool:
    """No vertex repeats, except that the path may close into a cycle."""
    vs = vertex_sequence(g, p)
    if len(set(vs)) == len(vs):
        return True
    return vs[0] == vs[-1] and len(set(vs[:-1])) == len(vs) - 1


def can_extend_right(g: FsmGraph, p: Sequence[str]) -> bool:
    vs = vertex_sequence(g, p)
    if vs[0] == vs[-1]:
        return False
    inner = set(vs[1:])
    return any(e.target not in inner for e in g.out_edges(vs[-1]))


def can_extend_left(g: FsmGraph, p: Sequence[str]) -> bool:
    vs = vertex_sequence(g, p)
    if vs[0] == vs[-1]:
        return False
    inner = set(vs[:-1])
    return any(e.source not in inner for e in g.in_edges(vs[0]))


def is_prime(g: FsmGraph, p: Sequence[str]) -> bool:
    """Simple, and not a proper contiguous subpath of any other simple path.

    A simple path is strictly contained in a longer simple path exactly when
    one more edge can be attached at one of its ends without breaking
    simplicity, so checking single-edge extensions suffices.
    """
    if not is_simple(g, p):
        return False
    return not can_extend_left(g, p) and not can_extend_right(g, p)


def contains_subpath(t: Sequence[str], r: Sequence[str]) -> bool:
    n, m = len(t), len(r)
    if m == 0:
        return True
    r = tuple(r)
    t = tuple(t)
    return any(t[i:i + m] == r for i in range(n - m + 1))


def subpaths(t: Sequence[str], max_len: int = None) -> set:
    """All non-empty contiguous subpaths of ``t`` up to ``max_len`` edges."""
    t = tuple(t)
    n = len(t)
    top = n if max_len is None else min(n, max_len)
    return {t[i:i + k] for k in range(1, top + 1) for i in range(n - k + 1)}


def edge_counts(g: FsmGraph, p: Sequence[str]) -> list:
    index = {eid: i for i, eid in enumerate(g.edge_ids)}
    vec = [0] * len(index)
    for eid in p:
        vec[index[eid]] += 1
    return vec


def input_projection(g: FsmGraph, p: Sequence[str]) -> tuple:
    return tuple(g.edge(e).input for e in p)


def fmt(p: Sequence[str]) -> str:
    return "-".join(p)


@dataclass(frozen=True)
class TestSuite:
    """A multiset of test paths. ``canonical()`` deduplicates and sorts."""

    __test__ = False  # not a pytest class

    paths: tuple = ()

    def __init__(self, paths: Iterable[Iterable[str]] = ()):
        object.__setattr__(self, "paths", tuple(as_path(p) for p in paths))

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)

    def canonical(self) -> "TestSuite":
        return TestSuite(sorted(set(self.paths)))

    def validate(self, g: FsmGraph) -> "TestSuite":
        for p in self.paths:
            check_path(g, p)
        return self

    def plus(self, *paths) -> "TestSuite":
        return TestSuite(self.paths + tuple(as_path(p) for p in paths))

    def to_dict(self) -> dict:
        return {"paths": [list(p) for p in self.canonical().paths]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def suite_from_dict(doc) -> TestSuite:
    if not isinstance(doc, dict) or not isinstance(doc.get("paths"), list):
        raise SchemaError("suite document must be an object with a 'paths' array")
    for p in doc["paths"]:
        if not isinstance(p, list) or not all(isinstance(e, str) for e in p):
            raise SchemaError("each suite path must be an array of edge ids")
    return TestSuite(doc["paths"])


def parse_suite_json(text: str) -> TestSuite:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return suite_from_dict(doc)
