"""Cyclomatic number, exact rank bookkeeping and baseline-method basis paths."""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from ..errors import ModelError, ResourceError
from ..graph import FsmGraph, coreachable_vertices, reachable_vertices
from .base import RequirementSet


class RankTracker:
    """Incremental exact rank over the rationals (reduced row echelon form)."""

    def __init__(self, width: int):
        self.width = width
        self.rows = {}  # pivot column -> row with a 1 at the pivot

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for pivot, row in self.rows.items():
            f = v[pivot]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def independent(self, vec) -> bool:
        return any(self._reduce(vec))

    def add(self, vec) -> bool:
        """Add ``vec``; return True when it raised the rank."""
        v = self._reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        lead = v[pivot]
        v = [x / lead for x in v]
        for p, row in list(self.rows.items()):
            f = row[pivot]
            if f:
                self.rows[p] = [a - f * b for a, b in zip(row, v)]
        self.rows[pivot] = v
        return True


def cyclomatic_number(g: FsmGraph) -> int:
    """E - V + 2 once all end vertices are routed into one virtual sink.

    Adding a sink and one edge per end vertex gives (E + k) - (V + 1) + 2,
    which is the plain E - V + 2 when there is a single end vertex.
    """
    k = len(g.ends)
    if k == 0:
        raise ModelError("cyclomatic number needs at least one end vertex")
    return len(g.edges) - len(g.vertices) + k + 1


def path_vector(g: FsmGraph, p) -> list:
    """Edge traversal counts plus a one-hot slot for the end vertex reached."""
    index = {eid: i for i, eid in enumerate(g.edge_ids)}
    ends = sorted(g.ends)
    vec = [0] * (len(index) + len(ends))
    for eid in p:
        vec[index[eid]] += 1
    vec[len(index) + ends.index(g.edge(p[-1]).target)] += 1
    return vec


def is_complete(g: FsmGraph, p) -> bool:
    return bool(p) and g.edge(p[0]).source == g.start and g.edge(p[-1]).target in g.ends


def check_basis_preconditions(g: FsmGraph):
    if not g.ends:
        raise ModelError("basis paths need at least one end vertex")
    unreachable = set(g.vertices) - reachable_vertices(g)
    if unreachable:
        raise ModelError(f"basis paths need every vertex reachable; not: {sorted(unreachable)}")
    stuck = set(g.vertices) - coreachable_vertices(g)
    if stuck:
        raise ModelError(f"basis paths need every vertex to reach an end; not: {sorted(stuck)}")


def distances_to_end(g: FsmGraph) -> dict:
    dist = {v: 0 for v in g.ends}
    queue = deque(sorted(g.ends))
    while queue:
        v = queue.popleft()
        for e in g.in_edges(v):
            if e.source not in dist:
                dist[e.source] = dist[v] + 1
                queue.append(e.source)
    return dist


def shortest_to_end(g: FsmGraph, v: str, dist: dict = None) -> tuple:
    """Shortest walk from ``v`` to the nearest end, ties by edge id; () if ``v`` is an end."""
    dist = distances_to_end(g) if dist is None else dist
    if v not in dist:
        raise ModelError(f"vertex {v!r} cannot reach an end vertex")
    out = []
    while dist[v] > 0:
        e = next(e for e in g.out_edges(v) if dist.get(e.target) == dist[v] - 1)
        out.append(e.id)
        v = e.target
    return tuple(out)


def basis_paths(g: FsmGraph, max_iterations: int = 100_000) -> RequirementSet:
    """Baseline method: start from the shortest complete path and flip one
    decision at a time, keeping each variant whose traversal vector is
    independent of those already chosen."""
    check_basis_preconditions(g)
    target = cyclomatic_number(g)
    dist = distances_to_end(g)
    width = len(g.edges) + len(g.ends)
    tracker = RankTracker(width)
    basis = []

    def offer(p):
        if p and tracker.add(path_vector(g, p)):
            basis.append(p)

    baseline = shortest_to_end(g, g.start, dist)
    offer(baseline)
    queue = deque([baseline])
    done = set()
    steps = 0
    while queue and tracker.rank < target:
        path = queue.popleft()
        vertices = [g.start] + [g.edge(e).target for e in path]
        for i, u in enumerate(vertices):
            if u in done:
                continue
            done.add(u)
            options = g.out_edges(u)
            if len(options) + (u in g.ends) < 2:
                continue
            prefix = path[:i]
            variants = []
            if u in g.ends and prefix:
                variants.append(prefix)
            for e in options:
                variants.append(prefix + (e.id,) + shortest_to_end(g, e.target, dist))
            for v in variants:
                steps += 1
                if steps > max_iterations:
                    raise ResourceError("baseline method hit its iteration cap",
                                        partial=tuple(basis))
                offer(v)
                queue.append(v)
            if tracker.rank >= target:
                break
    if tracker.rank < target:
        raise ResourceError(f"baseline method reached rank {tracker.rank} of {target}",
                            partial=tuple(basis))
    return RequirementSet("BPC", "basis", tuple(basis), meta={"cyclomatic": target})
