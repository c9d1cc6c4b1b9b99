"""Requirements built directly from local graph structure: vertices, edges,
branches, adjacent-edge walks, complete paths and user-specified paths."""

from __future__ import annotations

from ..errors import CyclicGraphError, ResourceError
from ..graph import FsmGraph
from ..paths import as_path, check_path
from .base import RequirementSet, canonical

DEFAULT_WALK_CAP = 200_000


def node_requirements(g: FsmGraph) -> RequirementSet:
    return RequirementSet("NC", "vertex", tuple(g.vertices))


def edge_requirements(g: FsmGraph) -> RequirementSet:
    return RequirementSet("EC", "edge", tuple(g.edge_ids))


def branch_points(g: FsmGraph) -> set:
    """Vertices where a branch may begin or end.

    Decision vertices (out-degree >= 2) and the start and end vertices as
    usual, plus join vertices (in-degree >= 2): cutting at joins is what
    makes every edge belong to exactly one branch.
    """
    points = {g.start} | set(g.ends)
    for v in g.vertices:
        if len(g.out_edges(v)) >= 2 or len(g.in_edges(v)) >= 2:
            points.add(v)
    return points


def branch_requirements(g: FsmGraph) -> RequirementSet:
    points = branch_points(g)
    used = set()
    items = []

    def run_from(edge):
        path = [edge.id]
        used.add(edge.id)
        v = edge.target
        while v not in points and g.out_edges(v):
            nxt = g.out_edges(v)[0]
            if nxt.id in used:
                break
            path.append(nxt.id)
            used.add(nxt.id)
            v = nxt.target
        return tuple(path)

    for v in sorted(points):
        for e in g.out_edges(v):
            items.append(run_from(e))
    # Only edges on isolated unreachable rings remain at this point.
    for e in g.edges:
        if e.id not in used:
            items.append(run_from(e))
    return RequirementSet("BC", "path", canonical(items),
                          meta={"branch_points": sorted(points)})


def _walks_of_length(g: FsmGraph, length: int, cap: int) -> list:
    layer = [(e.id,) for e in g.edges]
    for _ in range(length - 1):
        nxt = []
        for w in layer:
            for e in g.out_edges(g.edge(w[-1]).target):
                nxt.append(w + (e.id,))
            if len(nxt) > cap:
                raise ResourceError(f"more than {cap} walks of length {length}")
        layer = nxt
    return layer


def _maximal_short_walks(g: FsmGraph, below: int, cap: int) -> list:
    """Walks shorter than ``below`` edges running from a source to a sink."""
    out = []
    sources = [v for v in g.vertices if not g.in_edges(v)]
    stack = [((), v) for v in sources]
    while stack:
        walk, v = stack.pop()
        succ = g.out_edges(v)
        if not succ:
            if walk:
                out.append(walk)
                if len(out) > cap:
                    raise ResourceError(f"more than {cap} short maximal walks")
            continue
        if len(walk) + 1 >= below:
            continue
        for e in succ:
            stack.append((walk + (e.id,), e.target))
    return out


def n_switch_requirements(g: FsmGraph, n: int, cap: int = DEFAULT_WALK_CAP) -> RequirementSet:
    """Every walk of ``n + 1`` adjacent edges.

    A walk that cannot be extended at either end but is shorter than
    ``n + 1`` edges is also an obligation, otherwise edges sitting on a
    short start-to-sink route would never be required at all.
    """
    if n < 0:
        raise ValueError("N must be non-negative")
    items = _walks_of_length(g, n + 1, cap) if g.edges else []
    items += _maximal_short_walks(g, n + 1, cap)
    return RequirementSet(f"NSC({n})", "path", canonical(items), meta={"N": n})


def edge_pair_requirements(g: FsmGraph) -> RequirementSet:
    rs = n_switch_requirements(g, 1)
    return RequirementSet("EPC", "path", rs.items)


def all_path_requirements(g: FsmGraph, cap: int = DEFAULT_WALK_CAP) -> RequirementSet:
    """Every path from the start vertex to an end vertex; acyclic graphs only."""
    if not g.is_acyclic:
        raise CyclicGraphError("graph has a cycle, so the number of possible paths is infinite")
    items = []
    stack = [((), g.start)]
    while stack:
        walk, v = stack.pop()
        if walk and v in g.ends:
            items.append(walk)
            if len(items) > cap:
                raise ResourceError(f"more than {cap} complete paths")
        for e in g.out_edges(v):
            stack.append((walk + (e.id,), e.target))
    return RequirementSet("APC", "path", canonical(items))


def specified_path_requirements(g: FsmGraph, specified) -> RequirementSet:
    items = [check_path(g, as_path(p)) for p in specified]
    return RequirementSet("SPC", "path", canonical(items))
