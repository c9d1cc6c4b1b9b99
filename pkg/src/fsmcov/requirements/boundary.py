"""Boundary-interior path classes.

Two complete paths fall in the same class when they agree after collapsing
every run of back-to-back repetitions of one loop body down to
``depth_bound + 1`` copies: skipping a loop, entering it once (boundary) and
repeating it (interior) stay apart, further repetitions merge. Representatives
are the complete paths visiting each vertex at most ``depth_bound + 2`` times;
a run of ``depth_bound + 2`` copies would visit the loop anchor once more than
that, so representatives are already collapsed.
"""

from __future__ import annotations

from ..errors import ResourceError
from ..graph import FsmGraph, coreachable_vertices
from .base import RequirementSet, canonical
from .prime import elementary_cycle_count

DEFAULT_CLASS_CAP = 50_000
DEFAULT_CYCLE_CAP = 1_000


def collapse_loops(g: FsmGraph, p, depth_bound: int = 1) -> tuple:
    """Reduce every run of more than ``depth_bound + 1`` consecutive copies of
    a closed sub-walk to exactly ``depth_bound + 1`` copies (leftmost, shortest
    body first, until nothing changes)."""
    keep = depth_bound + 1
    p = list(p)
    changed = True
    while changed:
        changed = False
        n = len(p)
        for i in range(n):
            start = g.edge(p[i]).source
            length = 1
            while i + length * (keep + 1) <= n:
                if g.edge(p[i + length - 1]).target == start:
                    body = p[i:i + length]
                    copies = 1
                    while p[i + copies * length:i + (copies + 1) * length] == body:
                        copies += 1
                    if copies > keep:
                        p = p[:i + keep * length] + p[i + copies * length:]
                        changed = True
                        break
                length += 1
            if changed:
                break
    return tuple(p)


def boundary_interior_classes(g: FsmGraph, depth_bound: int = 1,
                              cap: int = DEFAULT_CLASS_CAP,
                              cycle_cap: int = DEFAULT_CYCLE_CAP) -> RequirementSet:
    if depth_bound < 1:
        raise ValueError("depth_bound must be at least 1")
    cycles = elementary_cycle_count(g)
    if cycles > cycle_cap:
        raise ResourceError(f"{cycles} elementary cycles exceed the cap of {cycle_cap}")
    visits_allowed = depth_bound + 2
    live = coreachable_vertices(g)
    complete, truncated = [], []
    counts = {v: 0 for v in g.vertices}
    counts[g.start] = 1
    walk = []
    explored = 0

    # Iterative DFS over walks with a per-vertex visit budget.
    stack = [(g.start, iter(g.out_edges(g.start)))]
    while stack:
        v, it = stack[-1]
        e = next(it, None)
        if e is None:
            stack.pop()
            if walk:
                counts[v] -= 1
                walk.pop()
            continue
        if counts[e.target] >= visits_allowed:
            continue
        walk.append(e.id)
        counts[e.target] += 1
        explored += 1
        if explored > cap * 20:
            raise ResourceError(f"boundary-interior enumeration explored over {cap * 20} walks")
        w = e.target
        if w in g.ends:
            complete.append(tuple(walk))
            if len(complete) > cap:
                raise ResourceError(f"more than {cap} boundary-interior classes")
        elif w not in live and not any(counts[x.target] < visits_allowed
                                       for x in g.out_edges(w)):
            truncated.append(tuple(walk))
        stack.append((w, iter(g.out_edges(w))))
    items = canonical(complete + truncated)
    return RequirementSet("BIC", "path", items, meta={
        "depth_bound": depth_bound,
        "truncated": sorted(set(truncated)),
    })
