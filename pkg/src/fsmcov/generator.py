"""Build suites that satisfy a criterion, and shrink them again."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional

from .coverage import check, path_contribution
from .criteria import Criterion
from .errors import ConfigError, ResourceError, UnsatisfiableError
from .graph import FsmGraph
from .paths import TestSuite, contains_subpath, vertex_sequence
from .requirements import requirements_for
from .requirements.basis import distances_to_end, shortest_to_end


@dataclass(frozen=True)
class GenConfig:
    anchor_start: bool = True
    anchor_end: Optional[bool] = None  # None: anchor when the graph has end vertices
    seed: int = 0
    max_paths: int = 10_000

    def __post_init__(self):
        if self.max_paths < 1:
            raise ConfigError("max_paths must be at least 1")

    def resolved_end(self, g: FsmGraph) -> bool:
        return bool(g.ends) if self.anchor_end is None else self.anchor_end


class _Router:
    """Shortest connecting walks with lexicographic edge-id tie-breaking."""

    def __init__(self, g: FsmGraph):
        self.g = g
        self.end_dist = distances_to_end(g) if g.ends else {}
        self._to = {}

    def _dist_to(self, target):
        if target not in self._to:
            dist = {target: 0}
            queue = deque([target])
            while queue:
                v = queue.popleft()
                for e in self.g.in_edges(v):
                    if e.source not in dist:
                        dist[e.source] = dist[v] + 1
                        queue.append(e.source)
            self._to[target] = dist
        return self._to[target]

    def from_start(self, target) -> tuple:
        dist = self._dist_to(target)
        v = self.g.start
        if v not in dist:
            raise UnsatisfiableError(f"vertex {target!r} is unreachable from the start vertex")
        out = []
        while dist[v] > 0:
            e = next(e for e in self.g.out_edges(v) if dist.get(e.target) == dist[v] - 1)
            out.append(e.id)
            v = e.target
        return tuple(out)

    def to_end(self, v) -> tuple:
        if v not in self.end_dist:
            raise UnsatisfiableError(f"no end vertex is reachable from {v!r}")
        return shortest_to_end(self.g, v, self.end_dist)


def _stitch(g, router, seed, cfg):
    anchor_end = cfg.resolved_end(g)
    if seed and isinstance(seed, str):  # a vertex obligation
        v = seed
        walk = router.from_start(v) if cfg.anchor_start else ()
        if anchor_end:
            walk += router.to_end(v)
        if not walk:
            if g.out_edges(v):
                walk = (g.out_edges(v)[0].id,)
            elif g.in_edges(v):
                walk = (g.in_edges(v)[0].id,)
            else:
                raise UnsatisfiableError(f"vertex {v!r} has no incident edge")
        return walk
    head = g.edge(seed[0]).source
    tail = g.edge(seed[-1]).target
    walk = tuple(seed)
    if cfg.anchor_start:
        walk = router.from_start(head) + walk
    if anchor_end:
        walk = walk + router.to_end(tail)
    return walk


def generate(g: FsmGraph, c: Criterion, cfg: GenConfig = GenConfig()) -> TestSuite:
    """A suite satisfying ``c`` on ``g``.

    Requirements are taken longest first; each one still uncovered is wrapped
    into a walk (shortest lead-in from the start and run-out to an end, as
    the anchors demand) and everything that walk tours is marked covered.
    Basis, complete-path, boundary-interior and W-method obligations are
    emitted as they are.
    """
    reqs = requirements_for(g, c)
    k = c.kind
    if k == "BPC" or k == "APC" or k == "BIC":
        paths = list(reqs.items)
    elif k == "WMC":
        paths = sorted({w for w in reqs.meta["walks"] if w})
    else:
        paths = _greedy(g, c, reqs, cfg)
    if len(paths) > cfg.max_paths:
        raise ResourceError(f"suite needs {len(paths)} paths, above max_paths={cfg.max_paths}")
    return TestSuite(paths)


def _greedy(g, c, reqs, cfg):
    router = _Router(g)
    k = c.kind
    if k == "SRTC":
        groups = reqs.meta["groups"]
        obligations = {v: list(ps) for v, ps in groups.items()}
    elif reqs.kind == "edge":
        obligations = {r: [(r,)] for r in reqs.items}
    else:
        obligations = {r: [r] for r in reqs.items}

    toured_edges = set()
    toured_vertices = set()

    def done(key, options, walk):
        if k == "NC":
            return key in toured_vertices
        if k == "EC":
            return key in toured_edges
        if k == "BC":
            return all(e in toured_edges for e in key)
        return any(contains_subpath(walk, o) for o in options)

    order = sorted(obligations, key=lambda r: (-_size(obligations[r][0]), r))
    remaining = set(order)
    paths = []
    for key in order:
        if key not in remaining:
            continue
        walk = _stitch(g, router, obligations[key][0], cfg)
        paths.append(walk)
        if len(paths) > cfg.max_paths:
            raise ResourceError(f"more than {cfg.max_paths} paths needed")
        toured_edges.update(walk)
        toured_vertices.update(vertex_sequence(g, walk))
        for other in list(remaining):
            if done(other, obligations[other], walk):
                remaining.discard(other)
        remaining.discard(key)
    return paths


def _size(r):
    return 0 if isinstance(r, str) else len(r)


def minimize(g: FsmGraph, suite: TestSuite, c: Criterion, order=None, reqs=None) -> TestSuite:
    """Drop paths one at a time while ``c`` stays satisfied.

    Paths are scanned in canonical order, or in ``order`` (a permutation of
    the canonical indices) when given. For every criterion but basis paths
    coverage is a union of per-path contributions, so a path can go exactly
    when each of its contributions is also made by a remaining path.
    """
    reqs = reqs or requirements_for(g, c)
    paths = sorted(TestSuite(suite).paths)
    idx = list(order) if order is not None else list(range(len(paths)))
    if c.kind == "BPC":
        keep = [paths[i] for i in idx]
        changed = True
        while changed:
            changed = False
            for i in range(len(keep)):
                trial = keep[:i] + keep[i + 1:]
                if check(g, TestSuite(trial), c, reqs).satisfied:
                    keep = trial
                    changed = True
                    break
        return TestSuite(sorted(keep))
    atoms = [path_contribution(g, p, c, reqs) for p in paths]
    count = Counter(a for s in atoms for a in s)
    dropped = set()
    for i in idx:
        if all(count[a] > 1 for a in atoms[i]):
            count.subtract(atoms[i])
            dropped.add(i)
    return TestSuite([p for i, p in enumerate(paths) if i not in dropped])
