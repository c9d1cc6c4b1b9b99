"""Prime path enumeration and the round trips derived from it."""

from __future__ import annotations

from ..errors import ResourceError
from ..graph import FsmGraph, reachable_vertices
from .base import RequirementSet, canonical

DEFAULT_PRIME_CAP = 100_000


def _extend(g: FsmGraph, cap: int):
    """Grow simple paths edge by edge; yield those that cannot grow rightwards.

    Each entry is ``(edges, vertices)``. A path that has closed into a cycle
    is finished; otherwise it grows by every outgoing edge whose target is
    not already an interior or final vertex (returning to the first vertex
    is allowed and closes a cycle).
    """
    frontier = [((e.id,), (e.source, e.target)) for e in g.edges]
    total = len(frontier)
    while frontier:
        grown = []
        for edges, verts in frontier:
            if verts[0] == verts[-1]:
                yield edges, verts
                continue
            inner = set(verts[1:])
            extended = False
            for e in g.out_edges(verts[-1]):
                if e.target not in inner:
                    grown.append((edges + (e.id,), verts + (e.target,)))
                    extended = True
            if not extended:
                yield edges, verts
        total += len(grown)
        if total > cap:
            raise ResourceError(f"simple path enumeration exceeded {cap} paths")
        frontier = grown


def prime_paths(g: FsmGraph, cap: int = DEFAULT_PRIME_CAP) -> RequirementSet:
    primes = []
    for edges, verts in _extend(g, cap):
        if verts[0] != verts[-1]:
            before = set(verts[:-1])
            if any(e.source not in before for e in g.in_edges(verts[0])):
                continue
        primes.append(edges)
    return RequirementSet("PPC", "path", canonical(primes))


def _cycle_anchor(g: FsmGraph, p) -> str:
    return g.edge(p[0]).source


def round_trip_requirements(g: FsmGraph, mode: str = "complete",
                            cap: int = DEFAULT_PRIME_CAP) -> RequirementSet:
    """Prime paths that are cycles, anchored at reachable vertices.

    ``complete`` requires every item; ``simple`` carries the items grouped by
    anchor vertex in ``meta["groups"]`` and needs one member per group.
    """
    if mode not in ("simple", "complete"):
        raise ValueError(f"unknown round trip mode {mode!r}")
    live = reachable_vertices(g)
    cycles = [p for p in prime_paths(g, cap).items
              if g.edge(p[0]).source == g.edge(p[-1]).target
              and _cycle_anchor(g, p) in live]
    groups = {}
    for p in cycles:
        groups.setdefault(_cycle_anchor(g, p), []).append(p)
    label = "CRTC" if mode == "complete" else "SRTC"
    return RequirementSet(label, "path", canonical(cycles),
                          meta={"groups": {v: sorted(ps) for v, ps in sorted(groups.items())}})


def elementary_cycle_count(g: FsmGraph, cap: int = DEFAULT_PRIME_CAP) -> int:
    """Number of elementary cycles, counting each rotation class once."""
    seen = set()
    for p in prime_paths(g, cap).items:
        if g.edge(p[0]).source == g.edge(p[-1]).target:
            seen.add(min(p[i:] + p[:i] for i in range(len(p))))
    return len(seen)
