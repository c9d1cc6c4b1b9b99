"""Seeded random graphs for trials and property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from ..errors import ConfigError, IndistinguishableStatesError
from ..graph import Edge, FsmGraph
from ..requirements.wmethod import _pairs_to_separate

INPUTS = ("x", "y", "z")
OUTPUTS = ("0", "1")


@dataclass(frozen=True)
class RandomGraphSpec:
    min_vertices: int = 4
    max_vertices: int = 8
    min_out: int = 1
    max_out: int = 3
    parallel_prob: float = 0.1
    cycles: str = "allow"  # "allow", "require" or "forbid"
    labels: bool = False
    alphabet: int = 3
    extra_end_prob: float = 0.15
    seed: int = 0

    def __post_init__(self):
        if not 2 <= self.min_vertices <= self.max_vertices:
            raise ConfigError("need 2 <= min_vertices <= max_vertices")
        if not 1 <= self.min_out <= self.max_out:
            raise ConfigError("need 1 <= min_out <= max_out")
        if self.cycles not in ("allow", "require", "forbid"):
            raise ConfigError(f"unknown cycle mode {self.cycles!r}")
        if self.labels and not 1 <= self.alphabet <= len(INPUTS):
            raise ConfigError(f"alphabet must be between 1 and {len(INPUTS)}")
        if self.labels and self.max_out > self.alphabet:
            raise ConfigError("labelled graphs need max_out <= alphabet")

    def with_(self, **changes) -> "RandomGraphSpec":
        d = dict(self.__dict__)
        d.update(changes)
        return RandomGraphSpec(**d)


def _vertex(i):
    return f"v{i}"


def _dag(rng, spec, n):
    arcs = []
    out = [0] * n
    for i in range(1, n):
        parent = rng.choice([j for j in range(i) if out[j] < spec.max_out])
        arcs.append((parent, i))
        out[parent] += 1
    for i in range(n - 1):
        want = rng.randint(spec.min_out, spec.max_out)
        while out[i] < want:
            j = rng.randrange(i + 1, n)
            if (i, j) in arcs and rng.random() >= spec.parallel_prob:
                break
            arcs.append((i, j))
            out[i] += 1
    ends = {j for j in range(n) if out[j] == 0}
    return arcs, ends


def _cyclic(rng, spec, n):
    arcs = []
    out = [0] * n
    for i in range(1, n):
        parent = rng.choice([j for j in range(i) if out[j] < spec.max_out])
        arcs.append((parent, i))
        out[parent] += 1
    for i in range(n):
        want = rng.randint(spec.min_out, spec.max_out)
        while out[i] < want:
            j = rng.randrange(n)
            if (i, j) in arcs and rng.random() >= spec.parallel_prob:
                break
            arcs.append((i, j))
            out[i] += 1
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(range(n))
    dg.add_edges_from(arcs)
    if spec.cycles == "require" and nx.is_directed_acyclic_graph(dg):
        # Close a loop back from the last vertex in a topological order.
        last = list(nx.topological_sort(dg))[-1]
        back = rng.randrange(n)
        arcs.append((last, back))
        dg.add_edge(last, back)
    cond = nx.condensation(dg)
    ends = set()
    for c in sorted(cond.nodes):
        if cond.out_degree(c) == 0:
            members = sorted(cond.nodes[c]["members"] - {0})
            ends.add(rng.choice(members))
    for v in range(1, n):
        if rng.random() < spec.extra_end_prob:
            ends.add(v)
    return arcs, ends


def random_graph(rng: random.Random, spec: RandomGraphSpec) -> FsmGraph:
    """A valid graph with every vertex reachable from the start ``v0``.

    Acyclic graphs take their sinks as end vertices. Cyclic graphs get one end
    vertex in each bottom strongly connected component plus a few random
    extras, so every vertex can reach an end; the start is never an end.
    """
    n = rng.randint(spec.min_vertices, spec.max_vertices)
    if spec.cycles == "forbid":
        arcs, ends = _dag(rng, spec, n)
    else:
        arcs, ends = _cyclic(rng, spec, n)
    edges = [Edge(f"e{k:02d}", _vertex(s), _vertex(t)) for k, (s, t) in enumerate(arcs)]
    g = FsmGraph([_vertex(i) for i in range(n)], edges, _vertex(0),
                 [_vertex(i) for i in sorted(ends)])
    if spec.labels:
        g = attach_labels(rng, g, spec.alphabet)
    return g


def attach_labels(rng: random.Random, g: FsmGraph, alphabet: int = 3,
                  attempts: int = 20) -> FsmGraph:
    """Deterministic random Mealy labels under which all non-sink states differ.

    Falls back to emitting the source state's name as output, which always
    separates states that have outgoing transitions.
    """
    symbols = INPUTS[:alphabet]
    for _ in range(attempts):
        labels = {}
        for v in g.vertices:
            outs = g.out_edges(v)
            if len(outs) > len(symbols):
                raise ConfigError(f"vertex {v!r} has more out-edges than input symbols")
            for e, sym in zip(outs, rng.sample(symbols, len(outs))):
                labels[e.id] = (sym, rng.choice(OUTPUTS))
        lg = g.with_labels(labels)
        try:
            _pairs_to_separate(lg)
            return lg
        except IndistinguishableStatesError:
            continue
    return g.with_labels({e.id: (labels[e.id][0], e.source) for e in g.edges})


def random_mealy(rng: random.Random, min_states: int = 3, max_states: int = 6,
                 min_inputs: int = 2, max_inputs: int = 3,
                 attempts: int = 200) -> FsmGraph:
    """A complete deterministic, reachable and minimal Mealy machine."""
    for _ in range(attempts):
        n = rng.randint(min_states, max_states)
        symbols = INPUTS[:rng.randint(min_inputs, max_inputs)]
        edges = []
        for i in range(n):
            for sym in symbols:
                edges.append(Edge(f"e{len(edges):02d}", _vertex(i), _vertex(rng.randrange(n)),
                                  sym, rng.choice(OUTPUTS)))
        g = FsmGraph([_vertex(i) for i in range(n)], edges, _vertex(0), [])
        if g.warnings:
            continue
        try:
            _pairs_to_separate(g)
        except IndistinguishableStatesError:
            continue
        return g
    raise ConfigError("could not draw a minimal machine; widen the size ranges")
