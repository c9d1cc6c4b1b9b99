"""Testing tree, characterization set and the W-method test set."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from ..errors import IndistinguishableStatesError, MealyLabelsMissingError
from ..graph import Edge, FsmGraph
from .base import RequirementSet

BLOCKED = None  # observation recorded when no transition accepts the input


@dataclass
class TreeNode:
    vertex: str
    edge: Optional[Edge] = None
    parent: Optional["TreeNode"] = field(default=None, repr=False)
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def path(self) -> tuple:
        out = []
        node = self
        while node.edge is not None:
            out.append(node.edge.id)
            node = node.parent
        return tuple(reversed(out))

    def iter_nodes(self):
        queue = deque([self])
        while queue:
            node = queue.popleft()
            yield node
            queue.extend(node.children)

    def leaves(self):
        return [n for n in self.iter_nodes() if n.is_leaf]


def testing_tree(g: FsmGraph) -> TreeNode:
    """Breadth-first unrolling from the start vertex.

    A node is expanded only at the first occurrence of its vertex in
    breadth-first order; later occurrences stay leaves.
    """
    root = TreeNode(g.start)
    seen = {g.start}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for e in g.out_edges(node.vertex):
            child = TreeNode(e.target, e, node)
            node.children.append(child)
            if e.target not in seen:
                seen.add(e.target)
                queue.append(child)
    return root


testing_tree.__test__ = False  # keep pytest from collecting it


def _require_labels(g: FsmGraph):
    if not g.has_labels:
        raise MealyLabelsMissingError("the W-method needs input/output labels on every edge")


def observe(g: FsmGraph, state: str, inputs) -> tuple:
    """Outputs produced by applying ``inputs`` from ``state``; stops at BLOCKED."""
    out = []
    for sym in inputs:
        e = g.step(state, sym)
        if e is None:
            out.append(BLOCKED)
            break
        out.append(e.output)
        state = e.target
    return tuple(out)


def execute(g: FsmGraph, inputs, state: str = None) -> tuple:
    """Edge path taken by ``inputs`` from ``state`` (default start) up to any block."""
    state = g.start if state is None else state
    path = []
    for sym in inputs:
        e = g.step(state, sym)
        if e is None:
            break
        path.append(e.id)
        state = e.target
    return tuple(path)


def _separating_sequence(g: FsmGraph, u: str, v: str):
    """Shortest input sequence giving different observations from u and v."""
    alphabet = g.inputs
    queue = deque([((u, v), ())])
    seen = {(u, v)}
    while queue:
        (a, b), seq = queue.popleft()
        for sym in alphabet:
            ea, eb = g.step(a, sym), g.step(b, sym)
            if ea is None and eb is None:
                continue
            if ea is None or eb is None or ea.output != eb.output:
                return seq + (sym,)
            nxt = (ea.target, eb.target)
            if nxt[0] != nxt[1] and nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, seq + (sym,)))
    return None


def _pairs_to_separate(g: FsmGraph):
    """State pairs W has to tell apart, with their shortest separating sequence.

    Two sink states behave identically (everything blocks) and are exempt;
    any other inseparable pair means the machine is not minimal.
    """
    out = {}
    for u, v in combinations(g.vertices, 2):
        seq = _separating_sequence(g, u, v)
        if seq is None:
            if not g.out_edges(u) and not g.out_edges(v):
                continue
            raise IndistinguishableStatesError(
                f"states {u!r} and {v!r} produce identical outputs for every input", (u, v))
        out[(u, v)] = seq
    return out


def separates(g: FsmGraph, W, u: str, v: str) -> bool:
    return any(observe(g, u, w) != observe(g, v, w) for w in W)


def characterization_set(g: FsmGraph) -> tuple:
    """Input sequences that separate every distinguishable pair of states.

    Starts from the shortest separating sequence of each pair, then drops
    sequences (longest first) while the rest still separate every pair.
    """
    _require_labels(g)
    pairs = _pairs_to_separate(g)
    W = sorted(set(pairs.values()), key=lambda s: (len(s), s))
    for w in sorted(W, key=lambda s: (len(s), s), reverse=True):
        rest = [x for x in W if x != w]
        if all(separates(g, rest, u, v) for u, v in pairs):
            W = rest
    return tuple(sorted(W, key=lambda s: (len(s), s)))


def transition_cover(g: FsmGraph) -> tuple:
    """Input sequences of the root-to-leaf paths of the testing tree."""
    root = testing_tree(g)
    seqs = []
    for leaf in root.leaves():
        seqs.append(tuple(g.edge(e).input for e in leaf.path()))
    return tuple(sorted(set(seqs)))


def w_method_test_set(g: FsmGraph) -> RequirementSet:
    """All concatenations p.w; ``meta["walks"]`` maps each to the edge path it drives."""
    _require_labels(g)
    W = characterization_set(g)
    P = transition_cover(g)
    suffixes = W if W else ((),)
    items = sorted({p + w for p in P for w in suffixes})
    walks = [execute(g, s) for s in items]
    return RequirementSet("WMC", "wmc-sequences", tuple(items), meta={
        "W": [list(w) for w in W],
        "P": [list(p) for p in P],
        "walks": walks,
    })
