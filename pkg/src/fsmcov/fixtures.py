"""Small reference machines used as canonical counterexamples.

Each fixture carries the suites discussed alongside it, so the subsumption
lab can replay the exact argument before falling back to random search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Edge, FsmGraph


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: FsmGraph
    suites: dict = field(default_factory=dict)
    note: str = ""


def _g(vertices, start, ends, edges, labels=None):
    labels = labels or {}
    return FsmGraph(
        vertices,
        [Edge(i, s, t, *labels.get(i, (None, None))) for i, s, t in edges],
        start,
        ends,
    )


DIAMOND = Fixture(
    "FIX-DIAMOND",
    _g("123", "1", ["3"],
       [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")]),
    suites={"edge-cover": [["a", "b"], ["c", "d"]]},
    note="two parallel-edge stages; {a-b, c-d} tours every edge but not a-d or c-b",
)

SELFLOOP = Fixture(
    "FIX-SELFLOOP",
    _g("1234", "1", ["3", "4"],
       [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "2", "2")]),
    suites={"prime-set": [["a", "b"], ["a", "c"], ["d"]],
            "prime-paths": [["a", "b"], ["a", "c"], ["a", "d", "b"]]},
    note="prime paths are a-b, a-c and the self-loop d; d-b and d-d are never forced",
)

TRIPLE = Fixture(
    "FIX-TRIPLE",
    _g("1234", "1", ["4"],
       [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "2", "3"),
        ("e", "3", "4"), ("f", "3", "4")]),
    suites={"all-but-ace": [[x, y, z] for x in "ab" for y in "cd" for z in "ef"
                            if (x, y, z) != ("a", "c", "e")]},
    note="every complete path is prime; dropping a-c-e keeps all edge pairs",
)

TWOLOOPS = Fixture(
    "FIX-TWOLOOPS",
    _g("12345", "1", ["3"],
       [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "4", "2"),
        ("e", "2", "5"), ("f", "5", "2")]),
    suites={
        "basis": [["a", "b"], ["a", "c", "d", "b"], ["a", "e", "f", "b"]],
        "interleaved": [["a", "b"], ["a", "c", "d", "e", "f", "b"],
                        ["a", "e", "f", "c", "d", "b"]],
    },
    note="two loops through vertex 2; the interleaved suite misses pairs d-c and f-e",
)

ONELOOP = Fixture(
    "FIX-ONELOOP",
    _g("1234", "1", ["3"],
       [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "4", "2")]),
    suites={"basis": [["a", "b"], ["a", "c", "d", "b"]]},
    note="a basis suite that never takes the loop twice, so prime path d-c is absent",
)

# Inputs x, y, z. Edge e carries output 2 so that s and r are distinguishable.
WGRAPH = Fixture(
    "FIX-WGRAPH",
    _g(["s", "q", "r", "t1", "t2"], "s", ["t1", "t2"],
       [("a", "s", "q"), ("b", "q", "t1"), ("c", "q", "t2"), ("d", "q", "r"),
        ("e", "r", "q")],
       labels={"a": ("x", "0"), "b": ("x", "1"), "c": ("y", "1"),
               "d": ("z", "0"), "e": ("x", "2")}),
    suites={"printed-basis": [["a", "b"], ["a", "c"], ["a", "d", "e", "b"],
                              ["a", "d", "e", "c"]]},
    note="after a-d-e the W suffix exercises only one of b, c, d",
)

NODE = Fixture(
    "FIX-NODE",
    _g("123", "1", ["3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]),
    suites={"node-cover": [["a", "b"]]},
    note="{a-b} visits every vertex but skips edge c",
)

ROUNDTRIP = Fixture(
    "FIX-ROUNDTRIP",
    _g("1234", "1", ["4"],
       [("a", "1", "2"), ("c", "2", "1"), ("b", "1", "3"), ("d", "3", "1"),
        ("f", "1", "4")]),
    suites={"edge-cover": [["a", "c", "f"], ["b", "d", "f"]]},
    note="{a-c-f, b-d-f} tours every edge but not the round trips c-a or d-b",
)

ALL = (DIAMOND, SELFLOOP, TRIPLE, TWOLOOPS, ONELOOP, WGRAPH, NODE, ROUNDTRIP)
BY_NAME = {f.name: f for f in ALL}


def get(name: str) -> Fixture:
    key = name.upper()
    if not key.startswith("FIX-"):
        key = "FIX-" + key
    return BY_NAME[key]
