"""Empirical checks of the relation matrix.

Subsumption cells are exercised by randomized implication trials; negative
cells are settled by a stored witness (graph plus suite) that satisfies the
row criterion and fails the column criterion. Fixtures are replayed before any
random search, so the canonical hand-made counterexamples win when they work.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .. import fixtures
from ..coverage import check
from ..criteria import Criterion
from ..errors import (ConfigError, CriterionInapplicableError, ResourceError,
                      UnsatisfiableError)
from ..generator import GenConfig, generate, minimize
from ..graph import FsmGraph, graph_from_dict
from ..paths import TestSuite, fmt, suite_from_dict
from ..requirements import requirements_for
from .randgraph import RandomGraphSpec, random_graph
from .table import ORDER, cells, expected_relation

ROUND_TRIP = {"SRTC", "CRTC"}
_SKIPPABLE = (CriterionInapplicableError, ResourceError, UnsatisfiableError)


def _crit(c) -> Criterion:
    return Criterion(c.upper()) if isinstance(c, str) else c


class _Oracle:
    """Per-graph cache of requirement sets; APC on a cyclic graph is never met."""

    def __init__(self, g: FsmGraph):
        self.g = g
        self._reqs = {}

    def reqs(self, c):
        if c not in self._reqs:
            self._reqs[c] = requirements_for(self.g, c)
        return self._reqs[c]

    def report(self, suite, c):
        if c.kind == "APC" and not self.g.is_acyclic:
            return None
        return check(self.g, suite, c, self.reqs(c))

    def satisfies(self, suite, c) -> bool:
        r = self.report(suite, c)
        return r is not None and r.satisfied


def satisfies(g: FsmGraph, suite, c: Criterion) -> bool:
    """Like ``check(...).satisfied`` except that all-paths coverage on a cyclic
    graph counts as unsatisfiable instead of raising."""
    return _Oracle(g).satisfies(TestSuite(suite), c)


@dataclass
class Witness:
    source: str
    graph: FsmGraph
    suite: TestSuite
    missing: list

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "graph": self.graph.to_dict(),
            "suite": self.suite.to_dict(),
            "missing": self.missing,
        }


def _missing(oracle, suite, c):
    r = oracle.report(suite, c)
    if r is None:
        return ["unsatisfiable: the graph has a cycle, so the number of possible paths is infinite"]
    return [fmt(m) if isinstance(m, tuple) else m for m in r.missing]


def recheck_witness(c1, c2, w) -> bool:
    """True when the witness still satisfies ``c1`` and fails ``c2``."""
    c1, c2 = _crit(c1), _crit(c2)
    if isinstance(w, dict):
        g, suite = graph_from_dict(w["graph"]), suite_from_dict(w["suite"])
    else:
        g, suite = w.graph, w.suite
    oracle = _Oracle(g)
    return oracle.satisfies(suite, c1) and not oracle.satisfies(suite, c2)


@dataclass
class RelationVerdict:
    pair: tuple
    expected: str
    status: str  # confirmed, refuted or inconclusive
    trials: int
    violations: int = 0
    skipped: int = 0
    witness: Optional[Witness] = None
    reverse: Optional["RelationVerdict"] = None
    exploratory: bool = False
    notes: list = field(default_factory=list)

    @property
    def agrees(self) -> Optional[bool]:
        """Whether the evidence matches the table entry (None when nothing is asserted)."""
        if self.exploratory:
            return None
        if self.expected == "S":
            return self.status == "confirmed"
        if self.expected == "E":
            return self.status == "confirmed" and self.reverse.status == "confirmed"
        if self.expected == "NS":
            return self.status == "refuted"
        if self.expected == "I":
            return self.status == "refuted" and self.reverse.status == "refuted"
        return None

    @property
    def contradicts(self) -> bool:
        """A trial outcome that is impossible if the table entry is right."""
        if self.expected in ("S", "E"):
            return self.status == "refuted" or (
                self.reverse is not None and self.reverse.status == "refuted")
        return False

    def to_dict(self) -> dict:
        d = {
            "pair": list(self.pair),
            "expected": self.expected,
            "status": self.status,
            "trials": self.trials,
            "violations": self.violations,
            "skipped": self.skipped,
        }
        if self.exploratory:
            d["exploratory"] = True
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.reverse is not None:
            d["reverse"] = self.reverse.to_dict()
        if self.notes:
            d["notes"] = self.notes
        return d

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _trial_rng(seed, c1, c2, i):
    return random.Random(f"{seed}/{c1.label}/{c2.label}/{i}")


def regime(c1: Criterion, c2: Criterion, spec: RandomGraphSpec, rng) -> RandomGraphSpec:
    """Graph distribution for one trial of the pair (c1, c2)."""
    kinds = {c1.kind, c2.kind}
    changes = {}
    if c1.kind == "APC":
        changes["cycles"] = "forbid"
    elif kinds & ROUND_TRIP:
        changes["cycles"] = "require" if rng.random() < 0.8 else "forbid"
    else:
        changes["cycles"] = rng.choice(["forbid", "require"])
    if "BIC" in kinds:
        changes["max_vertices"] = min(spec.max_vertices, max(spec.min_vertices, 5))
        changes["max_out"] = min(spec.max_out, 2)
        changes["min_out"] = min(spec.min_out, changes["max_out"])
    if "WMC" in kinds:
        changes["labels"] = True
        changes["alphabet"] = max(spec.alphabet, 2)
        changes["max_out"] = min(changes.get("max_out", spec.max_out), changes["alphabet"])
        changes["min_out"] = min(spec.min_out, changes["max_out"])
    return spec.with_(**changes)


def _random_walk(rng, g, max_len=6):
    v = rng.choice(g.vertices)
    walk = []
    for _ in range(rng.randint(1, max_len)):
        outs = g.out_edges(v)
        if not outs:
            break
        e = rng.choice(outs)
        walk.append(e.id)
        v = e.target
    return tuple(walk)


def _shuffled_minimize(oracle, suite, c, rng):
    order = list(range(len(TestSuite(suite).paths)))
    rng.shuffle(order)
    return minimize(oracle.g, suite, c, order, oracle.reqs(c))


def _c1_suite(rng, g, c1, oracle):
    """A c1-satisfying suite: generated, then minimized or padded at random."""
    cfg = GenConfig(anchor_start=rng.random() < 0.8,
                    anchor_end=rng.choice([None, None, False]))
    suite = generate(g, c1, cfg)
    roll = rng.random()
    if roll < 0.4:
        suite = _shuffled_minimize(oracle, suite, c1, rng)
    elif roll < 0.7:
        extra = [_random_walk(rng, g) for _ in range(rng.randint(1, 2))]
        suite = suite.plus(*[w for w in extra if w])
    return suite


def verify_subsumes(c1, c2, spec: RandomGraphSpec = RandomGraphSpec(), trials: int = 200,
                    expected: str = None) -> RelationVerdict:
    """Implication trials: every generated c1-satisfying suite must satisfy c2."""
    c1, c2 = _crit(c1), _crit(c2)
    if c2.kind == "APC":
        raise ConfigError("all-paths coverage as the implied criterion needs a witness search")
    violations = skipped = 0
    witness = None
    for i in range(trials):
        rng = _trial_rng(spec.seed, c1, c2, i)
        g = random_graph(rng, regime(c1, c2, spec, rng))
        oracle = _Oracle(g)
        try:
            suite = _c1_suite(rng, g, c1, oracle)
            if not oracle.satisfies(suite, c1):
                raise AssertionError(f"generated suite fails {c1.label}")
            ok = oracle.satisfies(suite, c2)
        except _SKIPPABLE:
            skipped += 1
            continue
        if not ok:
            violations += 1
            if witness is None:
                witness = Witness(f"random trial {i}", g, suite.canonical(),
                                  _missing(oracle, suite, c2))
    done = trials - skipped
    status = "refuted" if violations else ("confirmed" if done else "inconclusive")
    return RelationVerdict((c1.label, c2.label), expected or _expected(c1, c2), status,
                           trials, violations, skipped, witness)


def _expected(c1, c2):
    try:
        return expected_relation(c1, c2)
    except Exception:
        return "?"


def _candidates(rng, g, c1, oracle, named=()):
    """Suites worth trying as witnesses, cheapest and most canonical first."""
    for name, suite in named:
        yield name, TestSuite(suite)
    yield "empty suite", TestSuite()
    for anchors in ((True, None), (True, False), (False, False)):
        try:
            suite = generate(g, c1, GenConfig(anchor_start=anchors[0], anchor_end=anchors[1]))
        except _SKIPPABLE:
            continue
        tag = f"generated(anchor_start={anchors[0]}, anchor_end={anchors[1]})"
        yield tag, suite
        yield tag + " minimized", minimize(g, suite, c1, reqs=oracle.reqs(c1))
        yield tag + " shuffled-minimized", _shuffled_minimize(oracle, suite, c1, rng)


def _try_graph(rng, g, c1, c2, source, named=()):
    oracle = _Oracle(g)
    try:
        if c1.kind == "APC" and not g.is_acyclic:
            return None
        for tag, suite in _candidates(rng, g, c1, oracle, named):
            if oracle.satisfies(suite, c1) and not oracle.satisfies(suite, c2):
                return Witness(f"{source}, {tag}", g, suite.canonical(),
                               _missing(oracle, suite, c2))
    except _SKIPPABLE:
        return None
    return None


def search_counterexample(c1, c2, spec: RandomGraphSpec = RandomGraphSpec(),
                          budget: int = 200, expected: str = None) -> RelationVerdict:
    """Look for a suite satisfying c1 but not c2: fixtures, then random graphs."""
    c1, c2 = _crit(c1), _crit(c2)
    for fx in fixtures.ALL:
        rng = random.Random(f"{spec.seed}/{c1.label}/{c2.label}/{fx.name}")
        w = _try_graph(rng, fx.graph, c1, c2, f"fixture {fx.name}",
                       [(f"suite {k}", v) for k, v in fx.suites.items()])
        if w is not None:
            return RelationVerdict((c1.label, c2.label), expected or _expected(c1, c2),
                                   "refuted", 0, 1, 0, w)
    for i in range(budget):
        rng = _trial_rng(spec.seed, c1, c2, i)
        g = random_graph(rng, regime(c1, c2, spec, rng))
        w = _try_graph(rng, g, c1, c2, f"random trial {i}")
        if w is not None:
            return RelationVerdict((c1.label, c2.label), expected or _expected(c1, c2),
                                   "refuted", i + 1, 1, 0, w)
    return RelationVerdict((c1.label, c2.label), expected or _expected(c1, c2),
                           "inconclusive", budget)


def open_questions() -> list:
    """Fixture claims that do not hold under the implemented definitions."""
    from ..criteria import BPC, EPC
    from ..requirements import RankTracker, path_vector

    two = fixtures.TWOLOOPS
    suite = TestSuite(two.suites["interleaved"])
    epc = check(two.graph, suite, EPC)
    bpc = check(two.graph, suite, BPC)

    wg = fixtures.WGRAPH
    printed = TestSuite(wg.suites["printed-basis"])
    tracker = RankTracker(len(wg.graph.edges) + len(wg.graph.ends))
    for p in printed:
        tracker.add(path_vector(wg.graph, p))
    cyclomatic = requirements_for(wg.graph, BPC).meta["cyclomatic"]

    return [
        {
            "id": "twoloops-interleaved-edge-pairs",
            "fixture": two.name,
            "suite": [fmt(p) for p in suite],
            "question": ("The interleaved suite on FIX-TWOLOOPS is meant to satisfy edge-pair "
                         "coverage while failing basis path coverage, but it never tours the "
                         "pairs " + ", ".join(fmt(m) for m in epc.missing) + ". The EPC-vs-BPC "
                         "cell therefore relies on a searched witness."),
            "edge_pair_satisfied": epc.satisfied,
            "edge_pair_missing": [fmt(m) for m in epc.missing],
            "basis_satisfied": bpc.satisfied,
        },
        {
            "id": "wgraph-printed-basis-rank",
            "fixture": wg.name,
            "suite": [fmt(p) for p in printed],
            "question": ("The listed basis on FIX-WGRAPH lists four paths but their path "
                         f"vectors have rank {tracker.rank} (cyclomatic number {cyclomatic} "
                         "with a virtual sink), since a-d-e-c = a-d-e-b + a-c - a-b. It is "
                         "not an independent set."),
            "paths": len(printed),
            "rank": tracker.rank,
            "cyclomatic": cyclomatic,
        },
    ]


def verify_cell(r: str, c: str, spec: RandomGraphSpec, trials: int) -> RelationVerdict:
    """Evidence for the table entry at row ``r``, column ``c``."""
    entry = expected_relation(r, c)
    c1, c2 = Criterion(r), Criterion(c)
    if entry == "S":
        return verify_subsumes(c1, c2, spec, trials, entry)
    if entry == "E":
        v = verify_subsumes(c1, c2, spec, trials, entry)
        v.reverse = verify_subsumes(c2, c1, spec, trials, entry)
        return v
    if entry == "NS":
        return search_counterexample(c1, c2, spec, trials, entry)
    if entry == "I":
        v = search_counterexample(c1, c2, spec, trials, entry)
        v.reverse = search_counterexample(c2, c1, spec, trials, entry)
        return v
    # N and IorS: look for a counterexample without asserting anything.
    v = search_counterexample(c1, c2, spec, trials, entry)
    v.exploratory = True
    return v


def run_table_verification(spec: RandomGraphSpec = RandomGraphSpec(seed=42),
                           trials: int = 200, only=None, progress=None) -> dict:
    """Verify every non-empty cell and summarize agreement with the table.

    ``only`` restricts the run to a collection of (row, column) pairs.
    """
    verdicts = []
    for r, c, _ in cells():
        if only is not None and (r, c) not in only:
            continue
        v = verify_cell(r, c, spec, trials)
        verdicts.append(v)
        if progress is not None:
            progress(v)
    asserted = [v for v in verdicts if not v.exploratory]
    summary = {
        "cells": len(verdicts),
        "asserted": len(asserted),
        "agree": sum(1 for v in asserted if v.agrees),
        "contradictions": sum(1 for v in verdicts if v.contradicts),
        "unresolved": sum(1 for v in asserted if not v.agrees and not v.contradicts),
        "exploratory": len(verdicts) - len(asserted),
        "exploratory_witnesses": sum(1 for v in verdicts
                                     if v.exploratory and v.status == "refuted"),
    }
    return {
        "seed": spec.seed,
        "trials": trials,
        "criteria": list(ORDER),
        "cells": [v.to_dict() for v in verdicts],
        "open_questions": open_questions(),
        "summary": summary,
    }
