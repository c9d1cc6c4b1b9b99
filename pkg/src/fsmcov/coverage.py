"""Decide whether a test suite satisfies a criterion on a graph."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .criteria import Criterion
from .errors import FsmCovError
from .graph import FsmGraph
from .paths import TestSuite, subpaths, vertex_sequence
from .requirements import RankTracker, collapse_loops, path_vector, requirements_for
from .requirements.basis import is_complete

SUBPATH_KINDS = {"EPC", "NSC", "PPC", "CRTC", "APC", "SPC"}


@dataclass(frozen=True)
class CoverageReport:
    criterion: str
    satisfied: bool
    covered: tuple
    missing: tuple
    ratio: Fraction
    meta: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        def enc(x):
            return [enc(y) for y in x] if isinstance(x, (tuple, list)) else x

        d = {
            "criterion": self.criterion,
            "satisfied": self.satisfied,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "covered": enc(self.covered),
            "missing": enc(self.missing),
        }
        if self.meta:
            d["meta"] = self.meta
        return d

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _report(c, covered, missing, meta=None):
    total = len(covered) + len(missing)
    ratio = Fraction(len(covered), total) if total else Fraction(1)
    return CoverageReport(c.label, not missing, tuple(covered), tuple(missing), ratio,
                          meta or {})


def _split(items, is_covered):
    covered, missing = [], []
    for r in items:
        (covered if is_covered(r) else missing).append(r)
    return covered, missing


def _bic_path_hits(g, t, reqs, depth_bound):
    key = ("bic", depth_bound, t)
    if key in reqs.memo:
        return reqs.memo[key]
    wanted = reqs.item_set
    truncated = bool(reqs.meta.get("truncated"))
    hit = set()
    n = len(t)
    for i in range(n):
        if g.edge(t[i]).source != g.start:
            continue
        for j in range(i, n):
            if g.edge(t[j]).target not in g.ends and not truncated:
                continue
            seg = collapse_loops(g, t[i:j + 1], depth_bound)
            if seg in wanted:
                hit.add(seg)
    reqs.memo[key] = frozenset(hit)
    return reqs.memo[key]


def _bic_covered(g, suite, reqs, depth_bound):
    hit = set()
    for t in suite:
        hit |= _bic_path_hits(g, tuple(t), reqs, depth_bound)
    return hit


def check(g: FsmGraph, suite: TestSuite, c: Criterion, reqs=None) -> CoverageReport:
    """Coverage of ``suite`` against ``c`` on ``g``.

    Suite paths may start and end anywhere. Raises InvalidPathError or
    UnknownEdgeError for a suite path that is not a walk in ``g`` and
    CriterionInapplicableError when ``c`` does not apply to ``g``. Pass
    ``reqs`` to reuse a requirement set already computed for ``(g, c)``.
    """
    suite = TestSuite(suite) if not isinstance(suite, TestSuite) else suite
    suite.validate(g)
    if reqs is None:
        reqs = requirements_for(g, c)
    k = c.kind

    if k == "NC":
        seen = {v for t in suite for v in vertex_sequence(g, t)}
        return _report(c, *_split(reqs.items, seen.__contains__))

    if k == "EC":
        seen = {e for t in suite for e in t}
        return _report(c, *_split(reqs.items, seen.__contains__))

    if k == "BC":
        # A branch counts as exercised once each of its edges has been traversed.
        seen = {e for t in suite for e in t}
        return _report(c, *_split(reqs.items, lambda r: all(e in seen for e in r)))

    if k in SUBPATH_KINDS:
        pool = set()
        for t in suite:
            pool |= subpaths(t, reqs.longest)
        return _report(c, *_split(reqs.items, pool.__contains__))

    if k == "SRTC":
        pool = set()
        for t in suite:
            pool |= subpaths(t, len(g.vertices))
        groups = reqs.meta["groups"]
        covered, missing = _split(list(groups), lambda v: any(p in pool for p in groups[v]))
        return _report(c, covered, missing, {
            "toured": [list(p) for p in reqs.items if p in pool]})

    if k == "BPC":
        tracker = RankTracker(len(g.edges) + len(g.ends))
        for t in suite:
            if is_complete(g, t):
                tracker.add(path_vector(g, t))
        covered, missing = _split(
            reqs.items, lambda p: not tracker.independent(path_vector(g, p)))
        return _report(c, covered, missing, {
            "rank": tracker.rank, "cyclomatic": reqs.meta["cyclomatic"]})

    if k == "WMC":
        starts = [t for t in suite if g.edge(t[0]).source == g.start]
        walks = dict(zip(reqs.items, reqs.meta["walks"]))
        covered, missing = _split(
            reqs.items,
            lambda s: not walks[s] or any(t[:len(walks[s])] == walks[s] for t in starts))
        return _report(c, covered, missing, {"W": reqs.meta["W"], "P": reqs.meta["P"]})

    if k == "BIC":
        hit = _bic_covered(g, suite, reqs, c.depth_bound)
        return _report(c, *_split(reqs.items, hit.__contains__))

    raise ValueError(f"unhandled criterion {k}")


def path_contribution(g: FsmGraph, p, c: Criterion, reqs) -> set:
    """What the single path ``p`` covers towards ``c``.

    For every criterion except BPC the coverage of a suite is the union of
    these sets over its paths (for BC the atoms are edges, not branches).
    """
    k = c.kind
    if k == "BC":
        return set(p)
    if k in SUBPATH_KINDS:
        return subpaths(p, reqs.longest) & reqs.item_set
    if k == "BIC":
        return _bic_covered(g, [p], reqs, c.depth_bound)
    if k == "BPC":
        raise ValueError("basis path coverage is not a union of per-path contributions")
    return set(check(g, TestSuite([p]), c, reqs).covered)


def check_all(g: FsmGraph, suite: TestSuite, criteria) -> list:
    """``check`` for each criterion in order; a failing item yields its exception."""
    out = []
    for c in criteria:
        try:
            out.append(check(g, suite, c))
        except FsmCovError as exc:
            out.append(exc)
    return out
