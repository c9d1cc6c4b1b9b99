from __future__ import annotations

import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import to_nx

from fsmcov.errors import ConfigError, UnknownPairError
from fsmcov.graph import reachable_vertices
from fsmcov.lab import (ORDER, TABLE, RandomGraphSpec, Witness, attach_labels, cells,
                        expected_relation, open_questions, random_graph, random_mealy,
                        recheck_witness, run_table_verification, satisfies,
                        search_counterexample, verify_cell, verify_subsumes)
from fsmcov.paths import TestSuite
from fsmcov.requirements import characterization_set

SPEC = RandomGraphSpec(seed=7)


def test_table_shape():
    assert len(ORDER) == 11
    assert len(TABLE) == 110 == len(cells())
    assert expected_relation("EC", "BC") == "E" == expected_relation("BC", "EC")
    assert expected_relation("APC", "BIC") == "S"
    assert expected_relation("PPC", "BPC") == "IorS"
    with pytest.raises(UnknownPairError):
        expected_relation("EC", "EC")
    with pytest.raises(UnknownPairError):
        expected_relation("EC", "NSC")


def test_table_symmetry():
    # Equalities and incomparabilities are symmetric in a consistent matrix.
    for (r, c), v in TABLE.items():
        if v in ("E", "I"):
            assert TABLE[(c, r)] == v, (r, c)


def test_edge_does_not_subsume_edge_pairs():
    v = search_counterexample("EC", "EPC", SPEC, budget=5)
    assert v.status == "refuted" and v.witness.source.startswith("fixture FIX-DIAMOND")
    assert recheck_witness("EC", "EPC", v.witness)
    assert recheck_witness("EC", "EPC", json.loads(v.to_json())["witness"])


def test_edge_pairs_do_not_subsume_prime_paths():
    v = search_counterexample("EPC", "PPC", SPEC, budget=5)
    assert v.status == "refuted"
    assert recheck_witness("EPC", "PPC", v.witness)


def test_implication_trials():
    v = verify_subsumes("EPC", "EC", SPEC, trials=20)
    assert v.status == "confirmed" and v.violations == 0 and v.agrees
    assert not v.contradicts


def test_wrong_implication_is_refuted():
    v = verify_subsumes("EC", "EPC", SPEC, trials=30)
    assert v.status == "refuted" and v.witness is not None
    assert recheck_witness("EC", "EPC", v.witness)


def test_all_paths_needs_search():
    with pytest.raises(ConfigError):
        verify_subsumes("EC", "APC", SPEC, trials=1)


def test_cells():
    eq = verify_cell("EC", "BC", SPEC, 10)
    assert eq.reverse is not None and eq.agrees
    inc = verify_cell("NC", "SRTC", SPEC, 20)
    assert inc.agrees, inc.to_dict()
    n = verify_cell("EPC", "SRTC", SPEC, 5)
    assert n.exploratory and n.agrees is None


def test_verdict_json_is_stable():
    a = verify_cell("PPC", "EPC", SPEC, 10).to_json()
    b = verify_cell("PPC", "EPC", SPEC, 10).to_json()
    assert a == b


def test_subset_run():
    out = run_table_verification(SPEC, trials=5, only={("EC", "BC"), ("EC", "EPC")})
    s = out["summary"]
    assert s["cells"] == 2 and s["agree"] == 2 and s["contradictions"] == 0
    assert [q["id"] for q in out["open_questions"]] == [
        "twoloops-interleaved-edge-pairs", "wgraph-printed-basis-rank"]


def test_open_questions_evidence():
    twoloops, wgraph = open_questions()
    assert not twoloops["edge_pair_satisfied"]
    assert twoloops["edge_pair_missing"] == ["d-c", "f-e"]
    assert (wgraph["paths"], wgraph["rank"], wgraph["cyclomatic"]) == (4, 3, 3)


def test_satisfies_treats_cyclic_all_paths_as_unsatisfiable(oneloop):
    from fsmcov.criteria import Criterion
    assert not satisfies(oneloop, TestSuite([("a", "b")]), Criterion("APC"))


def test_witness_dict(diamond):
    w = Witness("x", diamond, TestSuite([("a", "b")]), ["c"])
    assert set(w.to_dict()) == {"source", "graph", "suite", "missing"}


def test_spec_validation():
    with pytest.raises(ConfigError):
        RandomGraphSpec(min_vertices=5, max_vertices=3)
    with pytest.raises(ConfigError):
        RandomGraphSpec(cycles="sometimes")
    assert SPEC.with_(max_out=2).max_out == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from(["allow", "require", "forbid"]))
def test_random_graph_shape(seed, cycles):
    spec = RandomGraphSpec(cycles=cycles)
    g = random_graph(random.Random(seed), spec)
    assert spec.min_vertices <= len(g.vertices) <= spec.max_vertices
    assert reachable_vertices(g) == set(g.vertices)
    assert g.ends and g.start not in g.ends
    if cycles == "forbid":
        assert g.is_acyclic
    if cycles == "require":
        assert not g.is_acyclic
    assert g.is_acyclic == nx.is_directed_acyclic_graph(to_nx(g))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_random_graph_is_reproducible(seed):
    a = random_graph(random.Random(seed), SPEC)
    b = random_graph(random.Random(seed), SPEC)
    assert a.to_json() == b.to_json()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_labels_are_deterministic(seed):
    rng = random.Random(seed)
    g = attach_labels(rng, random_graph(rng, SPEC))
    assert g.has_labels
    for v in g.vertices:
        ins = [e.input for e in g.out_edges(v)]
        assert len(ins) == len(set(ins))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_random_mealy_is_minimal(seed):
    g = random_mealy(random.Random(seed))
    assert 3 <= len(g.vertices) <= 6
    assert reachable_vertices(g) == set(g.vertices)
    assert characterization_set(g)
