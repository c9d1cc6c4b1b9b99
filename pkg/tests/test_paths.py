from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_prime_paths

from fsmcov.criteria import Criterion, nsc, parse_criterion
from fsmcov.errors import InvalidPathError, SchemaError, UnknownEdgeError
from fsmcov.lab import RandomGraphSpec, random_graph
from fsmcov.paths import (TestSuite, check_path, contains_subpath, is_prime, is_simple,
                          is_valid_path, parse_suite_json, subpaths)


def test_valid_paths(oneloop):
    assert is_valid_path(oneloop, ["a", "b"])
    assert is_valid_path(oneloop, ["a", "c", "d", "b"])
    assert not is_valid_path(oneloop, ["b", "a"])
    assert not is_valid_path(oneloop, [])
    # Paths need not start at the start vertex.
    assert is_valid_path(oneloop, ["d", "c"])


def test_unknown_edge(oneloop):
    with pytest.raises(UnknownEdgeError):
        is_valid_path(oneloop, ["a", "zz"])


def test_check_path(oneloop):
    with pytest.raises(InvalidPathError):
        check_path(oneloop, ["b", "a"])


def test_simple(oneloop, selfloop):
    assert is_simple(oneloop, ["c", "d"])
    assert not is_simple(oneloop, ["a", "c", "d"])
    assert is_simple(selfloop, ["d"])


def test_prime(oneloop, triple, selfloop):
    assert is_prime(oneloop, ["d", "c"])
    assert not is_prime(oneloop, ["c"])
    assert is_prime(triple, ["a", "c", "e"])
    assert is_prime(selfloop, ["d"])


def test_contains_subpath():
    assert contains_subpath(["a", "c", "d", "b"], ["c", "d"])
    assert not contains_subpath(["a", "c", "d", "b"], ["d", "c"])
    assert contains_subpath(["a", "b"], ["a", "b"])


def test_subpaths():
    assert subpaths(("a", "b", "c"), 2) == {("a",), ("b",), ("c",), ("a", "b"), ("b", "c")}


def test_suite_json_canonical():
    s = parse_suite_json('{"paths":[["c","d"],["a","b"],["a","b"]]}')
    assert len(s) == 3
    assert s.to_dict() == {"paths": [["a", "b"], ["c", "d"]]}
    with pytest.raises(SchemaError):
        parse_suite_json('{"paths":[[1]]}')
    with pytest.raises(SchemaError):
        parse_suite_json('{"walks":[]}')


def test_empty_suite():
    assert len(TestSuite()) == 0
    assert TestSuite().to_json() == '{"paths": []}'


_SPEC = RandomGraphSpec(min_vertices=3, max_vertices=6, cycles="allow")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_prime_predicate_matches_brute_force(seed):
    from fsmcov.requirements import prime_paths
    g = random_graph(random.Random(seed), _SPEC)
    primes = {tuple(p) for p in prime_paths(g).items}
    assert primes == brute_prime_paths(g)
    assert all(is_prime(g, p) and is_simple(g, p) for p in primes)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=6),
       st.integers(0, 5), st.integers(1, 3))
def test_contains_subpath_transitive(t, i, n):
    r = t[i:i + n] or t
    q = r[:max(1, len(r) - 1)]
    assert contains_subpath(t, t)
    assert contains_subpath(t, r) and contains_subpath(r, q) and contains_subpath(t, q)


@pytest.mark.parametrize("spec, expected", [
    ("ppc", Criterion("PPC")),
    ("NSC:2", nsc(2)),
    ("bic", Criterion("BIC", depth_bound=1)),
    ("bic:2", Criterion("BIC", depth_bound=2)),
])
def test_parse_criterion(spec, expected):
    assert parse_criterion(spec) == expected


@pytest.mark.parametrize("spec", ["nsc", "nsc:-1", "nsc:x", "foo", "ec:3", "bic:0", "spc:x"])
def test_parse_criterion_errors(spec):
    with pytest.raises(SchemaError):
        parse_criterion(spec)


def test_parse_spc_file(tmp_path):
    (tmp_path / "p.json").write_text('{"paths": [["a", "b"]]}')
    c = parse_criterion("spc:@p.json", base_dir=tmp_path)
    assert c.kind == "SPC" and c.specified == (("a", "b"),)


def test_labels():
    assert nsc(3).label == "NSC(3)"
    assert Criterion("BIC").label == "BIC"
    assert Criterion("BIC", depth_bound=2).label == "BIC(2)"
