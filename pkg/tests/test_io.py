from fractions import Fraction

import pytest
import yaml

from pergraph.catalog import bundled_graphs, bundled_specs, chain, random_flower_spec, random_isthmus_spec
from pergraph.graph import GraphError, build_flower
from pergraph.io import (
    ParallelSpec,
    SpecParseError,
    builtin_names,
    dump_graph,
    dump_spec,
    load,
    loads,
    parse_rational,
    to_graph,
)


def test_parse_rational():
    assert parse_rational("3/4", "x") == Fraction(3, 4)
    assert parse_rational(-2, "x") == -2
    for bad in (0.5, True, "abc", None, "1/0"):
        with pytest.raises(SpecParseError):
            parse_rational(bad, "x")


def test_builtin_files_match_constructors():
    graphs, specs = bundled_graphs(), bundled_specs()
    assert set(builtin_names()) == set(graphs) | set(specs)
    for name, g in graphs.items():
        loaded = load("builtin:" + name)
        assert loaded == g
        assert loaded.isthmus == g.isthmus
    for name, spec in specs.items():
        assert load("builtin:" + name) == spec


@pytest.mark.parametrize("seed", range(5))
def test_spec_roundtrip(seed):
    import random

    rng = random.Random(seed)
    for spec in (random_flower_spec(rng, 2, [1, 2, 3], 2), random_isthmus_spec(rng)):
        assert loads(dump_spec(spec)) == spec
        g = to_graph(spec)
        assert loads(dump_graph(g)) == g


def test_graph_by_vertex_names():
    text = """
kind: graph
dimension: 1
vertices:
  - {name: x, potential: 1/2}
edges:
  - {u: x, v: x, shift: [1], weight: 2}
"""
    assert loads(text) == chain(Fraction(1, 2), 2)


def test_unknown_field_rejected():
    with pytest.raises(SpecParseError, match="unknown"):
        loads("kind: graph\ndimension: 1\nvertices: []\nedges: []\ncolour: red\n")


def test_float_weight_rejected():
    text = "kind: graph\ndimension: 1\nvertices: [{name: a, potential: 0}]\nedges: [{u: a, v: a, shift: [1], weight: 0.5}]\n"
    with pytest.raises(SpecParseError):
        loads(text)


def test_semantic_error_is_graph_error():
    text = "kind: graph\ndimension: 1\nvertices: [{name: a, potential: 0}]\nedges: [{u: a, v: a, shift: [0], weight: 1}]\n"
    with pytest.raises(GraphError):
        loads(text)


def test_bad_yaml():
    with pytest.raises(SpecParseError):
        loads("kind: [graph\n")


def test_parallel_spec():
    obj = loads("kind: parallel\nbase: builtin:chain\na: 1/2\n")
    assert isinstance(obj, ParallelSpec)
    g = to_graph(obj)
    assert g.dimension == 2


def test_missing_file():
    with pytest.raises(SpecParseError):
        load("/nonexistent/graph.yaml")


def test_dump_is_plain_yaml():
    data = yaml.safe_load(dump_graph(build_flower(random_flower_spec(__import__("random").Random(0), 1, [2]))))
    assert data["kind"] == "graph"
    assert all(isinstance(e["weight"], (int, str)) for e in data["edges"])
