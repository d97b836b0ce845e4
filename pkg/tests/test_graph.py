import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pergraph.catalog import (
    bundled_graphs,
    chain,
    decorated_square_spec,
    lieb,
    lieb_flower,
    middle_isthmus_spec,
    random_flower_spec,
    random_isthmus_spec,
    singular_house,
)
from pergraph.graph import (
    EdgeOrbit,
    FlowerSpec,
    GraphError,
    PeriodicGraph,
    Petal,
    Projection,
    Vertex,
    bounded_components,
    build_flower,
    build_isthmus,
    coordinate_projection,
    enumerate_projections,
    has_two_cycle_petal,
    is_connected,
    parallel_extension,
    shift_group_index,
    validate,
)


def test_edge_orientation_is_canonical():
    a = PeriodicGraph(2, (("x", 0), ("y", 0)), ((1, 0, (-1, 0), 2),))
    b = PeriodicGraph(2, (("x", 0), ("y", 0)), ((0, 1, (1, 0), 2),))
    assert a == b
    loop1 = PeriodicGraph(1, (("x", 0),), ((0, 0, (-1,), 1),))
    assert loop1 == chain()


def test_validate_reports_problems():
    g = PeriodicGraph(1, (("x", 0), ("x", 1)), ((0, 0, (0,), 1), (0, 1, (0,), 0)))
    msgs = validate(g)
    assert any("duplicate vertex names" in m for m in msgs)
    assert any("zero-shift loop" in m for m in msgs)
    assert any("zero weight" in m for m in msgs)
    assert validate(lieb()) == []


def test_wrong_shift_length_rejected():
    with pytest.raises(GraphError):
        PeriodicGraph(2, (("x", 0),), ((0, 0, (1,), 1),))


@pytest.mark.parametrize("name,g", bundled_graphs().items())
def test_bundled_graphs_are_valid_and_connected(name, g):
    assert validate(g) == []
    assert is_connected(g)


def test_connectivity_detects_sublattice():
    # a chain that only hops by 2 splits into two infinite components
    g = PeriodicGraph(1, (("x", 0),), ((0, 0, (2,), 1),))
    assert not is_connected(g)
    assert bounded_components(g) == []
    assert shift_group_index([(2,)], 1) == 2


def test_bounded_component():
    g = PeriodicGraph(1, (("x", 0), ("y", 0)), ((0, 0, (1,), 1),))
    assert not is_connected(g)
    assert bounded_components(g) == [[1]]


def test_shift_group_index_oracle():
    assert shift_group_index([(1, 0), (0, 1)], 2) == 1
    assert shift_group_index([(2, 0), (0, 3)], 2) == 6
    assert shift_group_index([(1, 1), (1, -1)], 2) == 2
    assert shift_group_index([(1, 0)], 2) == 0


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_projection_count(d):
    projs = enumerate_projections(d)
    assert len(projs) == 3**d - 2**d - 1
    assert len({(p.kept, p.signs) for p in projs}) == len(projs)
    for p in projs:
        p.check(d)


def test_projection_check_rejects_bad_sets():
    with pytest.raises(GraphError):
        Projection((1, 2), ()).check(2)
    with pytest.raises(GraphError):
        Projection((1,), ((2, 0),)).check(2)


def test_projection_of_lieb_fixing_z1():
    g = lieb(0, 0, 0, 1, 1, 1, 1)
    gp = coordinate_projection(g, Projection((2,), ((1, -1),)))
    assert gp.dimension == 1
    # b + d z1^{-1} at z1 = -1 with b = d cancels, so v is cut off
    assert [gp.names[i] for c in bounded_components(gp) for i in c] == ["v"]


def test_flower_build_counts():
    spec = lieb_flower()
    g = build_flower(spec)
    assert g.size == 3
    assert len(g.edges) == 4
    assert has_two_cycle_petal(spec)


def test_flower_requires_surjective_annotation():
    spec = FlowerSpec(2, "u", (("u", 0),), (Petal(("u",), (1,), 0, 1),))
    with pytest.raises(GraphError):
        spec.check()


def test_parallel_loops_merge():
    spec = FlowerSpec(1, "x", (("x", 0),), (Petal(("x",), (2,), 0, 1), Petal(("x",), (3,), 0, 1)))
    assert build_flower(spec) == chain(0, 5)
    cancel = FlowerSpec(
        2, "u", (("u", 0),),
        (Petal(("u",), (2,), 0, 1), Petal(("u",), (-2,), 0, 1), Petal(("u",), (1,), 0, 2)),
    )
    assert len(build_flower(cancel).edges) == 1


def test_flower_petals_must_be_disjoint():
    spec = FlowerSpec(
        1, "u", (("u", 0), ("v", 0)),
        (Petal(("u", "v"), (1, 1), 0, 1), Petal(("u", "v"), (1, 1), 0, 1)),
    )
    with pytest.raises(GraphError):
        spec.check()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_random_flowers_are_connected(seed, d):
    rng = random.Random(seed)
    lengths = [rng.randint(1, 4) for _ in range(d + rng.randint(0, 2))]
    g = build_flower(random_flower_spec(rng, d, lengths, stem_size=rng.randint(0, 2)))
    assert validate(g) == []
    assert is_connected(g)
    assert g.size == 1 + sum(L - 1 for L in lengths) + len([v for v in g.names if v.startswith("s")])


def test_isthmus_layout():
    g = build_isthmus(middle_isthmus_spec())
    assert g.size == 9
    assert g.names[:4] == ["v-2", "v-1", "v0", "v1"]
    lay = g.isthmus
    assert lay.position(1) == 3
    assert list(lay.indices) == list(range(-2, 7))
    assert is_connected(g)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_isthmus_valid(seed):
    g = build_isthmus(random_isthmus_spec(random.Random(seed)))
    assert validate(g) == []


def test_isthmus_rejects_missing_cut_weight():
    spec = decorated_square_spec()
    bad = type(spec)(**{**spec.__dict__, "cut_weights": (None, None)})
    with pytest.raises(GraphError):
        bad.check()


def test_parallel_extension_shape():
    g = singular_house(3, 0, 3, 2, 2, 1)
    ga = parallel_extension(g, Fraction(1, 2))
    assert ga.dimension == 3
    assert len(ga.edges) == len(g.edges) + g.size
    assert all(e.shift[-1] == 0 for e in ga.edges[: len(g.edges)] if e.u != e.v)
    with pytest.raises(GraphError):
        parallel_extension(g, 0)


def test_with_labels_and_scaled():
    g = lieb()
    h = g.scaled(Fraction(1, 2))
    assert [e.weight for e in h.edges] == [e.weight / 2 for e in g.edges]
    assert h.potentials == g.potentials
    with pytest.raises(GraphError):
        g.with_labels([0], [])


def test_vertex_and_edge_types():
    g = PeriodicGraph(1, (Vertex("a", Fraction(1, 3)),), (EdgeOrbit(0, 0, (1,), Fraction(2)),))
    assert g.potentials == [Fraction(1, 3)]
    assert g.index("a") == 0
