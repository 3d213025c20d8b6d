import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coordrig import (
    GraphError,
    build,
    parse_coloured_graph,
    serialize,
    subgraph_by_colours,
)
from coordrig.corpus import random_coloured_graph

TRIANGLE = '{"n":3,"k":0,"edges":[[0,1,0],[1,2,0],[0,2,0]]}'
QUAD_RIGID = '{"n":4,"k":1,"edges":[[0,1,1],[0,2,0],[0,3,0],[1,2,0],[1,3,1],[2,3,1]]}'


def test_parse_triangle_uncoloured():
    g = parse_coloured_graph(TRIANGLE)
    assert (g.n, g.m, g.k) == (3, 3, 0)
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.colours == (0, 0, 0)


def test_parse_quad_with_one_class():
    g = parse_coloured_graph(QUAD_RIGID)
    assert (g.n, g.m, g.k) == (4, 6, 1)
    assert g.colour_class(1) == ((0, 1), (1, 3), (2, 3))


def test_parse_rejects_empty_class():
    doc = '{"n":3,"k":2,"edges":[[0,1,1],[1,2,1],[0,2,0]]}'
    with pytest.raises(GraphError, match="class 2 is empty"):
        parse_coloured_graph(doc)


@pytest.mark.parametrize(
    "doc,match",
    [
        ("[1,2]", "object"),
        ('{"n":2,"k":0}', "edges"),
        ('{"n":2,"k":0,"edges":[[0,0,0]]}', "u < v"),
        ('{"n":2,"k":0,"edges":[[1,0,0]]}', "u < v"),
        ('{"n":2,"k":0,"edges":[[0,1,0],[0,1,0]]}', "duplicate"),
        ('{"n":2,"k":0,"edges":[[0,1,1]]}', "out of range"),
        ('{"n":2,"k":0,"edges":[[0,2,0]]}', "violates"),
        ('{"n":2,"k":1,"edges":[[0,1,2]]}', "out of range"),
        ('{"n":0,"k":0,"edges":[]}', "positive"),
        ('{"n":2,"k":0,"edges":[[0,1,0]], "coords":[[0,0]]}', "coords"),
        ('{"n":2,"k":1,"edges":[[0,1,1]], "r":[1,2]}', "array of k numbers"),
        ("{not json", "malformed JSON"),
    ],
)
def test_parse_errors(doc, match):
    with pytest.raises(GraphError, match=match):
        parse_coloured_graph(doc)


def test_serialize_canonical_order():
    g = parse_coloured_graph(TRIANGLE)
    assert json.loads(serialize(g))["edges"] == [[0, 1, 0], [0, 2, 0], [1, 2, 0]]


def test_round_trip_fixture_corpus():
    from conftest import FIXTURE_NAMES, load_fixture

    for name in FIXTURE_NAMES:
        g = load_fixture(name)
        assert parse_coloured_graph(serialize(g)) == g


def test_serialize_parse_idempotent():
    g1 = parse_coloured_graph(QUAD_RIGID)
    once = serialize(g1)
    assert serialize(parse_coloured_graph(once)) == once


def test_subgraph_identity(seven_rigid_k2):
    g = seven_rigid_k2
    assert subgraph_by_colours(g, {0, 1, 2}) == g


def test_subgraph_uncoloured_part(twin_blocks_k2):
    g0 = subgraph_by_colours(twin_blocks_k2, {0})
    assert g0.m == 10
    assert g0.k == 0
    assert g0.n == twin_blocks_k2.n
    assert set(g0.edges) == {
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7),
    }


def test_subgraph_one_class(seven_rigid_k2):
    g1 = subgraph_by_colours(seven_rigid_k2, {0, 1})
    assert g1.m == 10  # 7 uncoloured + 3 of class 1
    assert g1.k == 1
    g2 = subgraph_by_colours(seven_rigid_k2, {2})
    assert g2.m == 3
    assert g2.k == 1  # class renumbered 2 -> 1
    assert set(g2.colours) == {1}


def test_subgraph_rejects_bad_selection(square_k1):
    with pytest.raises(GraphError):
        subgraph_by_colours(square_k1, {0, 7})


def test_class_sizes_partition(seven_rigid_k2):
    g = seven_rigid_k2
    assert sum(len(c) for c in g.colour_classes()) == g.m


def test_isolated_vertices():
    g = build(5, 0, [(0, 1, 0), (1, 2, 0)])
    assert g.isolated_vertices() == (3, 4)


def test_build_rejects_loop_and_duplicate():
    with pytest.raises(GraphError, match="loop"):
        build(3, 0, [(1, 1, 0)])
    with pytest.raises(GraphError, match="duplicate"):
        build(3, 0, [(0, 1, 0), (0, 1, 0)])


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_graph_round_trip(seed):
    g = random_coloured_graph(5, 2, seed=seed)
    assert parse_coloured_graph(serialize(g)) == g
    assert list(g.edges) == sorted(g.edges)
    assert all(c for c in range(1, g.k + 1) if g.colour_class(c))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=10**6),
    st.sets(st.integers(min_value=0, max_value=2), min_size=1),
)
def test_subgraph_keeps_exactly_selected_colours(seed, keep):
    g = random_coloured_graph(6, 2, seed=seed)
    keep = {c for c in keep if c <= g.k}
    if not keep:
        keep = {0}
    sub = subgraph_by_colours(g, keep)
    expected = {e for e, c in zip(g.edges, g.colours) if c in keep}
    assert set(sub.edges) == expected
    assert sub.n == g.n
    # every surviving class is non-empty
    for c in range(1, sub.k + 1):
        assert sub.colour_class(c)
