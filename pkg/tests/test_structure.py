import random

import networkx as nx
import pytest

from coxaut import corpus
from coxaut.diagram import DiagramError, components, cut_vertices
from coxaut.structure import (
    centralizer_generators,
    crossing_counts,
    junctions,
    modified_spanning_tree,
    regular_circuits,
    unit_graph,
    units,
)
from coxaut.words import equal

CONNECTED = corpus.connected_valid()


def as_nx(d):
    g = nx.Graph()
    g.add_nodes_from(d.vertices)
    g.add_edges_from(d.edges)
    return g


def test_centralizer_examples():
    share = corpus.get("share")
    assert centralizer_generators(share, {"b", "c"}) == [("b", "c", "b", "c")]
    tri = corpus.get("triangle")
    assert centralizer_generators(tri, {"a"}) == [("a",), ("b", "a", "b"), ("c", "a", "c")]
    sq = corpus.get("square")
    assert centralizer_generators(sq, {"a", "b", "c"}) == []
    with pytest.raises(DiagramError):
        centralizer_generators(sq, {"nope"})


@pytest.mark.parametrize("name", CONNECTED)
def test_centralizer_generators_commute(name):
    d = corpus.get(name)
    for J in [(s,) for s in d.vertices] + list(d.edges):
        for g in centralizer_generators(d, J):
            for s in J:
                assert equal(g + (s,), (s,) + g, d)


def test_edge_centralizer_m4_membership():
    d = corpus.get("share")
    (z,) = centralizer_generators(d, {"b", "c"})
    elements = [(), z]
    for w in elements:
        for s in ("b", "c"):
            assert equal(w + (s,), (s,) + w, d)
    # b commutes with b but not with c, so it is not in the centralizer of {b, c}
    assert not equal(("b", "c"), ("c", "b"), d)


def test_junction_examples():
    (j,) = junctions(corpus.get("triangle_pendant"))
    assert j.kind == "vertex" and j.vertices == ("a",) and j.sides == (("b", "c"), ("d",))
    (j,) = junctions(corpus.get("share"))
    assert j.kind == "edge" and j.vertices == ("b", "c") and j.sides == (("a",), ("d",))
    assert junctions(corpus.get("triangle")) == []


@pytest.mark.parametrize("name", CONNECTED)
def test_junctions_disconnect(name):
    d = corpus.get(name)
    for j in junctions(d):
        assert len(components(d, j.vertices)) >= 2
        if j.kind == "edge":
            assert d.adjacent(*j.vertices)


def test_circuit_examples():
    assert regular_circuits(corpus.get("triangle")) == [("a", "b", "c")]
    assert regular_circuits(corpus.get("share")) == [("a", "b", "c"), ("b", "c", "d")]
    assert regular_circuits(corpus.get("path46")) == []


@pytest.mark.parametrize("name", CONNECTED)
def test_circuits_match_networkx(name):
    d = corpus.get(name)
    ours = {frozenset(c) for c in regular_circuits(d)}
    theirs = {frozenset(c) for c in nx.chordless_cycles(as_nx(d)) if len(c) >= 3}
    assert ours == theirs
    assert len(ours) == len(regular_circuits(d))


def test_unit_examples():
    assert units(corpus.get("share")) == [("a", "b", "c"), ("b", "c", "d")]
    assert units(corpus.get("triangle_pendant")) == [("a", "b", "c"), ("d",)]
    assert units(corpus.get("path44")) == [("a",), ("b",), ("c",)]
    assert units(corpus.get("square")) == [("a", "b", "c", "d")]


@pytest.mark.parametrize("name", CONNECTED)
def test_units_cover_and_are_confluent(name):
    d = corpus.get(name)
    base = units(d)
    assert set().union(*map(set, base)) == set(d.vertices)
    n = len(regular_circuits(d))
    rng = random.Random(name)
    for _ in range(10):
        order = list(range(n))
        rng.shuffle(order)
        assert units(d, order) == base


def test_unit_graph_examples():
    g = unit_graph(corpus.get("share"))
    assert [(e.case, e.witness) for e in g.edges] == [(1, "junction")]
    g = unit_graph(corpus.get("triangle_pendant"))
    assert [e.case for e in g.edges] == [4]
    g = unit_graph(corpus.get("path44"))
    assert [(g.units[e.i], g.units[e.j], e.case) for e in g.edges] == [(("a",), ("b",), 6), (("b",), ("c",), 6)]


@pytest.mark.parametrize("name", CONNECTED)
def test_unit_graph_connected(name):
    assert unit_graph(corpus.get(name)).is_connected()


def test_tree_examples():
    t = modified_spanning_tree(corpus.get("path44"))
    assert t.units[t.basepoint] == ("b",)
    assert [(t.units[e.parent], t.units[e.child]) for e in t.edges] == [(("b",), ("a",)), (("b",), ("c",))]
    t = modified_spanning_tree(corpus.get("share"))
    assert t.units[t.basepoint] == ("a", "b", "c") and len(t.edges) == 1
    t = modified_spanning_tree(corpus.get("triangle_pendant"))
    assert t.units[t.basepoint] == ("a", "b", "c")
    (e,) = t.edges
    assert t.units[e.child] == ("d",) and e.case == 4 and e.u_ids == ("b", "c") and e.l_allowed == (1,)


@pytest.mark.parametrize("name", CONNECTED)
def test_tree_properties(name):
    d = corpus.get(name)
    t = modified_spanning_tree(d)
    g = nx.Graph()
    g.add_nodes_from(range(len(t.units)))
    g.add_edges_from((e.parent, e.child) for e in t.edges)
    assert nx.is_tree(g)
    counts = crossing_counts(d, t.units, [(e.parent, e.child) for e in t.edges])
    assert set(counts) == set(cut_vertices(d))
    for s, c in counts.items():
        assert c == 1 or (c is None and (s,) in t.units)
    U0 = t.units[t.basepoint]
    if len(d.vertices) > 2:
        assert not (len(U0) == 1 and d.degree(U0[0]) == 1)
    for e in t.edges:
        assert t.depth[e.child] == t.depth[e.parent] + 1
        assert e.s_i in t.units[e.parent] and e.s_j in t.units[e.child]
