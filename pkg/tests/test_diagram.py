import itertools

import pytest

from coxaut import corpus
from coxaut.diagram import (
    CoxeterDiagram,
    DiagramError,
    bridges,
    brute_force_automorphisms,
    components,
    cut_vertices,
    diagram_automorphisms,
    parse_diagram,
    serialize_diagram,
    validate,
)


def test_parse_triangle():
    d = parse_diagram("edge a b 4\nedge b c 4\nedge c a 4")
    assert d.vertices == ("a", "b", "c")
    assert set(d.labels.values()) == {4}
    assert d.label("c", "a") == 4


def test_parse_path_and_infinity():
    d = parse_diagram("edge a b 4\nedge b c 6")
    assert d.label("a", "b") == 4 and d.label("b", "c") == 6
    assert d.label("a", "c") is None


@pytest.mark.parametrize(
    "text",
    ["edge a b 3", "edge a b 4\nedge b a 6", "edge a a 4", "edge a b", "node a", "edge a b x", "factor x finite"],
)
def test_parse_errors(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_small_label_is_parsed_but_invalid():
    d = parse_diagram("edge a b 2\nedge b c 4")
    rep = validate(d)
    assert not rep.large_type and rep.small_edges == (("a", "b"),)


def test_comments_and_isolated_vertices():
    d = parse_diagram("# header\nvertex z  # lone\nedge a b 4\n")
    assert d.vertices == ("a", "b", "z")
    assert len(components(d)) == 2


@pytest.mark.parametrize("name", sorted(corpus.TEXT))
def test_round_trip(name):
    d = corpus.get(name)
    again = parse_diagram(serialize_diagram(d))
    assert again == d
    assert serialize_diagram(again) == serialize_diagram(d)


def test_validate_examples():
    assert validate(corpus.get("triangle")).ok
    assert validate(corpus.get("path46")).ok
    star = validate(parse_diagram("edge x p1 4\nedge x p2 4\nedge x p3 4"))
    assert not star.nvb and star.branching_vertices == ("x",)
    assert not validate(corpus.get("z2d4")).connected


def test_graph_queries():
    assert cut_vertices(corpus.get("triangle_pendant")) == ["a"]
    path = parse_diagram("edge a b 4\nedge b c 4")
    assert bridges(path) == [("a", "b"), ("b", "c")]
    assert cut_vertices(path) == ["b"]
    assert components(corpus.get("share"), {"b", "c"}) == [("a",), ("d",)]


@pytest.mark.parametrize("name,count", [("triangle", 6), ("path46", 1), ("share", 4), ("path444", 2)])
def test_diagram_automorphism_counts(name, count):
    d = corpus.get(name)
    found = diagram_automorphisms(d)
    assert len(found) == count
    assert found[0].is_identity()
    assert set(found) == set(brute_force_automorphisms(d))


@pytest.mark.parametrize("name", ["triangle", "share", "square", "bowtie"])
def test_diagram_automorphisms_form_a_group(name):
    d = corpus.get(name)
    auts = set(diagram_automorphisms(d))
    for a, b in itertools.product(auts, repeat=2):
        assert a.compose(b) in auts
    assert all(a.inverse() in auts for a in auts)
    assert __import__("math").factorial(len(d.vertices)) % len(auts) == 0


@pytest.mark.parametrize("name", corpus.connected_valid())
def test_nvb_means_at_most_two_pieces(name):
    d = corpus.get(name)
    assert all(len(components(d, {s})) <= 2 for s in d.vertices)


def test_diagram_is_hashable_and_frozen():
    d = CoxeterDiagram.from_edges([("b", "a", 4)])
    assert d == CoxeterDiagram.from_edges([("a", "b", 4)])
    assert hash(d) == hash(CoxeterDiagram.from_edges([("a", "b", 4)]))
