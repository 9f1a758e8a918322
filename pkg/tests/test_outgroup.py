import math

import pytest

from coxaut import corpus
from coxaut.diagram import DiagramAutomorphism
from coxaut.outgroup import (
    INFINITE,
    InfiniteOutError,
    count_labelings,
    is_out_finite,
    label_space_size,
    out_order,
    structure_report,
)
from coxaut.structure import modified_spanning_tree

CONNECTED = corpus.connected_valid()


def test_finiteness_examples():
    assert is_out_finite(corpus.get("triangle_pendant")) == (False, "a")
    assert is_out_finite(corpus.get("path46")) == (True, None)
    assert is_out_finite(corpus.get("share")) == (True, None)


def test_label_space_examples():
    (e,) = modified_spanning_tree(corpus.get("share")).edges
    assert label_space_size(e) == 2
    t = modified_spanning_tree(corpus.get("path46"))
    sizes = {t.units[e.child]: label_space_size(e) for e in t.edges}
    assert sizes[("c",)] == 2  # phi(6), index forced at the endpoint
    (e,) = modified_spanning_tree(corpus.get("triangle_pendant")).edges
    assert label_space_size(e) == INFINITE


@pytest.mark.parametrize("name", CONNECTED)
def test_two_finiteness_criteria_agree(name):
    d = corpus.get(name)
    t = modified_spanning_tree(d)
    finite, _ = is_out_finite(d)
    assert finite == all(label_space_size(e) != INFINITE for e in t.edges)


@pytest.mark.parametrize("name,order", [("path46", 4), ("path444", 32), ("share", 8), ("path468", 32)])
def test_orders(name, order):
    assert out_order(corpus.get(name)).order == order


@pytest.mark.parametrize("name", [n for n in CONNECTED if is_out_finite(corpus.get(n))[0]])
def test_order_matches_enumeration(name):
    d = corpus.get(name)
    rep = structure_report(d)
    assert rep.order == rep.diag_order * count_labelings(modified_spanning_tree(d))
    assert rep.mismatches() == []


def test_out_order_refuses_infinite():
    with pytest.raises(InfiniteOutError):
        out_order(corpus.get("triangle_pendant"))


def test_units_formula_is_reported_not_enforced():
    rep = structure_report(corpus.get("share"))
    assert rep.units_formula == {"units": 2, "value": 16, "agrees": False}
    assert rep.order == 8 and rep.mismatches() == []
    assert any("2^k" in n for n in rep.notes)


def test_structure_reports():
    assert structure_report(corpus.get("share")).type1_edges == 1
    tri = structure_report(corpus.get("triangle"))
    assert tri.type1_edges == 0 and tri.structure == "(Inn x Z2^0) ⋊ Diag"
    tp = structure_report(corpus.get("triangle_pendant"))
    assert tp.free_generators == [{"cut_vertex": "a", "side": "parent", "generators": ["b", "c"]}]


@pytest.mark.parametrize("name", [n for n in CONNECTED if is_out_finite(corpus.get(n))[0]])
def test_order_invariant_under_relabeling(name):
    d = corpus.get(name)
    mapping = {s: f"v{len(d.vertices) - i}" for i, s in enumerate(d.vertices)}
    assert out_order(d.relabel(mapping)).order == out_order(d).order


def test_path_formula_fields():
    rep = out_order(corpus.get("path4444"))
    f = rep.path_formula
    assert f["r"] == 4 and f["count"] == 2**2 * math.prod([2, 2, 2, 2]) and f["order"] == rep.order
