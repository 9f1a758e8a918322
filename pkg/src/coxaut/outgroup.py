"""Finiteness, order and structure of the outer automorphism group.

The order is always computed as ``|Diag| * prod(label_space_size(e))`` over the
tree edges.  Two closed forms are evaluated next to it: the path formula
``delta * 2^(r-2) * prod(phi(n_i))`` which must agree, and the unit-count
formula ``2^k * |Diag|`` for diagrams without cut vertices, which is known not
to match and is only reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .automorphism import enumerate_labelings, to_family, totient
from .diagram import CoxeterDiagram, components, cut_vertices, diagram_automorphisms, require_valid
from .structure import OrientedTree, TreeEdge, modified_spanning_tree

INFINITE = math.inf


class InfiniteOutError(ValueError):
    """An order was requested for a diagram whose outer automorphism group is infinite."""


def infinite_witness(d: CoxeterDiagram) -> str | None:
    """Least cut vertex splitting ``d`` in two pieces while having degree above 2."""
    for s in cut_vertices(d):
        if len(components(d, {s})) == 2 and d.degree(s) > 2:
            return s
    return None


def is_out_finite(d: CoxeterDiagram) -> tuple[bool, str | None]:
    w = infinite_witness(d)
    return w is None, w


def _sequence_count(ids) -> float:
    # no generator: only the empty sequence; one involution: two; more: infinitely many
    return (1, 2)[len(ids)] if len(ids) < 2 else INFINITE


def label_space_size(e: TreeEdge) -> float:
    if e.case == 1:
        return 2
    size = _sequence_count(e.u_ids) * _sequence_count(e.v_ids)
    if e.case == 2:
        return 2 * size
    return size * totient(e.n) * len(e.l_allowed)


def is_path(d: CoxeterDiagram) -> bool:
    n = len(d.vertices)
    return (
        n >= 2
        and len(d.edges) == n - 1
        and len(components(d)) == 1
        and all(d.degree(s) <= 2 for s in d.vertices)
    )


def path_formula(d: CoxeterDiagram, delta: int) -> dict | None:
    """``delta * 2^(r-2) * prod(phi(n_i))`` for a path with ``r >= 2`` edges."""
    if not is_path(d) or len(d.edges) < 2:
        return None
    r = len(d.edges)
    labels = list(d.labels.values())
    count = 2 ** (r - 2) * math.prod(totient(n) for n in labels)
    return {"r": r, "delta": delta, "labels": labels, "count": count, "order": delta * count}


@dataclass
class OutReport:
    finite: bool
    witness: str | None
    diag_order: int
    factorization: list[dict]
    order: int | None = None
    structure: str = ""
    type1_edges: int = 0
    free_generators: list[dict] = field(default_factory=list)
    path_formula: dict | None = None
    units_formula: dict | None = None
    distinct_labelings: int | None = None
    notes: list[str] = field(default_factory=list)

    def mismatches(self) -> list[str]:
        """Closed-form disagreements that should fail an assertion run.

        The unit-count formula is deliberately left out.
        """
        out = []
        if self.path_formula is not None and self.path_formula["order"] != self.order:
            out.append(f"path formula gives {self.path_formula['order']}, computed order is {self.order}")
        per_edge_finite = all(f["count"] != "infinite" for f in self.factorization)
        if per_edge_finite != self.finite:
            out.append("cut-vertex criterion and per-edge label spaces disagree on finiteness")
        return out

    def to_dict(self) -> dict:
        return {
            "finite": self.finite,
            "witness": self.witness,
            "order": self.order,
            "diag_order": self.diag_order,
            "factorization": self.factorization,
            "structure": self.structure,
            "type1_edges": self.type1_edges,
            "free_generators": self.free_generators,
            "path_formula": self.path_formula,
            "units_formula": self.units_formula,
            "distinct_labelings": self.distinct_labelings,
            "notes": self.notes,
            "mismatches": self.mismatches(),
        }


def _free_generators(tree: OrientedTree) -> list[dict]:
    gens = []
    for e in tree.edges:
        for side, s, ids in (("parent", e.s_i, e.u_ids), ("child", e.s_j, e.v_ids)):
            if len(ids) >= 2:
                gens.append({"cut_vertex": s, "side": side, "generators": list(ids)})
    return gens


def structure_report(
    d: CoxeterDiagram, tree: OrientedTree | None = None, distinct_limit: int = 256
) -> OutReport:
    """Full report; ``order`` is filled only when the group is finite.

    When there are at most ``distinct_limit`` labelings, their generator
    images are also compared with the word oracle.
    """
    require_valid(d)
    tree = tree or modified_spanning_tree(d)
    finite, witness = is_out_finite(d)
    diag = len(diagram_automorphisms(d))
    factorization = []
    for e in tree.edges:
        size = label_space_size(e)
        factorization.append(
            {
                "edge": [list(tree.units[e.parent]), list(tree.units[e.child])],
                "type": e.case,
                "count": "infinite" if size == INFINITE else int(size),
            }
        )
    rep = OutReport(finite, witness, diag, factorization)
    rep.type1_edges = sum(1 for e in tree.edges if e.case == 1)
    if finite:
        rep.order = diag * math.prod(int(f["count"]) for f in factorization)
    if not cut_vertices(d):
        j = rep.type1_edges
        rep.structure = f"(Inn x Z2^{j}) ⋊ Diag"
        k = len(tree.units)
        value = 2**k * diag
        rep.units_formula = {"units": k, "value": value, "agrees": value == rep.order}
        if value != rep.order:
            rep.notes.append(
                f"2^k|Diag| with k={k} units gives {value}; the per-edge count gives {rep.order}"
            )
        if diag > 1:
            rep.notes.append("Diag acts nontrivially, so the product with Diag is semidirect, not direct")
    elif finite:
        rep.structure = f"finite of order {rep.order}"
    else:
        rep.structure = "infinite; finite-index subgroup is a direct product of free products of Z2"
        rep.free_generators = _free_generators(tree)
    rep.path_formula = path_formula(d, diag)
    if finite and rep.order // diag <= distinct_limit:
        labelings = rep.order // diag
        rep.distinct_labelings = distinct_labelings(tree)
        if rep.distinct_labelings != labelings:
            rep.notes.append(
                f"only {rep.distinct_labelings} of the {labelings} labelings with trivial base word "
                "act differently on the generators"
            )
    if len(d.vertices) == 2:
        rep.notes.append(
            "a single edge gives a finite dihedral group with no admissible basepoint; "
            "the order counts labelings and is not the outer automorphism group"
        )
    return rep


def out_order(d: CoxeterDiagram) -> OutReport:
    rep = structure_report(d)
    if not rep.finite:
        raise InfiniteOutError(f"Out(W) is infinite (witness {rep.witness})")
    return rep


def count_labelings(tree: OrientedTree) -> int:
    """Exhaustive number of labelings with trivial base word (finite case only)."""
    return sum(1 for _ in enumerate_labelings(tree, bound=1))


def distinct_labelings(tree: OrientedTree) -> int:
    """Number of different actions among the labelings with trivial base word."""
    seen = set()
    for a in enumerate_labelings(tree, bound=1):
        f = to_family(a)
        seen.add(tuple(f.generator_image(s) for s in tree.diagram.vertices))
    return len(seen)
