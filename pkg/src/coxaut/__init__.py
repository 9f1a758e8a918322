"""Automorphism groups of even, large-type Coxeter groups without vertex branching."""

from .automorphism import (
    AutLabeling,
    CanonicalizationError,
    ConjugatorFamily,
    EdgeLabel,
    LabelError,
    XWord,
    apply,
    canonicalize,
    compose_general,
    compose_labelings,
    enumerate_labelings,
    equal_general,
    invert,
    is_homomorphism,
    to_family,
    x_word,
)
from .diagram import CoxeterDiagram, DiagramError, parse_diagram, serialize_diagram, validate
from .freeprod import TripleAut, compose_triples, decompose, out_finite_freeprod
from .outgroup import is_out_finite, label_space_size, out_order, structure_report
from .structure import junctions, modified_spanning_tree, regular_circuits, unit_graph, units
from .words import OrbitBudgetExceeded, equal, tits_reduce

__all__ = [
    "AutLabeling", "CanonicalizationError", "ConjugatorFamily", "CoxeterDiagram", "DiagramError",
    "EdgeLabel", "LabelError", "OrbitBudgetExceeded", "TripleAut", "XWord", "apply", "canonicalize",
    "compose_general", "compose_labelings", "compose_triples", "decompose", "enumerate_labelings",
    "equal", "equal_general", "invert", "is_homomorphism", "is_out_finite", "junctions",
    "label_space_size", "modified_spanning_tree", "out_finite_freeprod", "out_order",
    "parse_diagram", "regular_circuits", "serialize_diagram", "structure_report", "tits_reduce",
    "to_family", "unit_graph", "units", "validate", "x_word",
]
