"""Small named diagrams used by the test suite and the example files."""

from __future__ import annotations

from .diagram import CoxeterDiagram, parse_diagram

TEXT: dict[str, str] = {
    "edge4": "edge a b 4\n",
    "path44": "edge a b 4\nedge b c 4\n",
    "path46": "edge a b 4\nedge b c 6\n",
    "path444": "edge a b 4\nedge b c 4\nedge c d 4\n",
    "path468": "edge a b 4\nedge b c 6\nedge c d 8\n",
    "path4444": "edge a b 4\nedge b c 4\nedge c d 4\nedge d e 4\n",
    "triangle": "edge a b 4\nedge b c 4\nedge a c 4\n",
    "square": "edge a b 4\nedge b c 4\nedge c d 4\nedge a d 4\n",
    "share": "edge a b 4\nedge a c 4\nedge b c 4\nedge b d 4\nedge c d 4\n",
    "triangle_pendant": "edge a b 4\nedge b c 4\nedge a c 4\nedge a d 4\n",
    "bowtie": "edge a b 4\nedge b c 4\nedge a c 4\nedge a d 4\nedge d e 4\nedge a e 4\n",
    "dumbbell": "edge a b 4\nedge b c 4\nedge a c 4\nedge c d 4\nedge d e 4\nedge e f 4\nedge d f 4\n",
    "tripath": "edge a b 4\nedge b c 4\nedge a c 4\nedge a d 6\nedge d e 4\n",
    "tail": "edge x y 4\nedge y z 4\nedge x z 4\nedge a b 4\nedge b x 6\n",
    "mid": "edge b d 4\nedge a b 4\nedge a c 8\nedge c e 4\n",
    "fan": (
        "edge s t1 4\nedge s t2 4\nedge s t3 4\nedge t1 t2 4\nedge t2 t3 4\n"
        "edge p s 4\nedge p q 4\nedge q s 4\n"
    ),
    "double_fan": (
        "edge s t1 4\nedge s t2 4\nedge s t3 4\nedge t1 t2 4\nedge t2 t3 4\n"
        "edge s p1 4\nedge s p2 4\nedge s p3 4\nedge p1 p2 4\nedge p2 p3 4\n"
    ),
    "star": "edge a b 4\nedge a c 4\nedge a d 4\n",
    "small": "edge a b 2\nedge b c 4\n",
    "z2z2": "vertex a\nvertex b\n",
    "z2d4": "vertex a\nedge b c 4\n",
    "z2z2z2": "vertex a\nvertex b\nvertex c\n",
    "vertex_triangle": "vertex x\nedge a b 4\nedge b c 4\nedge a c 4\n",
}


# Rejected by the parser itself.
ODD_TEXT = "edge a b 3\nedge b c 4\n"


def get(name: str) -> CoxeterDiagram:
    return parse_diagram(TEXT[name])


def connected_valid() -> list[str]:
    """Names of the connected diagrams that pass validation."""
    from .diagram import validate

    return [n for n in TEXT if validate(get(n)).ok]
