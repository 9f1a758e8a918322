"""Coxeter diagrams: parsing, validation, graph queries and diagram symmetries.

A diagram is an edge-labelled simple graph.  An edge ``{s, t}`` labelled ``m``
encodes the relation ``(st)^m = 1``; a missing edge means ``m = infinity``.
Vertex names are arbitrary strings and every ordering produced here is
lexicographic on those names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class DiagramError(ValueError):
    """Raised for malformed diagram text or impossible diagram queries."""


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class CoxeterDiagram:
    vertices: tuple[str, ...]
    labels: Mapping[tuple[str, str], int]
    factor_flags: Mapping[int, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        norm = {}
        for (u, v), m in self.labels.items():
            if u == v:
                raise DiagramError(f"self-loop at {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise DiagramError(f"edge {u}-{v} uses an unknown vertex")
            norm[edge_key(u, v)] = int(m)
        object.__setattr__(self, "labels", dict(sorted(norm.items())))
        adj: dict[str, list[str]] = {s: [] for s in self.vertices}
        for u, v in self.labels:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", {s: tuple(sorted(n)) for s, n in adj.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, int]], vertices: Iterable[str] = ()):
        edges = list(edges)
        verts = set(vertices)
        for u, v, _ in edges:
            verts.update((u, v))
        return cls(tuple(verts), {edge_key(u, v): m for u, v, m in edges})

    def __hash__(self):
        return hash((self.vertices, tuple(self.labels.items())))

    def __eq__(self, other):
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.labels) == dict(other.labels)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return list(self.labels)

    def neighbors(self, s: str) -> tuple[str, ...]:
        return self._adj[s]

    def degree(self, s: str) -> int:
        return len(self._adj[s])

    def adjacent(self, s: str, t: str) -> bool:
        return edge_key(s, t) in self.labels

    def label(self, s: str, t: str) -> int | None:
        """Return ``m_st`` or ``None`` for infinity."""
        return self.labels.get(edge_key(s, t))

    def induced(self, keep: Iterable[str]) -> "CoxeterDiagram":
        keep = set(keep)
        return CoxeterDiagram(
            tuple(keep), {e: m for e, m in self.labels.items() if e[0] in keep and e[1] in keep}
        )

    def relabel(self, mapping: Mapping[str, str]) -> "CoxeterDiagram":
        return CoxeterDiagram(
            tuple(mapping[s] for s in self.vertices),
            {edge_key(mapping[u], mapping[v]): m for (u, v), m in self.labels.items()},
        )


# -- text format -------------------------------------------------------------


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse the line-oriented diagram format.

    Directives are ``edge <u> <v> <label>``, ``vertex <name>`` and
    ``factor <index> <flag>``; ``#`` starts a comment.  Labels below 4 are
    accepted here and rejected later by :func:`validate`.  Odd labels,
    duplicate edges and unknown directives raise :class:`DiagramError`.
    """
    vertices: set[str] = set()
    labels: dict[tuple[str, str], int] = {}
    flags: dict[int, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "edge":
            if len(parts) != 4:
                raise DiagramError(f"line {lineno}: expected 'edge <u> <v> <label>'")
            _, u, v, lab = parts
            try:
                m = int(lab)
            except ValueError:
                raise DiagramError(f"line {lineno}: label {lab!r} is not an integer") from None
            if m % 2:
                raise DiagramError(f"line {lineno}: odd label {m} on edge {u}-{v}")
            if u == v:
                raise DiagramError(f"line {lineno}: self-loop at {u}")
            key = edge_key(u, v)
            if key in labels:
                raise DiagramError(f"line {lineno}: duplicate edge {u}-{v}")
            labels[key] = m
            vertices.update(key)
        elif head == "vertex":
            if len(parts) != 2:
                raise DiagramError(f"line {lineno}: expected 'vertex <name>'")
            vertices.add(parts[1])
        elif head == "factor":
            if len(parts) != 3 or not parts[1].isdigit():
                raise DiagramError(f"line {lineno}: expected 'factor <index> <flag>'")
            if parts[2] not in ("strongly_rigid", "finite", "infinite"):
                raise DiagramError(f"line {lineno}: unknown factor flag {parts[2]!r}")
            flags.setdefault(int(parts[1]), set()).add(parts[2])
        else:
            raise DiagramError(f"line {lineno}: unknown directive {head!r}")
    return CoxeterDiagram(
        tuple(vertices), labels, {i: frozenset(f) for i, f in sorted(flags.items())}
    )


def serialize_diagram(d: CoxeterDiagram) -> str:
    lines = [f"vertex {s}" for s in d.vertices]
    lines += [f"edge {u} {v} {m}" for (u, v), m in d.labels.items()]
    for i, fl in sorted(d.factor_flags.items()):
        lines += [f"factor {i} {f}" for f in sorted(fl)]
    return "\n".join(lines) + "\n"


# -- graph queries -------------------------------------------------------------


def components(d: CoxeterDiagram, removed: Iterable[str] = ()) -> list[tuple[str, ...]]:
    """Connected components of ``d`` minus ``removed``, sorted."""
    removed = set(removed)
    seen: set[str] = set()
    out = []
    for start in d.vertices:
        if start in removed or start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            s = stack.pop()
            comp.append(s)
            for t in d.neighbors(s):
                if t not in removed and t not in seen:
                    seen.add(t)
                    stack.append(t)
        out.append(tuple(sorted(comp)))
    return sorted(out)


def is_connected(d: CoxeterDiagram) -> bool:
    return len(components(d)) <= 1


def cut_vertices(d: CoxeterDiagram) -> list[str]:
    base = len(components(d))
    return [s for s in d.vertices if len(components(d, {s})) > base]


def bridges(d: CoxeterDiagram) -> list[tuple[str, str]]:
    base = len(components(d))
    out = []
    for e in d.edges:
        rest = {k: m for k, m in d.labels.items() if k != e}
        if len(components(CoxeterDiagram(d.vertices, rest))) > base:
            out.append(e)
    return out


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    even: bool
    large_type: bool
    connected: bool
    nvb: bool
    odd_edges: tuple[tuple[str, str], ...] = ()
    small_edges: tuple[tuple[str, str], ...] = ()
    components: tuple[tuple[str, ...], ...] = ()
    branching_vertices: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.even and self.large_type and self.connected and self.nvb

    def to_dict(self) -> dict:
        return {
            "even": self.even,
            "large_type": self.large_type,
            "connected": self.connected,
            "nvb": self.nvb,
            "witnesses": {
                "odd_edges": [list(e) for e in self.odd_edges],
                "small_edges": [list(e) for e in self.small_edges],
                "components": [list(c) for c in self.components] if not self.connected else [],
                "branching_vertices": list(self.branching_vertices),
            },
        }


def validate(d: CoxeterDiagram) -> ValidationReport:
    odd = tuple(e for e, m in d.labels.items() if m % 2)
    small = tuple(e for e, m in d.labels.items() if m < 4)
    comps = tuple(components(d))
    branching = tuple(s for s in d.vertices if len(components(d, {s})) >= 3)
    return ValidationReport(
        even=not odd,
        large_type=not small,
        connected=len(comps) <= 1,
        nvb=not branching,
        odd_edges=odd,
        small_edges=small,
        components=comps,
        branching_vertices=branching,
    )


def require_valid(d: CoxeterDiagram, connected: bool = True) -> None:
    r = validate(d)
    if not (r.even and r.large_type and r.nvb) or (connected and not r.connected):
        raise DiagramError(f"diagram fails validation: {r.to_dict()}")


# -- diagram automorphisms -------------------------------------------------------


@dataclass(frozen=True)
class DiagramAutomorphism:
    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, m: Mapping[str, str]) -> "DiagramAutomorphism":
        return cls(tuple(sorted(m.items())))

    @classmethod
    def identity(cls, d: CoxeterDiagram) -> "DiagramAutomorphism":
        return cls(tuple((s, s) for s in d.vertices))

    def __call__(self, s: str) -> str:
        return dict(self.mapping)[s]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``self o other``: apply ``other`` first."""
        mine = self.as_dict()
        return DiagramAutomorphism(tuple((s, mine[t]) for s, t in other.mapping))

    def inverse(self) -> "DiagramAutomorphism":
        return DiagramAutomorphism(tuple(sorted((t, s) for s, t in self.mapping)))

    def apply_word(self, w: Iterable[str]) -> tuple[str, ...]:
        m = self.as_dict()
        return tuple(m[s] for s in w)


def diagram_automorphisms(d: CoxeterDiagram) -> list[DiagramAutomorphism]:
    """All label-preserving vertex permutations, found by backtracking.

    Candidates for each vertex are pruned by degree and by the sorted multiset
    of incident labels; partial maps are checked edge by edge.  The identity
    comes first and the rest follow in lexicographic order of image tuples.
    """
    verts = d.vertices
    sig = {s: (d.degree(s), tuple(sorted(d.label(s, t) for t in d.neighbors(s)))) for s in verts}
    out: list[dict[str, str]] = []
    image: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int):
        if i == len(verts):
            out.append(dict(image))
            return
        s = verts[i]
        for t in verts:
            if t in used or sig[t] != sig[s]:
                continue
            if any(d.label(s, p) != d.label(t, image[p]) for p in verts[:i]):
                continue
            image[s] = t
            used.add(t)
            extend(i + 1)
            used.discard(t)
            del image[s]

    extend(0)
    return [DiagramAutomorphism.from_dict(m) for m in out]


def brute_force_automorphisms(d: CoxeterDiagram) -> list[DiagramAutomorphism]:
    """Check every permutation; only usable for tiny diagrams."""
    out = []
    for perm in itertools.permutations(d.vertices):
        m = dict(zip(d.vertices, perm))
        if all(d.label(u, v) == d.label(m[u], m[v]) for u, v in itertools.combinations(d.vertices, 2)):
            out.append(DiagramAutomorphism.from_dict(m))
    return out
