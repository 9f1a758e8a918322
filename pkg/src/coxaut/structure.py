"""Combinatorial skeleton of a diagram: junctions, regular circuits, units,
the unit graph and the oriented spanning tree used to label automorphisms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .diagram import CoxeterDiagram, DiagramError, components, cut_vertices, require_valid
from .words import Word, power

Unit = tuple[str, ...]


def factor_word(t: str, s: str, m: int) -> Word:
    """The reflection ``(t s)^(m/2 - 1) t`` commuting with ``s``."""
    return power(t, s, m // 2 - 1) + (t,)


def centralizer_generators(d: CoxeterDiagram, J: Iterable[str]) -> list[Word]:
    """Generators of the centralizer of the parabolic subgroup on ``J``.

    Only singletons and adjacent pairs have a nontrivial centralizer in an
    even large-type group; everything else yields ``[]``.
    """
    J = sorted(set(J))
    for s in J:
        if s not in d.vertices:
            raise DiagramError(f"{s!r} is not a vertex")
    if len(J) == 1:
        s = J[0]
        return [(s,)] + [factor_word(t, s, d.label(s, t)) for t in d.neighbors(s)]
    if len(J) == 2 and d.adjacent(*J):
        a, b = J
        return [power(a, b, d.label(a, b) // 2)]
    return []


@dataclass(frozen=True)
class Junction:
    kind: str  # "vertex" or "edge"
    vertices: tuple[str, ...]
    sides: tuple[tuple[str, ...], ...]

    def side_of(self, s: str) -> int:
        for i, side in enumerate(self.sides):
            if s in side:
                return i
        raise KeyError(s)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "sides": [list(x) for x in self.sides]}


def junctions(d: CoxeterDiagram) -> list[Junction]:
    """Cut vertices, then separating edges.

    An edge ``{u, v}`` only counts when at least two components of
    ``V - {u, v}`` touch both endpoints; otherwise the separation is already
    done by ``u`` or ``v`` alone.
    """
    out = [Junction("vertex", (s,), tuple(components(d, {s}))) for s in cut_vertices(d)]
    for u, v in d.edges:
        comps = components(d, {u, v})
        both = [
            c for c in comps
            if any(d.adjacent(u, x) for x in c) and any(d.adjacent(v, x) for x in c)
        ]
        if len(both) > 1:
            out.append(Junction("edge", (u, v), tuple(comps)))
    return out


def _junction_sets(d: CoxeterDiagram) -> set[frozenset[str]]:
    return {frozenset(j.vertices) for j in junctions(d)}


def regular_circuits(d: CoxeterDiagram) -> list[tuple[str, ...]]:
    """Chordless simple cycles, each once.

    A cycle is reported starting at its least vertex, oriented so that the
    second vertex is smaller than the last.  The search grows induced paths
    from the least vertex and closes them when the new end is adjacent to it.
    """
    found = []
    for root in d.vertices:
        def grow(path: list[str]):
            end = path[-1]
            for w in d.neighbors(end):
                if w <= root or w in path:
                    continue
                if any(d.adjacent(w, p) for p in path[1:-1]):
                    continue
                if d.adjacent(w, root):
                    if len(path) >= 2 and path[1] < w:
                        found.append(tuple(path + [w]))
                    continue
                grow(path + [w])

        for first in d.neighbors(root):
            if first > root:
                grow([root, first])
    return sorted(found, key=lambda c: (len(c), c))


def units(d: CoxeterDiagram, circuit_order: Sequence[int] | None = None) -> list[Unit]:
    """Units of a connected NVB diagram, sorted.

    Two regular circuits are merged when they meet in a set that is not a
    junction; units are the unions over the resulting classes, plus a
    singleton for every vertex lying on no circuit.  ``circuit_order`` only
    permutes the processing order and exists for confluence tests.
    """
    circs = [frozenset(c) for c in regular_circuits(d)]
    order = list(circuit_order) if circuit_order is not None else list(range(len(circs)))
    jsets = _junction_sets(d)
    assigned: dict[int, int] = {}
    groups: list[set[str]] = []
    for start in order:
        if start in assigned:
            continue
        gid = len(groups)
        cur = set(circs[start])
        assigned[start] = gid
        frontier = [start]
        while frontier:
            c = frontier.pop()
            for idx in order:
                if idx in assigned:
                    continue
                meet = circs[c] & circs[idx]
                if meet and meet not in jsets:
                    assigned[idx] = gid
                    cur |= circs[idx]
                    frontier.append(idx)
        groups.append(cur)
    result = {tuple(sorted(g)) for g in groups}
    covered = set().union(*groups) if groups else set()
    result |= {(s,) for s in d.vertices if s not in covered}
    return sorted(result)


@dataclass(frozen=True)
class UnitEdge:
    i: int
    j: int
    witness: str  # "junction" or "bridge"
    vertices: tuple[str, ...]  # shared junction, or bridge endpoints (in U_i, in U_j)
    case: int

    def to_dict(self, unit_list: Sequence[Unit]) -> dict:
        return {
            "units": [list(unit_list[self.i]), list(unit_list[self.j])],
            "witness": self.witness,
            "vertices": list(self.vertices),
            "case": self.case,
        }


def case_type(d: CoxeterDiagram, Ui: Unit, Uj: Unit, witness: str, verts: Sequence[str]) -> int:
    """Edge type 1..6 for the ordered pair ``(Ui, Uj)``."""
    big_i, big_j = len(Ui) > 1, len(Uj) > 1
    if witness == "junction":
        return 1 if len(verts) == 2 else 2
    if big_i and big_j:
        return 3
    if big_i:
        return 4
    if big_j:
        return 5
    return 6


@dataclass(frozen=True)
class UnitGraph:
    units: tuple[Unit, ...]
    edges: tuple[UnitEdge, ...]

    def is_connected(self) -> bool:
        if not self.units:
            return True
        adj = {i: set() for i in range(len(self.units))}
        for e in self.edges:
            adj[e.i].add(e.j)
            adj[e.j].add(e.i)
        seen = {0}
        stack = [0]
        while stack:
            for k in adj[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == len(self.units)

    def to_dict(self) -> dict:
        return {
            "units": [list(u) for u in self.units],
            "edges": [e.to_dict(self.units) for e in self.edges],
        }


def unit_graph(d: CoxeterDiagram, unit_list: Sequence[Unit] | None = None) -> UnitGraph:
    if unit_list is None:
        unit_list = units(d)
    unit_list = tuple(unit_list)
    jsets = _junction_sets(d)
    edges = []
    for i, Ui in enumerate(unit_list):
        for j in range(i + 1, len(unit_list)):
            Uj = unit_list[j]
            meet = set(Ui) & set(Uj)
            if meet:
                if frozenset(meet) not in jsets:
                    continue
                comps = components(d, meet)
                ci = {c for c in comps if set(c) & (set(Ui) - meet)}
                cj = {c for c in comps if set(c) & (set(Uj) - meet)}
                if ci and cj and not ci & cj:
                    verts = tuple(sorted(meet))
                    edges.append(UnitEdge(i, j, "junction", verts, case_type(d, Ui, Uj, "junction", verts)))
                continue
            cross = [(a, b) for a in Ui for b in Uj if d.adjacent(a, b)]
            if len(cross) != 1:
                continue
            a, b = cross[0]
            rest = {k: m for k, m in d.labels.items() if k != ((a, b) if a < b else (b, a))}
            if len(components(CoxeterDiagram(d.vertices, rest))) > len(components(d)):
                edges.append(UnitEdge(i, j, "bridge", (a, b), case_type(d, Ui, Uj, "bridge", (a, b))))
    return UnitGraph(unit_list, tuple(edges))


@dataclass(frozen=True)
class TreeEdge:
    """An oriented tree edge ``parent -> child`` with its label-space data.

    ``s_i`` lies in the parent unit and ``s_j`` in the child.  For case 1 the
    pair is the shared edge junction, for case 2 both equal the shared cut
    vertex.  ``u_ids``/``v_ids`` are the neighbours of the relevant
    junction vertex whose reflections may appear in the label.
    """

    parent: int
    child: int
    case: int
    s_i: str
    s_j: str
    n: int
    u_ids: tuple[str, ...] = ()
    v_ids: tuple[str, ...] = ()
    l_allowed: tuple[int, ...] = ()

    @property
    def has_x(self) -> bool:
        return self.case >= 3


@dataclass
class OrientedTree:
    diagram: CoxeterDiagram
    units: tuple[Unit, ...]
    basepoint: int
    edges: tuple[TreeEdge, ...]  # breadth-first order from the basepoint
    depth: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self._parent_edge = {e.child: e for e in self.edges}
        self._children: dict[int, list[TreeEdge]] = {i: [] for i in range(len(self.units))}
        for e in self.edges:
            self._children[e.parent].append(e)
        self._home: dict[str, int] = {}
        for i in sorted(range(len(self.units)), key=lambda k: (self.depth[k], k)):
            for s in self.units[i]:
                self._home.setdefault(s, i)

    def parent_edge(self, unit: int) -> TreeEdge | None:
        return self._parent_edge.get(unit)

    def children(self, unit: int) -> list[TreeEdge]:
        return self._children[unit]

    def path(self, unit: int) -> list[TreeEdge]:
        """Tree edges from the basepoint down to ``unit``."""
        out = []
        while unit != self.basepoint:
            e = self._parent_edge[unit]
            out.append(e)
            unit = e.parent
        return out[::-1]

    def walk(self, src: int, dst: int) -> list[TreeEdge]:
        """Tree edges from ``src`` to ``dst``: climbing edges first, then descending."""
        up, down = self.path(src), self.path(dst)
        k = 0
        while k < min(len(up), len(down)) and up[k] == down[k]:
            k += 1
        return up[k:][::-1] + down[k:]

    def home_unit(self, s: str) -> int:
        """The unit containing ``s`` closest to the basepoint."""
        return self._home[s]

    def units_containing(self, s: str) -> list[int]:
        return [i for i, U in enumerate(self.units) if s in U]

    def unit_index(self, U: Iterable[str]) -> int:
        return self.units.index(tuple(sorted(U)))

    def edge_between(self, parent: int, child: int) -> TreeEdge:
        e = self._parent_edge.get(child)
        if e is None or e.parent != parent:
            raise KeyError((parent, child))
        return e

    def to_dict(self) -> dict:
        return {
            "basepoint": list(self.units[self.basepoint]),
            "edges": [
                {
                    "from": list(self.units[e.parent]),
                    "to": list(self.units[e.child]),
                    "case": e.case,
                    "s_i": e.s_i,
                    "s_j": e.s_j,
                    "label": e.n,
                }
                for e in self.edges
            ],
        }


def _side_neighbors(d: CoxeterDiagram, s: str, unit: Unit) -> tuple[str, ...]:
    """Neighbours of ``s`` in the component of ``V - {s}`` holding ``unit - {s}``."""
    rest = set(unit) - {s}
    for comp in components(d, {s}):
        if rest & set(comp):
            return tuple(t for t in d.neighbors(s) if t in comp)
    return ()


def _tree_edge(d: CoxeterDiagram, unit_list: Sequence[Unit], parent: int, child: int, ue: UnitEdge) -> TreeEdge:
    Ui, Uj = unit_list[parent], unit_list[child]
    if ue.witness == "junction":
        if len(ue.vertices) == 2:
            a, b = ue.vertices
            return TreeEdge(parent, child, 1, a, b, d.label(a, b))
        (s,) = ue.vertices
        return TreeEdge(
            parent, child, 2, s, s, 0,
            u_ids=_side_neighbors(d, s, Ui), v_ids=_side_neighbors(d, s, Uj),
        )
    a, b = ue.vertices if ue.i == parent else ue.vertices[::-1]
    case = case_type(d, Ui, Uj, "bridge", (a, b))
    n = d.label(a, b)
    u_ids = _side_neighbors(d, a, Ui) if case in (3, 4) else ()
    v_ids = _side_neighbors(d, b, Uj) if case in (3, 5) else ()
    if case == 3:
        allowed = (1, 2, 3, 4)
    elif case == 4:
        allowed = (1,) if d.degree(b) == 1 else (1, 2, 3, 4)
    elif case == 5:
        allowed = (1, 2)
    else:
        allowed = (1,) if d.degree(b) == 1 else (1, 2)
    return TreeEdge(parent, child, case, a, b, n, u_ids, v_ids, allowed)


def crossing_counts(d: CoxeterDiagram, unit_list: Sequence[Unit], tree_pairs: Iterable[tuple[int, int]]) -> dict[str, int | None]:
    """Tree edges joining the two sides of each cut vertex ``s``.

    A unit lies on a side when its vertices other than ``s`` do.  When ``{s}``
    is itself a unit, the sides only meet through it and ``None`` is returned.
    """
    pairs = list(tree_pairs)
    out: dict[str, int | None] = {}
    for s in cut_vertices(d):
        if (s,) in unit_list:
            out[s] = None
            continue
        comps = [set(c) for c in components(d, {s})]
        side = {}
        for i, U in enumerate(unit_list):
            for k, c in enumerate(comps):
                if set(U) - {s} <= c:
                    side[i] = k
        out[s] = sum(1 for a, b in pairs if side[a] != side[b])
    return out


def choose_basepoint(d: CoxeterDiagram, unit_list: Sequence[Unit]) -> int:
    """Least admissible unit, preferring ones that can absorb a carry.

    Multi-vertex units come first, then singletons next to a degree-1
    vertex, then any other singleton that is not itself of degree 1.  A
    single edge has no admissible unit at all and falls back to the first.
    """
    def leaf(U):
        return len(U) == 1 and d.degree(U[0]) == 1

    big = [i for i, U in enumerate(unit_list) if len(U) > 1]
    if big:
        return big[0]
    by_leaf = [
        i for i, U in enumerate(unit_list)
        if not leaf(U) and any(d.degree(t) == 1 for t in d.neighbors(U[0]))
    ]
    if by_leaf:
        return by_leaf[0]
    rest = [i for i, U in enumerate(unit_list) if not leaf(U)]
    return rest[0] if rest else 0


def modified_spanning_tree(d: CoxeterDiagram, g: UnitGraph | None = None) -> OrientedTree:
    """Spanning tree of the unit graph that crosses each cut vertex once.

    Kruskal's algorithm takes every edge that is not a shared-cut-vertex edge
    first; units sharing a cut vertex on the same side are then already
    joined, so exactly one shared-cut-vertex edge per junction survives.
    """
    require_valid(d)
    if g is None:
        g = unit_graph(d)
    unit_list = g.units
    parent = list(range(len(unit_list)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen: list[UnitEdge] = []
    for ue in sorted(g.edges, key=lambda e: (e.case == 2, e.i, e.j)):
        ri, rj = find(ue.i), find(ue.j)
        if ri != rj:
            parent[ri] = rj
            chosen.append(ue)
    if len(chosen) != len(unit_list) - 1:
        raise DiagramError("unit graph is not connected")

    base = choose_basepoint(d, unit_list)

    adj: dict[int, list[UnitEdge]] = {i: [] for i in range(len(unit_list))}
    for ue in chosen:
        adj[ue.i].append(ue)
        adj[ue.j].append(ue)
    depth = {base: 0}
    edges: list[TreeEdge] = []
    queue = deque([base])
    while queue:
        cur = queue.popleft()
        for ue in sorted(adj[cur], key=lambda e: e.j if e.i == cur else e.i):
            nxt = ue.j if ue.i == cur else ue.i
            if nxt in depth:
                continue
            depth[nxt] = depth[cur] + 1
            edges.append(_tree_edge(d, unit_list, cur, nxt, ue))
            queue.append(nxt)
    return OrientedTree(d, unit_list, base, tuple(edges), depth)
