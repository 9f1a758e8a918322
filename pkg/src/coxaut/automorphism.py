"""Automorphisms as labelled trees and as per-unit conjugator families.

An :class:`AutLabeling` stores a base word for the basepoint unit and one
:class:`EdgeLabel` per oriented tree edge; the conjugator of a unit is the
base word followed by the expanded labels along the tree path.  A
:class:`ConjugatorFamily` stores those conjugators directly, together with a
diagram permutation applied first.  Families plus the word oracle are the
ground truth; the closed-form label algebra here is checked against them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

from .diagram import CoxeterDiagram, DiagramAutomorphism
from .structure import OrientedTree, TreeEdge, factor_word
from .words import Word, format_word, free_reduce, inverse, power, reducer, word


class LabelError(ValueError):
    """A label does not fit the label space of its tree edge."""


class CompositionError(LabelError):
    """The closed-form composition does not apply to this pair of labels."""


class CanonicalizationError(RuntimeError):
    """Carrying could not restore the per-edge index restrictions.

    ``labeling`` holds the equivalent but non-canonical labeling.
    """

    def __init__(self, message: str, labeling: "AutLabeling"):
        super().__init__(message)
        self.labeling = labeling


# -- the dihedral words x_l(k) ------------------------------------------------------


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def valid_exponents(n: int) -> list[int]:
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


def inverse_exponent(k: int, n: int) -> tuple[int, int]:
    """``(k', d)`` with ``1 <= k' < n`` and ``k k' = 1 + d n``.

    This is the exponent that undoes ``x_l(k)`` pointwise.
    """
    kp = pow(k, -1, n)
    return kp, (k * kp - 1) // n


def negated_inverse_exponent(k: int, n: int) -> tuple[int, int]:
    """``(k', d)`` with ``1 <= k' < n`` and ``k k' + 1 = d n``."""
    kp = (-pow(k, -1, n)) % n
    return kp, (k * kp + 1) // n


# Klein four-group on the index l, as (leading s_i bit, trailing s_j bit).
_KLEIN_BITS = {1: (0, 0), 2: (0, 1), 3: (1, 0), 4: (1, 1)}
_KLEIN_INDEX = {b: l for l, b in _KLEIN_BITS.items()}


def klein(l1: int, l2: int) -> int:
    a, b = _KLEIN_BITS[l1], _KLEIN_BITS[l2]
    return _KLEIN_INDEX[(a[0] ^ b[0], a[1] ^ b[1])]


def compose_x(l: int, k: int, l2: int, k2: int, n: int) -> tuple[int, int]:
    """Index and exponent of the x-part of ``phi' o phi``.

    ``(l, k)`` belongs to ``phi`` and ``(l2, k2)`` to ``phi'``.  The product
    ``k k2`` is reduced mod ``n``; each wrap by ``n`` contributes a factor
    ``(s_i s_j)^(n/2)``, which toggles the index by ``4`` when it is odd.
    """
    q, K = divmod(k * k2, n)
    out = klein(l, l2)
    if q % 2:
        out = klein(out, 4)
    return out, K


@dataclass(frozen=True)
class XWord:
    s_i: str
    s_j: str
    n: int
    l: int
    k: int

    def __post_init__(self):
        if self.l not in (1, 2, 3, 4):
            raise LabelError(f"index l={self.l} not in 1..4")
        if not (1 <= self.k < self.n) or math.gcd(self.k, self.n) != 1:
            raise LabelError(f"exponent k={self.k} invalid for n={self.n}")


def x_word(x: XWord) -> Word:
    """Expand one of the four geodesic words conjugating ``s_j``."""
    si, sj, n, k = x.s_i, x.s_j, x.n, x.k
    if x.l == 1:
        return power(sj, si, (k - 1) // 2)
    if x.l == 2:
        return power(sj, si, (k - 1) // 2) + (sj,)
    if x.l == 3:
        return power(si, sj, (n - k - 1) // 2) + (si,)
    return power(si, sj, (n - k + 1) // 2)


# -- edge labels ---------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeLabel:
    """Label of one tree edge.

    ``central`` is the type-1 choice of ``(s_1 s_2)^(m/2)``; ``epsilon`` the
    type-2 choice of the cut vertex; ``u``/``v`` are neighbour ids standing for
    the reflections ``(t s)^(m/2-1) t``; ``l``/``k`` describe ``x_l(k)``
    (both 0 when the edge type has no x-part).
    """

    case: int
    central: bool = False
    epsilon: bool = False
    u: tuple[str, ...] = ()
    v: tuple[str, ...] = ()
    l: int = 0
    k: int = 0

    @classmethod
    def identity(cls, e: TreeEdge) -> "EdgeLabel":
        return cls(e.case, l=1, k=1) if e.has_x else cls(e.case)

    def is_identity(self) -> bool:
        return not (self.central or self.epsilon or self.u or self.v) and self.l in (0, 1) and self.k in (0, 1)

    def xword(self, e: TreeEdge) -> XWord:
        return XWord(e.s_i, e.s_j, e.n, self.l, self.k)


def _factors(ids: Sequence[str], s: str, d: CoxeterDiagram) -> Word:
    out: list[str] = []
    for t in ids:
        out.extend(factor_word(t, s, d.label(t, s)))
    return tuple(out)


def expand_label(e: TreeEdge, lab: EdgeLabel, d: CoxeterDiagram) -> Word:
    """The word ``w_i^-1 w_j`` carried by ``lab`` on edge ``e``."""
    if e.case == 1:
        return power(e.s_i, e.s_j, e.n // 2) if lab.central else ()
    if e.case == 2:
        s = e.s_i
        return ((s,) if lab.epsilon else ()) + _factors(lab.u, s, d) + _factors(lab.v, s, d)
    x = x_word(lab.xword(e))
    return _factors(lab.u, e.s_i, d) + x + _factors(lab.v, e.s_j, d)


def check_label(e: TreeEdge, lab: EdgeLabel, strict: bool = True) -> None:
    """Raise :class:`LabelError` unless ``lab`` lies in the label space of ``e``.

    With ``strict=False`` every index ``l`` in 1..4 is tolerated, which is the
    state of a labeling before carrying.
    """
    if lab.case != e.case:
        raise LabelError(f"label of type {lab.case} on edge of type {e.case}")
    if e.case == 1 and (lab.epsilon or lab.u or lab.v or lab.l or lab.k):
        raise LabelError("type 1 labels carry only the central choice")
    if e.case != 1 and lab.central:
        raise LabelError("central choice only exists on type 1 edges")
    if e.case != 2 and lab.epsilon:
        raise LabelError("epsilon only exists on type 2 edges")
    for name, seq, allowed in (("u", lab.u, e.u_ids), ("v", lab.v, e.v_ids)):
        if any(t not in allowed for t in seq):
            raise LabelError(f"{name}={seq} uses ids outside {allowed}")
        if any(a == b for a, b in zip(seq, seq[1:])):
            raise LabelError(f"{name}={seq} repeats a factor")
    if e.has_x:
        XWord(e.s_i, e.s_j, e.n, lab.l, lab.k)
        if strict and lab.l not in e.l_allowed:
            raise LabelError(f"index l={lab.l} not allowed on type {e.case} edge (allowed {e.l_allowed})")
    elif lab.l or lab.k:
        raise LabelError(f"type {e.case} edge has no x-part")


# -- labelings and families ----------------------------------------------------------


@dataclass(frozen=True)
class AutLabeling:
    tree: OrientedTree = field(compare=False, repr=False)
    base: Word
    labels: tuple[EdgeLabel, ...]

    @classmethod
    def identity(cls, tree: OrientedTree, base: Sequence[str] = ()) -> "AutLabeling":
        return cls(tree, tuple(base), tuple(EdgeLabel.identity(e) for e in tree.edges))

    @property
    def diagram(self) -> CoxeterDiagram:
        return self.tree.diagram

    def validate(self, strict: bool = True) -> None:
        if len(self.labels) != len(self.tree.edges):
            raise LabelError("every tree edge needs exactly one label")
        for e, lab in zip(self.tree.edges, self.labels):
            check_label(e, lab, strict)

    def with_label(self, index: int, lab: EdgeLabel) -> "AutLabeling":
        labels = list(self.labels)
        labels[index] = lab
        return replace(self, labels=tuple(labels))

    def is_canonical(self) -> bool:
        try:
            self.validate(strict=True)
        except LabelError:
            return False
        return True


def conjugator_for_unit(a: AutLabeling, unit: int) -> Word:
    """Base word times the expanded labels from the basepoint to ``unit``."""
    d = a.diagram
    index = {e.child: i for i, e in enumerate(a.tree.edges)}
    out = list(a.base)
    for e in a.tree.path(unit):
        out.extend(expand_label(e, a.labels[index[e.child]], d))
    return free_reduce(out)


@dataclass(frozen=True)
class ConjugatorFamily:
    """``s -> w_U pi(s) w_U^-1`` where ``U`` is the first unit containing ``pi(s)``."""

    diagram: CoxeterDiagram = field(repr=False)
    units: tuple[tuple[str, ...], ...]
    words: tuple[Word, ...]
    perm: DiagramAutomorphism

    def home(self, s: str) -> int:
        for i, U in enumerate(self.units):
            if s in U:
                return i
        raise KeyError(s)

    def generator_image(self, s: str, budget: int | None = None) -> Word:
        t = self.perm(s)
        r = _red(self.diagram, budget)
        return r.conj(self.words[self.home(t)], (t,))

    def unit_of(self, U: Iterable[str]) -> int:
        return self.units.index(tuple(sorted(U)))


def _red(d: CoxeterDiagram, budget: int | None):
    return reducer(d) if budget is None else reducer(d, budget)


def to_family(a: AutLabeling, pi: DiagramAutomorphism | None = None) -> ConjugatorFamily:
    d = a.diagram
    words = tuple(
        _red(d, None).reduce(conjugator_for_unit(a, i)) for i in range(len(a.tree.units))
    )
    return ConjugatorFamily(d, a.tree.units, words, pi or DiagramAutomorphism.identity(d))


def diagram_family(tree: OrientedTree, pi: DiagramAutomorphism) -> ConjugatorFamily:
    d = tree.diagram
    return ConjugatorFamily(d, tree.units, tuple(() for _ in tree.units), pi)


def apply(f: AutLabeling | ConjugatorFamily, w: Sequence[str], budget: int | None = None) -> Word:
    """Image of the word ``w``, reduced."""
    if isinstance(f, AutLabeling):
        f = to_family(f)
    images: dict[str, Word] = {}
    out: list[str] = []
    for s in w:
        if s not in images:
            images[s] = f.generator_image(s, budget)
        out.extend(images[s])
    return _red(f.diagram, budget).reduce(out)


def generator_images(f: AutLabeling | ConjugatorFamily) -> dict[str, Word]:
    if isinstance(f, AutLabeling):
        f = to_family(f)
    return {s: f.generator_image(s) for s in f.diagram.vertices}


def is_consistent(f: ConjugatorFamily) -> bool:
    """Units sharing a vertex conjugate it to the same element."""
    r = reducer(f.diagram)
    for s in f.diagram.vertices:
        imgs = {r.conj(f.words[i], (s,)) for i, U in enumerate(f.units) if s in U}
        if len(imgs) > 1:
            return False
    return True


def is_homomorphism(f: AutLabeling | ConjugatorFamily) -> bool:
    """Every defining relator maps to the identity."""
    from .words import relators

    if isinstance(f, AutLabeling):
        f = to_family(f)
    return all(not apply(f, rel) for rel in relators(f.diagram))


def compose_general(f2: ConjugatorFamily, f: ConjugatorFamily) -> ConjugatorFamily:
    """The family of ``f2 o f`` (``f`` applied first)."""
    d = f.diagram
    r = reducer(d)
    pre = f2.perm.inverse()
    words = []
    for i, U in enumerate(f.units):
        src = f.unit_of(pre(s) for s in U)
        words.append(r.reduce(apply(f2, f.words[src]) + f2.words[i]))
    return ConjugatorFamily(d, f.units, tuple(words), f2.perm.compose(f.perm))


def equal_general(f2: ConjugatorFamily, f: ConjugatorFamily) -> bool:
    r = reducer(f.diagram)
    return all(r.equal(f2.generator_image(s), f.generator_image(s)) for s in f.diagram.vertices)


def is_identity_family(f: ConjugatorFamily) -> bool:
    return all(f.generator_image(s) == (s,) for s in f.diagram.vertices)


# -- closed-form algebra on labelings ----------------------------------------------------


def transport_factors(outer: AutLabeling, s: str, home: int, ids: Sequence[str]) -> tuple[str, ...]:
    """Rewrite factor ids of ``s`` as seen from unit ``home`` under ``outer``.

    ``outer`` conjugates the factor ``f(t)`` by the conjugator of a unit
    holding ``{s, t}``, which may differ from that of ``home`` by central
    type-1 labels ``(s t_k)^(m/2) = s f(t_k)``.  Each such label wraps ``t`` as
    ``t_k t t_k``.  Any other nontrivial label in between is unsupported.
    """
    tree, d = outer.tree, outer.diagram
    index = {e.child: i for i, e in enumerate(tree.edges)}
    out: list[str] = []
    for t in ids:
        holders = [i for i, U in enumerate(tree.units) if s in U and t in U]
        if not holders or home in holders:
            out.append(t)
            continue
        route = min((tree.walk(home, i) for i in holders), key=len)
        wrap: list[str] = []
        for e in route:
            lab = outer.labels[index[e.child]]
            if not expand_label(e, lab, d):
                continue
            if e.case == 1 and s in (e.s_i, e.s_j):
                wrap.append(e.s_j if e.s_i == s else e.s_i)
                continue
            raise CompositionError(
                f"factor {t} of {s} sits behind a type {e.case} edge "
                f"{tree.units[e.parent]}->{tree.units[e.child]} with nontrivial label"
            )
        out.extend(wrap + [t] + wrap[::-1])
    return free_reduce(out)


def _compose_label(e: TreeEdge, lab2: EdgeLabel, lab: EdgeLabel, outer: AutLabeling) -> EdgeLabel:
    """Edge label of ``phi' o phi`` from ``lab2`` (phi') and ``lab`` (phi)."""
    if e.case == 1:
        return EdgeLabel(1, central=lab.central ^ lab2.central)
    u = free_reduce(transport_factors(outer, e.s_i, e.parent, lab.u) + lab2.u)
    v = free_reduce(lab2.v + transport_factors(outer, e.s_j, e.child, lab.v))
    if e.case == 2:
        return EdgeLabel(2, epsilon=lab.epsilon ^ lab2.epsilon, u=u, v=v)
    l, k = compose_x(lab.l, lab.k, lab2.l, lab2.k, e.n)
    return EdgeLabel(e.case, u=u, v=v, l=l, k=k)


def compose_labelings(a2: AutLabeling, a: AutLabeling, canonical: bool = True) -> AutLabeling:
    """Labeling of ``a2 o a`` from the per-edge composition formulas.

    The base word becomes ``a2(base) * base2``.  With ``canonical=True`` the
    result is passed through :func:`canonicalize`, which may raise
    :class:`CanonicalizationError` carrying the raw composition.
    """
    if a2.tree.units != a.tree.units or a2.tree.edges != a.tree.edges:
        raise LabelError("labelings live on different trees")
    labels = tuple(
        _compose_label(e, l2, l1, a2) for e, l2, l1 in zip(a.tree.edges, a2.labels, a.labels)
    )
    base = reducer(a.diagram).reduce(apply(a2, a.base) + a2.base)
    out = AutLabeling(a.tree, base, labels)
    return canonicalize(out) if canonical else out


def _toggle_trailing(lab: EdgeLabel) -> EdgeLabel:
    # x_l(k) s_j = x_l'(k): flips the trailing s_j bit
    return replace(lab, l=klein(lab.l, 2))


def _prepend_leading(lab: EdgeLabel, n: int) -> EdgeLabel:
    # s_i x_l(k) = x_l'(n - k) with the leading s_i bit flipped
    return replace(lab, l=klein(lab.l, 3), k=n - lab.k)


def canonicalize(a: AutLabeling) -> AutLabeling:
    """Restore the per-edge index restrictions without changing the action.

    Edges are visited from the leaves up.  On an edge ending in a degree-1
    vertex every index collapses to 1, since the whole Klein group centralizes
    that vertex.  Otherwise ``x_3``/``x_4`` lose a leading ``s_i`` which is
    absorbed by the parent edge (or the base word at the basepoint).
    """
    tree, d = a.tree, a.diagram
    labels = list(a.labels)
    base = list(a.base)
    index = {e.child: i for i, e in enumerate(tree.edges)}

    def fix_leaf(i: int) -> bool:
        e = tree.edges[i]
        U = tree.units[e.child]
        if len(U) == 1 and d.degree(U[0]) == 1:
            labels[i] = replace(labels[i], l=1)
            return True
        return False

    for i in reversed(range(len(tree.edges))):
        e = tree.edges[i]
        lab = labels[i]
        if not e.has_x or lab.l in e.l_allowed:
            continue
        if fix_leaf(i):
            continue
        if lab.l not in (3, 4) or e.l_allowed != (1, 2):
            raise CanonicalizationError(f"cannot carry index {lab.l} on type {e.case} edge", a)
        labels[i] = replace(lab, l=lab.l - 2, k=e.n - lab.k)
        pe = tree.parent_edge(e.parent)
        if pe is not None:
            j = index[pe.child]
            if not pe.has_x:
                raise CanonicalizationError("carry reached an edge without an x-part", a)
            labels[j] = _toggle_trailing(labels[j])
            continue
        base.append(e.s_i)
        for c in tree.children(e.parent):
            if c.child != e.child:
                j = index[c.child]
                labels[j] = _prepend_leading(labels[j], c.n)
    for c in tree.children(tree.basepoint):
        j = index[c.child]
        if c.has_x and labels[j].l not in c.l_allowed and not fix_leaf(j):
            raw = AutLabeling(tree, tuple(base), tuple(labels))
            raise CanonicalizationError("carry at the basepoint has no absorbing edge", raw)
    return AutLabeling(tree, reducer(d).reduce(base), tuple(labels))


def invert(a: AutLabeling) -> AutLabeling:
    """Inverse labeling.

    Factor sequences are reversed, epsilon and the type-1 choice stay, and
    ``x_l(k)`` becomes ``x_l'(k')`` with ``k k' = 1 + d n`` and ``l' = l`` or
    the Klein partner ``l o 4`` according to the parity of ``d``.  The base
    word is the inverted labels applied to the reversed base word.
    """
    labels = []
    for e, lab in zip(a.tree.edges, a.labels):
        # the inverse shares the type-1 choices, so transport through a itself
        u = inverse(transport_factors(a, e.s_i, e.parent, lab.u))
        v = inverse(transport_factors(a, e.s_j, e.child, lab.v))
        if not e.has_x:
            labels.append(replace(lab, u=u, v=v))
            continue
        kp, dd = inverse_exponent(lab.k, e.n)
        lp = klein(lab.l, 4) if dd % 2 else lab.l
        labels.append(replace(lab, u=u, v=v, l=lp, k=kp))
    rho = AutLabeling(a.tree, (), tuple(labels))
    base = apply(rho, inverse(a.base))
    return canonicalize(AutLabeling(a.tree, base, tuple(labels)))


def invert_family(a: AutLabeling, pi: DiagramAutomorphism | None = None) -> ConjugatorFamily:
    """Family of ``(g_a o pi)^-1 = pi^-1 o g_a^-1``."""
    inv = to_family(invert(a))
    if pi is None or pi.is_identity():
        return inv
    return compose_general(diagram_family(a.tree, pi.inverse()), inv)


def conjugate_by_diagram(f: ConjugatorFamily, tree: OrientedTree, delta: DiagramAutomorphism) -> ConjugatorFamily:
    """Family of ``delta^-1 o f o delta``."""
    dfam = diagram_family(tree, delta)
    dinv = diagram_family(tree, delta.inverse())
    return compose_general(dinv, compose_general(f, dfam))


# -- enumeration -------------------------------------------------------------------------


def factor_sequences(ids: Sequence[str], bound: int) -> list[tuple[str, ...]]:
    """Sequences over ``ids`` with no equal neighbours; exhaustive if ``len(ids) <= 1``."""
    if len(ids) <= 1:
        return [()] + [(t,) for t in ids]
    out: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(bound):
        frontier = [seq + (t,) for seq in frontier for t in ids if not seq or seq[-1] != t]
        out.extend(frontier)
    return out


def label_space_is_finite(e: TreeEdge) -> bool:
    return len(e.u_ids) <= 1 and len(e.v_ids) <= 1


def edge_labels(e: TreeEdge, bound: int) -> list[EdgeLabel]:
    if e.case == 1:
        return [EdgeLabel(1), EdgeLabel(1, central=True)]
    us = factor_sequences(e.u_ids, bound)
    vs = factor_sequences(e.v_ids, bound)
    if e.case == 2:
        return [EdgeLabel(2, epsilon=eps, u=u, v=v) for eps in (False, True) for u in us for v in vs]
    xs = [(l, k) for k in valid_exponents(e.n) for l in e.l_allowed]
    return [EdgeLabel(e.case, u=u, v=v, l=l, k=k) for u in us for (l, k) in xs for v in vs]


def enumerate_labelings(tree: OrientedTree, bound: int = 2) -> Iterator[AutLabeling]:
    """Labelings with identity base word; factor sequences capped at ``bound``."""
    spaces = [edge_labels(e, bound) for e in tree.edges]
    for combo in itertools.product(*spaces):
        yield AutLabeling(tree, (), tuple(combo))


# -- serialization -------------------------------------------------------------------------


def labeling_to_dict(a: AutLabeling) -> dict:
    units = a.tree.units
    edges = []
    for e, lab in zip(a.tree.edges, a.labels):
        rec: dict = {"edge": [list(units[e.parent]), list(units[e.child])], "type": e.case}
        if e.case == 1:
            if lab.central:
                rec["u"] = [e.s_i, e.s_j]
        else:
            if lab.epsilon:
                rec["epsilon"] = True
            if lab.u:
                rec["u"] = list(lab.u)
            if lab.v:
                rec["v"] = list(lab.v)
            if e.has_x:
                rec["x"] = {"l": lab.l, "k": lab.k}
        edges.append(rec)
    return {"base": format_word(a.base), "edges": edges}


def labeling_from_dict(tree: OrientedTree, data: dict) -> AutLabeling:
    index = {(tree.units[e.parent], tree.units[e.child]): i for i, e in enumerate(tree.edges)}
    labels = [EdgeLabel.identity(e) for e in tree.edges]
    for rec in data.get("edges", []):
        key = (tuple(sorted(rec["edge"][0])), tuple(sorted(rec["edge"][1])))
        if key not in index:
            raise LabelError(f"{rec['edge']} is not an oriented tree edge")
        i = index[key]
        e = tree.edges[i]
        if "type" in rec and rec["type"] != e.case:
            raise LabelError(f"edge {rec['edge']} has type {e.case}, not {rec['type']}")
        if e.case == 1:
            labels[i] = EdgeLabel(1, central=bool(rec.get("u")))
            continue
        x = rec.get("x") or {}
        labels[i] = EdgeLabel(
            e.case,
            epsilon=bool(rec.get("epsilon", False)),
            u=tuple(rec.get("u", ())),
            v=tuple(rec.get("v", ())),
            l=int(x.get("l", 1)) if e.has_x else 0,
            k=int(x.get("k", 1)) if e.has_x else 0,
        )
    a = AutLabeling(tree, word(data.get("base", ())), tuple(labels))
    a.validate(strict=False)
    return a
