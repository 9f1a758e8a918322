"""Disconnected diagrams: free factors and automorphisms given as triples.

A triple ``(w, u1, u2)`` over ``W1 * W2`` with ``u_i`` in ``W_i`` acts by

* ``s -> w u1^-1 s u1 w^-1`` for ``s`` in the first factor,
* ``s -> w u2 s u2^-1 w^-1`` for ``s`` in the second factor,

so the two factor conjugators differ by ``u1 u2``.  Composition is
``(w', u1', u2') o (w, u1, u2) = (phi'(w) w', u1 u1', u2' u2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import CoxeterDiagram, DiagramError, components
from .words import Word, format_word, inverse, reducer, word


class FactorError(ValueError):
    """Wrong number of factors, or a coordinate using letters of the wrong factor."""


@dataclass(frozen=True)
class FreeDecomposition:
    diagram: CoxeterDiagram
    factors: tuple[CoxeterDiagram, ...]
    flags: tuple[frozenset[str], ...]

    def factor_of(self, s: str) -> int:
        for i, f in enumerate(self.factors):
            if s in f.vertices:
                return i
        raise KeyError(s)

    def to_dict(self) -> dict:
        return {
            "factors": [
                {
                    "vertices": list(f.vertices),
                    "edges": [[u, v, m] for (u, v), m in f.labels.items()],
                    "flags": sorted(fl),
                    "finite_group": factor_group_is_finite(f, fl),
                }
                for f, fl in zip(self.factors, self.flags)
            ]
        }


def decompose(d: CoxeterDiagram) -> FreeDecomposition:
    """Connected components ordered by their least vertex.

    Flags come from ``factor <i> ...`` directives, numbered from 1 in that order.
    """
    comps = components(d)  # sorted tuples, so ordered by least vertex
    factors = tuple(d.induced(c) for c in comps)
    flags = tuple(frozenset(d.factor_flags.get(i + 1, ())) for i in range(len(comps)))
    return FreeDecomposition(d, factors, flags)


def factor_group_is_finite(f: CoxeterDiagram, flags=frozenset()) -> bool:
    """Finiteness of the Coxeter group of one connected factor.

    One vertex gives Z2 and one labelled edge a finite dihedral group.  With
    three or more vertices and every label at least 4 the group contains an
    infinite rank-3 special subgroup, so it is infinite.  A user flag that
    contradicts this is rejected.
    """
    derived = len(f.vertices) <= 2
    if "finite" in flags and "infinite" in flags:
        raise DiagramError("factor flagged both finite and infinite")
    if ("finite" in flags and not derived) or ("infinite" in flags and derived):
        raise DiagramError(f"finiteness flag contradicts the factor on {list(f.vertices)}")
    return derived


def out_finite_freeprod(dec: FreeDecomposition) -> dict:
    """Finiteness of Out for a free product of at most two factors.

    A single factor is handed to :mod:`coxaut.outgroup`.
    """
    k = len(dec.factors)
    if k == 1:
        from .outgroup import is_out_finite

        finite, witness = is_out_finite(dec.factors[0])
        return {"factors": 1, "finite": finite, "witness": witness, "reason": "connected diagram"}
    fin = [factor_group_is_finite(f, fl) for f, fl in zip(dec.factors, dec.flags)]
    out = {"factors": k, "factor_finite": fin}
    if k >= 3:
        out.update(finite=False, reason="three or more free factors")
    else:
        out.update(finite=all(fin), reason="finite iff both factor groups are finite")
    caveats = []
    if not all("strongly_rigid" in fl for fl in dec.flags):
        caveats.append("some factor is not asserted strongly rigid")
    if any(fin):
        caveats.append("a finite factor needs a further quotient by its centralizer")
    out["caveats"] = caveats
    return out


@dataclass(frozen=True)
class TripleAut:
    w: Word
    u1: Word
    u2: Word

    @classmethod
    def identity(cls) -> "TripleAut":
        return cls((), (), ())

    def to_dict(self) -> dict:
        return {"w": format_word(self.w), "u1": format_word(self.u1), "u2": format_word(self.u2)}

    @classmethod
    def from_dict(cls, data: dict) -> "TripleAut":
        return cls(word(data.get("w", ())), word(data.get("u1", ())), word(data.get("u2", ())))


def _two(dec: FreeDecomposition) -> None:
    if len(dec.factors) != 2:
        raise FactorError(f"triples need exactly 2 free factors, got {len(dec.factors)}")


def check_triple(t: TripleAut, dec: FreeDecomposition) -> None:
    _two(dec)
    for i, u in ((0, t.u1), (1, t.u2)):
        stray = [s for s in u if s not in dec.factors[i].vertices]
        if stray:
            raise FactorError(f"u{i + 1} uses letters {stray} outside factor {i + 1}")
    verts = set(dec.diagram.vertices)
    if any(s not in verts for s in t.w):
        raise FactorError("w uses unknown letters")


def canonical_triple(t: TripleAut, dec: FreeDecomposition) -> TripleAut:
    r = reducer(dec.diagram)
    return TripleAut(r.reduce(t.w), r.reduce(t.u1), r.reduce(t.u2))


def triple_image(t: TripleAut, s: str, dec: FreeDecomposition) -> Word:
    r = reducer(dec.diagram)
    if dec.factor_of(s) == 0:
        conj = t.w + inverse(t.u1)
    else:
        conj = t.w + t.u2
    return r.conj(conj, (s,))


def triple_apply(t: TripleAut, w: Word, dec: FreeDecomposition) -> Word:
    check_triple(t, dec)
    out: list[str] = []
    for s in w:
        out.extend(triple_image(t, s, dec))
    return reducer(dec.diagram).reduce(out)


def compose_triples(t2: TripleAut, t: TripleAut, dec: FreeDecomposition) -> TripleAut:
    """``t2 o t``: ``t`` is applied first."""
    check_triple(t2, dec)
    check_triple(t, dec)
    r = reducer(dec.diagram)
    return TripleAut(
        r.reduce(triple_apply(t2, t.w, dec) + t2.w),
        r.reduce(t.u1 + t2.u1),
        r.reduce(t2.u2 + t.u2),
    )


def invert_triple(t: TripleAut, dec: FreeDecomposition) -> TripleAut:
    check_triple(t, dec)
    r = reducer(dec.diagram)
    u1, u2 = inverse(t.u1), inverse(t.u2)
    rho = TripleAut((), u1, u2)
    return TripleAut(triple_apply(rho, inverse(t.w), dec), r.reduce(u1), r.reduce(u2))


def triples_equal(a: TripleAut, b: TripleAut, dec: FreeDecomposition) -> bool:
    """Pointwise equality of the two actions on every generator."""
    return all(triple_image(a, s, dec) == triple_image(b, s, dec) for s in dec.diagram.vertices)


def is_identity_triple(t: TripleAut, dec: FreeDecomposition) -> bool:
    return all(triple_image(t, s, dec) == (s,) for s in dec.diagram.vertices)
