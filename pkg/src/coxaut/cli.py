"""Command line front end.

Exit status: 0 success, 1 invalid input or failed validation, 2 braid-orbit
budget exhausted, 3 internal cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import words as words_mod
from .automorphism import (
    CanonicalizationError,
    LabelError,
    apply,
    canonicalize,
    compose_general,
    compose_labelings,
    conjugate_by_diagram,
    enumerate_labelings,
    equal_general,
    invert,
    is_homomorphism,
    is_identity_family,
    labeling_from_dict,
    labeling_to_dict,
    to_family,
)
from .diagram import (
    DiagramAutomorphism,
    DiagramError,
    components,
    diagram_automorphisms,
    parse_diagram,
    validate,
)
from .freeprod import (
    FactorError,
    TripleAut,
    compose_triples,
    decompose,
    invert_triple,
    is_identity_triple,
    out_finite_freeprod,
    triple_apply,
    triples_equal,
)
from .outgroup import count_labelings, label_space_size, structure_report
from .structure import centralizer_generators, junctions, modified_spanning_tree, regular_circuits, unit_graph
from .words import OrbitBudgetExceeded, format_word, inverse, reducer, relators, word

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3


class Mismatch(RuntimeError):
    """A closed-form result disagrees with the oracle."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _load_diagram(path: str):
    return parse_diagram(Path(path).read_text())


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _require_connected_valid(d) -> None:
    rep = validate(d)
    if not rep.ok:
        raise DiagramError(json.dumps(rep.to_dict(), sort_keys=True))


def _perm(d, data: dict) -> DiagramAutomorphism:
    if "perm" not in data:
        return DiagramAutomorphism.identity(d)
    pi = DiagramAutomorphism.from_dict(data["perm"])
    if pi not in diagram_automorphisms(d):
        raise LabelError(f"perm {data['perm']} is not a diagram automorphism")
    return pi


def _connected(d) -> bool:
    return len(components(d)) <= 1


# -- subcommands -------------------------------------------------------------------


def cmd_validate(args) -> tuple[dict, int]:
    rep = validate(_load_diagram(args.diagram))
    return rep.to_dict(), EXIT_OK if rep.ok else EXIT_INVALID


def cmd_analyze(args):
    d = _load_diagram(args.diagram)
    _require_connected_valid(d)
    tree = modified_spanning_tree(d)
    g = unit_graph(d, tree.units)
    return {
        "circuits": [list(c) for c in regular_circuits(d)],
        "junctions": [j.to_dict() for j in junctions(d)],
        "units": [list(u) for u in tree.units],
        "unit_graph": g.to_dict(),
        "tree": tree.to_dict(),
    }, EXIT_OK


def cmd_aut_count(args):
    d = _load_diagram(args.diagram)
    _require_connected_valid(d)
    tree = modified_spanning_tree(d)
    sizes = [label_space_size(e) for e in tree.edges]
    finite = all(s != float("inf") for s in sizes)
    enumerated = sum(1 for _ in enumerate_labelings(tree, args.bound))
    total = 1
    for s in sizes:
        total *= s
    return {
        "edges": [
            {
                "edge": [list(tree.units[e.parent]), list(tree.units[e.child])],
                "type": e.case,
                "size": "infinite" if s == float("inf") else int(s),
            }
            for e, s in zip(tree.edges, sizes)
        ],
        "labelings": int(total) if finite else "infinite",
        "enumerated": enumerated,
        "bound": None if finite else args.bound,
        "diag_order": len(diagram_automorphisms(d)),
    }, EXIT_OK


def cmd_out(args):
    d = _load_diagram(args.diagram)
    rep = validate(d)
    if not (rep.even and rep.large_type and rep.nvb):
        raise DiagramError(json.dumps(rep.to_dict(), sort_keys=True))
    if not rep.connected:
        return {"free_product": out_finite_freeprod(decompose(d))}, EXIT_OK
    out = structure_report(d)
    data = out.to_dict()
    if args.assert_closed_forms and out.mismatches():
        raise Mismatch("; ".join(out.mismatches()), data)
    return data, EXIT_OK


def _triple_ctx(args):
    d = _load_diagram(args.diagram)
    dec = decompose(d)
    return d, dec


def cmd_apply(args):
    d = _load_diagram(args.diagram)
    data = _load_json(args.automorphism)
    w = word(args.word)
    if not _connected(d):
        _, dec = _triple_ctx(args)
        return {"image": format_word(triple_apply(TripleAut.from_dict(data), w, dec))}, EXIT_OK
    _require_connected_valid(d)
    tree = modified_spanning_tree(d)
    a = labeling_from_dict(tree, data)
    fam = to_family(a, _perm(d, data))
    return {"word": format_word(w), "image": format_word(apply(fam, w))}, EXIT_OK


def cmd_compose(args):
    """``second o first``: the first file is applied first."""
    d = _load_diagram(args.diagram)
    first, second = _load_json(args.first), _load_json(args.second)
    if not _connected(d):
        _, dec = _triple_ctx(args)
        t, t2 = TripleAut.from_dict(first), TripleAut.from_dict(second)
        c = compose_triples(t2, t, dec)
        ok = all(
            triple_apply(t2, triple_apply(t, (s,), dec), dec) == triple_apply(c, (s,), dec)
            for s in d.vertices
        )
        out = c.to_dict()
        if not ok:
            raise Mismatch("triple composition disagrees with pointwise composition", out)
        return out, EXIT_OK
    _require_connected_valid(d)
    tree = modified_spanning_tree(d)
    a, a2 = labeling_from_dict(tree, first), labeling_from_dict(tree, second)
    pi, pi2 = _perm(d, first), _perm(d, second)
    truth = compose_general(to_family(a2, pi2), to_family(a, pi))
    out: dict = {}
    if pi.is_identity() and pi2.is_identity():
        raw = compose_labelings(a2, a, canonical=False)
        try:
            result, out["canonical"] = canonicalize(raw), True
        except CanonicalizationError as exc:
            result, out["canonical"], out["canonicalization_error"] = exc.labeling, False, str(exc)
        out["labeling"] = labeling_to_dict(result)
        if not equal_general(to_family(result), truth):
            raise Mismatch("label composition disagrees with family composition", out)
    out["images"] = {s: format_word(truth.generator_image(s)) for s in d.vertices}
    return out, EXIT_OK


def cmd_invert(args):
    d = _load_diagram(args.diagram)
    data = _load_json(args.automorphism)
    if not _connected(d):
        _, dec = _triple_ctx(args)
        t = TripleAut.from_dict(data)
        inv = invert_triple(t, dec)
        if not (is_identity_triple(compose_triples(inv, t, dec), dec)):
            raise Mismatch("triple inverse is not a two-sided inverse", inv.to_dict())
        return inv.to_dict(), EXIT_OK
    _require_connected_valid(d)
    tree = modified_spanning_tree(d)
    a = labeling_from_dict(tree, data)
    if _perm(d, data).is_identity() is False:
        raise LabelError("invert takes labelings without a diagram permutation")
    inv = invert(a)
    out = labeling_to_dict(inv)
    f, g = to_family(a), to_family(inv)
    if not (is_identity_family(compose_general(g, f)) and is_identity_family(compose_general(f, g))):
        raise Mismatch("inverse labeling is not a two-sided inverse", out)
    return out, EXIT_OK


def cmd_decompose(args):
    dec = decompose(_load_diagram(args.diagram))
    out = dec.to_dict()
    out["out_finite"] = out_finite_freeprod(dec) if len(dec.factors) != 1 else None
    return out, EXIT_OK


# -- verify --------------------------------------------------------------------------


def _rand_word(rng: random.Random, letters, max_len: int) -> tuple[str, ...]:
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def verify_diagram(d, bound: int = 1, samples: int = 30, pairs: int = 30, seed: int = 0) -> dict:
    """Run every oracle-backed check on one connected valid diagram.

    Returns ``{check name: {"passed": int, "failed": int, "examples": [...]}}``.
    """
    rng = random.Random(seed)
    r = reducer(d)
    results: dict[str, dict] = {}

    def record(name: str, ok: bool, detail=None):
        slot = results.setdefault(name, {"passed": 0, "failed": 0, "examples": []})
        slot["passed" if ok else "failed"] += 1
        if not ok and len(slot["examples"]) < 3:
            slot["examples"].append(detail)

    for rel in relators(d):
        record("relators", not r.reduce(rel), format_word(rel))
    for _ in range(50):
        w = _rand_word(rng, d.vertices, 12)
        record("word_inverse", not r.reduce(w + inverse(w)), format_word(w))

    for J in [(s,) for s in d.vertices] + list(d.edges):
        for g in centralizer_generators(d, J):
            for s in J:
                record("centralizers", r.equal(g + (s,), (s,) + g), [list(J), format_word(g)])

    tree = modified_spanning_tree(d)
    labs = list(enumerate_labelings(tree, bound))
    rng.shuffle(labs)
    labs = labs[:samples]
    for a in labs:
        rec = labeling_to_dict(a)
        record("homomorphism", is_homomorphism(a), rec)
        inv = invert(a)
        f, g = to_family(a), to_family(inv)
        two_sided = is_identity_family(compose_general(g, f)) and is_identity_family(compose_general(f, g))
        record("inverse", two_sided, rec)
        record("canonical_form", inv.is_canonical(), rec)

    for _ in range(pairs if labs else 0):
        a = rng.choice(labs)
        b = rng.choice(labs)
        a = type(a)(a.tree, _rand_word(rng, d.vertices, 3), a.labels)
        b = type(b)(b.tree, _rand_word(rng, d.vertices, 3), b.labels)
        truth = compose_general(to_family(b), to_family(a))
        raw = compose_labelings(b, a, canonical=False)
        detail = {"first": labeling_to_dict(a), "second": labeling_to_dict(b)}
        record("composition", equal_general(to_family(raw), truth), detail)
        try:
            canon = canonicalize(raw)
        except CanonicalizationError:
            record("canonicalization", False, detail)
            continue
        record("canonicalization", equal_general(to_family(canon), truth), detail)

    for delta in diagram_automorphisms(d):
        for a in labs[:5]:
            fam = conjugate_by_diagram(to_family(a), tree, delta)
            record("diagram_conjugation", is_homomorphism(fam), [delta.as_dict(), labeling_to_dict(a)])

    rep = structure_report(d, tree)
    for m in rep.mismatches() or [None]:
        record("closed_forms", m is None, m)
    if rep.finite:
        count = count_labelings(tree)
        record("order_vs_enumeration", rep.order == rep.diag_order * count, [rep.order, count])
    return results


def verify_free_product(d, samples: int = 30, seed: int = 0) -> dict:
    dec = decompose(d)
    rng = random.Random(seed)
    results: dict[str, dict] = {}

    def record(name, ok, detail=None):
        slot = results.setdefault(name, {"passed": 0, "failed": 0, "examples": []})
        slot["passed" if ok else "failed"] += 1
        if not ok and len(slot["examples"]) < 3:
            slot["examples"].append(detail)

    if len(dec.factors) != 2:
        return results  # triples are only defined for two factors
    f1, f2 = dec.factors
    r = reducer(d)

    def rand_triple():
        return TripleAut(
            r.reduce(_rand_word(rng, d.vertices, 5)),
            r.reduce(_rand_word(rng, f1.vertices, 4)),
            r.reduce(_rand_word(rng, f2.vertices, 4)),
        )

    for _ in range(samples):
        a, b, c = rand_triple(), rand_triple(), rand_triple()
        left = compose_triples(c, compose_triples(b, a, dec), dec)
        right = compose_triples(compose_triples(c, b, dec), a, dec)
        record("associativity", triples_equal(left, right, dec), [a.to_dict(), b.to_dict(), c.to_dict()])
        ab = compose_triples(b, a, dec)
        ok = all(triple_apply(b, triple_apply(a, (s,), dec), dec) == triple_apply(ab, (s,), dec) for s in d.vertices)
        record("pointwise_composition", ok, [a.to_dict(), b.to_dict()])
        inv = invert_triple(a, dec)
        record(
            "inverse",
            is_identity_triple(compose_triples(inv, a, dec), dec) and is_identity_triple(compose_triples(a, inv, dec), dec),
            a.to_dict(),
        )
        inner = TripleAut(a.w, (), ())
        ok = all(triple_apply(inner, (s,), dec) == r.conj(a.w, (s,)) for s in d.vertices)
        record("inner", ok, a.to_dict())
    return results


def cmd_verify(args):
    d = _load_diagram(args.diagram)
    rep = validate(d)
    if not (rep.even and rep.large_type and rep.nvb):
        raise DiagramError(json.dumps(rep.to_dict(), sort_keys=True))
    if rep.connected:
        results = verify_diagram(d, args.bound, args.samples, args.pairs, args.seed)
    else:
        results = verify_free_product(d, args.samples, args.seed)
    failed = sum(v["failed"] for v in results.values())
    out = {"checks": results, "failed": failed}
    if not rep.connected:
        out["out_finite"] = out_finite_freeprod(decompose(d))
    if failed:
        raise Mismatch(f"{failed} oracle checks failed", out)
    return out, EXIT_OK


# -- plumbing ------------------------------------------------------------------------


def _render_text(data, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(
            f"{pad}-\n{_render_text(v, indent + 1)}" if isinstance(v, (dict, list)) else f"{pad}- {v}"
            for v in data
        )
    return f"{pad}{data}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxaut", description="Automorphisms of even large-type NVB Coxeter groups")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--budget", type=int, default=words_mod.DEFAULT_BUDGET, help="braid-orbit cap for the word oracle")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        sp = sub.add_parser(name, help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "diagram", help="check evenness, large type, connectivity and NVB")
    add("analyze", cmd_analyze, "diagram", help="circuits, junctions, units, unit graph and spanning tree")
    sp = add("aut-count", cmd_aut_count, "diagram", help="label space sizes and labeling count")
    sp.add_argument("--bound", type=int, default=2, help="factor sequence length cap for infinite spaces")
    sp = add("out", cmd_out, "diagram", help="finiteness, order and structure of Out(W)")
    sp.add_argument("--assert-closed-forms", action="store_true", help="exit 3 if a closed form disagrees")
    add("apply", cmd_apply, "diagram", "automorphism", "word", help="image of a word")
    add("compose", cmd_compose, "diagram", "first", "second", help="second o first, cross-checked")
    add("invert", cmd_invert, "diagram", "automorphism", help="inverse, cross-checked")
    sp = add("verify", cmd_verify, "diagram", help="run the oracle suite")
    sp.add_argument("--bound", type=int, default=1)
    sp.add_argument("--samples", type=int, default=30)
    sp.add_argument("--pairs", type=int, default=30)
    sp.add_argument("--seed", type=int, default=0)
    add("decompose", cmd_decompose, "diagram", help="free factors and finiteness of Out")
    return p


def _emit(args, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(_render_text(data))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    words_mod.set_default_budget(args.budget)
    try:
        data, status = args.func(args)
    except OrbitBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        _emit(args, exc.report)
        return EXIT_MISMATCH
    except (DiagramError, LabelError, FactorError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(args, data)
    return status


if __name__ == "__main__":
    sys.exit(main())
