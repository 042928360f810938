"""Command-line interface.

Exit status: 0 on success (including an Unknown verdict), 1 on a domain error
such as BoundaryNotTrivial or an unparsable document, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import document, search, surface
from .errors import BraidError, BudgetExceeded
from .groups import abelianization_rank, count_homs
from .surface import MonodromyTuple


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _load(path: str) -> document.TupleDocument:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such document: {path}")
    return document.load(p)


def _load_valid(path: str) -> document.TupleDocument:
    doc = _load(path)
    _validate(doc)
    return doc


def _validate(doc: document.TupleDocument) -> None:
    try:
        surface.validate(doc.tuple)
    except BraidError as exc:
        line = doc.line_of(exc.entry)
        if line is not None:
            raise type(exc)(f"line {line}: {exc}", entry=exc.entry) from None
        raise


def _bounds(args) -> search.SearchBounds:
    return search.SearchBounds(
        max_depth=args.max_depth,
        max_degree=args.max_degree,
        max_conjugator_length=args.max_conj_len,
        node_budget=args.node_budget,
        moves=search.HURWITZ_ONLY if args.hurwitz_only else search.ALL_MOVES,
    )


def invariants_of(T: MonodromyTuple, hom_n: Sequence[int]) -> dict:
    P = surface.complement_group(T)
    homs = {}
    for n in hom_n:
        try:
            homs[str(n)] = count_homs(P, n)
        except BudgetExceeded:
            homs[str(n)] = None
    return {
        "degree": T.degree,
        "branch_points": len(T.entries),
        "euler_characteristic": surface.euler_characteristic_closure(T),
        "components": surface.components(T),
        "genus": surface.genus_list(T),
        "abelianization_rank": abelianization_rank(P),
        "homs_to_Sn": homs,
    }


def verdict_object(verdict: search.Verdict) -> dict:
    if isinstance(verdict, search.Equivalent):
        return {
            "verdict": "Equivalent",
            "trace": search.format_moves(verdict.trace),
            "depth": verdict.depth,
            "explored": verdict.explored,
        }
    if isinstance(verdict, search.Distinct):
        return {"verdict": "Distinct", "invariant": verdict.invariant, "values": list(verdict.values)}
    return {"verdict": "Unknown", "explored": verdict.explored}


def cmd_validate(args) -> int:
    doc = _load(args.document)
    try:
        _validate(doc)
    except BraidError as exc:
        _emit(
            args,
            {"ok": False, "error": type(exc).__name__, "message": str(exc), "line": doc.line_of(exc.entry)},
            f"error: {type(exc).__name__}: {exc}",
        )
        return 1
    _emit(args, {"ok": True}, "ok")
    return 0


def cmd_invariants(args) -> int:
    doc = _load_valid(args.document)
    inv = invariants_of(doc.tuple, args.hom_n)
    if doc.label is not None:
        inv["label"] = doc.label
    lines = [
        f"degree: {inv['degree']}",
        f"branch points: {inv['branch_points']}",
        f"euler characteristic: {inv['euler_characteristic']}",
        f"components: {inv['components']}",
        f"genus: {inv['genus']}",
        f"abelianization rank: {inv['abelianization_rank']}",
    ]
    lines += [f"homs to S{n}: {v if v is not None else 'budget exceeded'}" for n, v in inv["homs_to_Sn"].items()]
    _emit(args, inv, "\n".join(lines))
    return 0


def cmd_normal_form(args) -> int:
    doc = _load_valid(args.document)
    key = search.canonical_key(doc.tuple)
    payload = {
        "degree": key.degree,
        "entries": [
            {"infimum": nf.infimum, "factors": [list(f.images) for f in nf.factors]} for nf in key.entries
        ],
    }
    text = "\n".join([f"degree {key.degree}"] + [str(nf) for nf in key.entries])
    _emit(args, payload, text)
    return 0


def cmd_apply(args) -> int:
    doc = _load_valid(args.document)
    result = search.verify_trace(doc.tuple, search.parse_moves(args.script))
    if args.json:
        sys.stdout.write(document.format_json(result, doc.label))
    else:
        sys.stdout.write(document.format_text(result))
    return 0


def cmd_equiv(args) -> int:
    left, right = _load_valid(args.first), _load_valid(args.second)
    verdict = search.search_equivalence(left.tuple, right.tuple, _bounds(args))
    obj = verdict_object(verdict)
    if obj["verdict"] == "Equivalent":
        text = f"Equivalent (depth {obj['depth']}): {obj['trace'] or '(no moves)'}"
    elif obj["verdict"] == "Distinct":
        text = f"Distinct: {obj['invariant']} {obj['values'][0]} vs {obj['values'][1]}"
    else:
        text = f"Unknown after exploring {obj['explored']} states"
    _emit(args, obj, text)
    return 0


def cmd_enumerate(args) -> int:
    tuples = list(search.enumerate_tuples(args.degree, args.branch_points, args.max_conj_len))
    labels = [f"m{args.degree}k{args.branch_points}_{i:04d}" for i in range(len(tuples))]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for label, T in zip(labels, tuples):
            (out / f"{label}.txt").write_text(document.format_text(T), encoding="utf-8")
    if args.json:
        print(json.dumps([document.to_json_object(T, lab) for lab, T in zip(labels, tuples)], indent=2, sort_keys=True))
    else:
        print("\n".join(f"# {lab}\n{document.format_text(T)}" for lab, T in zip(labels, tuples)), end="")
    return 0


def cmd_census(args) -> int:
    if args.directory:
        directory = Path(args.directory)
        if not directory.is_dir():
            raise UsageError(f"no such directory: {args.directory}")
        docs = [_load_valid(str(p)) for p in sorted(directory.iterdir()) if p.is_file()]
        labels = [d.label for d in docs]
        tuples = [d.tuple for d in docs]
    else:
        if args.degree is None or args.branch_points is None:
            raise UsageError("census needs a directory or --degree and --branch-points")
        tuples = list(search.enumerate_tuples(args.degree, args.branch_points, args.max_conj_len))
        labels = [f"m{args.degree}k{args.branch_points}_{i:04d}" for i in range(len(tuples))]
    classes, unresolved = search.census(tuples, _bounds(args))
    rows = []
    for number, cls in enumerate(classes, 1):
        rep = tuples[cls.representative]
        rows.append({
            "class": number,
            "size": len(cls.members),
            "representative": labels[cls.representative],
            "members": [labels[i] for i in cls.members],
            "euler_characteristic": surface.euler_characteristic_closure(rep),
            "components": surface.components(rep),
            "genus": surface.genus_list(rep),
            "traces": {labels[i]: search.format_moves(t) for i, t in cls.traces.items()},
        })
    payload = {
        "tuples": len(tuples),
        "classes": rows,
        "unresolved": [[labels[a], labels[b]] for a, b in unresolved],
    }
    text = [f"{len(tuples)} tuples, {len(classes)} classes"]
    text.append(f"{'class':>5} {'size':>5} {'chi':>4} {'comp':>4}  genus  representative")
    for r in rows:
        text.append(
            f"{r['class']:>5} {r['size']:>5} {r['euler_characteristic']:>4} {r['components']:>4}"
            f"  {r['genus']}  {r['representative']}"
        )
    if unresolved:
        text.append(f"{len(unresolved)} comparisons ended Unknown")
    _emit(args, payload, "\n".join(text))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--max-depth", type=int, default=8)
    bounds.add_argument("--max-degree", type=int, default=None, help="default: largest input degree + 2")
    bounds.add_argument("--max-conj-len", type=int, default=6)
    bounds.add_argument("--node-budget", type=int, default=1_000_000)
    bounds.add_argument("--hurwitz-only", action="store_true", help="search with Hurwitz moves alone")

    parser = argparse.ArgumentParser(prog="surfbraid", description="2-dimensional braids via braid monodromy")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a tuple document")
    p.add_argument("document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="closure invariants")
    p.add_argument("document")
    p.add_argument("--hom-n", type=int, action="append", choices=[2, 3, 4, 5],
                   help="count homomorphisms to S_n (repeatable; default 3)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("normal-form", parents=[common], help="canonical key of a tuple")
    p.add_argument("document")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("apply", parents=[common], help="apply a move script")
    p.add_argument("document")
    p.add_argument("script", help="moves such as \"H1 H2' C-1 S D\"")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("equiv", parents=[common, bounds], help="bounded equivalence search")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("enumerate", parents=[common], help="list all tuples within bounds")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--branch-points", type=int, required=True)
    p.add_argument("--max-conj-len", type=int, default=0)
    p.add_argument("--out", help="also write one document per tuple into this directory")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", parents=[common, bounds], help="equivalence classes of a batch")
    p.add_argument("directory", nargs="?")
    p.add_argument("--degree", type=int)
    p.add_argument("--branch-points", type=int)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "hom_n", None) is None and args.command == "invariants":
        args.hom_n = [3]
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"surfbraid: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"surfbraid: error: {exc}", file=sys.stderr)
        return 2
    except BraidError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
