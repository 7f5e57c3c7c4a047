"""Command-line interface: ``python -m triangle_pc <command>``.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .cache import PcCache
from .graphs import FormalSumError, format_formal_sum, graph_of, parse_formal_sum
from .lattice import gram_of, signature
from .transforms import (
    ElementaryChoice,
    TieChoice,
    TransformError,
    enumerate_elementary_witnesses,
    enumerate_tie_witnesses,
    elementary_transform,
    sort_labels,
    tie_transform,
)
from .triangle import (
    check_membership,
    enumerate_dynkin_subgraphs,
    gabrielov_graph,
    lookup,
    pc,
    subgraph_vertices,
    triangle_table,
)


class UsageError(Exception):
    pass


def _type(symbol: str):
    try:
        return lookup(symbol)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _graph(text: str):
    try:
        return parse_formal_sum(text)
    except FormalSumError as e:
        raise UsageError(str(e)) from None


def _cache(args):
    return None if args.no_cache else PcCache()


def _type_row(t) -> dict:
    return {
        "symbol": t.symbol,
        "triplet": list(t.triplet),
        "milnor": t.milnor,
        "dual": t.dual,
        "exceptions": [format_formal_sum(g) for g in t.exceptions],
    }


def cmd_list(args) -> tuple[object, list[str], int]:
    rows = [_type_row(t) for t in triangle_table()]
    lines = [
        f"{r['symbol']:<4} ({', '.join(map(str, r['triplet']))})  mu={r['milnor']:<3} dual={r['dual']:<4} "
        f"exceptions={len(r['exceptions'])}"
        for r in rows
    ]
    return rows, lines, 0


def cmd_show(args):
    t = _type(args.symbol)
    g = gabrielov_graph(t)
    sig = signature(gram_of(g))
    doc = _type_row(t)
    doc["gabrielov_vertices"] = list(g.vertices)
    doc["gabrielov_edges"] = [sorted(k) for k in g.pairing]
    doc["signature"] = sig.as_dict()
    lines = [
        f"symbol: {t.symbol}",
        f"triplet: {t.triplet}",
        f"milnor: {t.milnor}",
        f"dual: {t.dual}",
        f"exceptions: {', '.join(doc['exceptions']) or 'none'}",
        f"gabrielov vertices: {len(g.vertices)}",
        f"signature: ({sig.plus}, {sig.minus}, {sig.zero})",
    ]
    return doc, lines, 0


def cmd_subgraphs(args):
    t = _type(args.symbol)
    graphs = sorted(enumerate_dynkin_subgraphs(t), key=lambda g: g.listing_key())
    if not args.include_empty:
        graphs = [g for g in graphs if g]
    doc = [{"graph": format_formal_sum(g), "vertices": list(subgraph_vertices(t, g))} for g in graphs]
    lines = [f"{d['graph']}\t{' '.join(d['vertices'])}" for d in doc]
    return doc, lines, 0


def cmd_pc(args):
    t = _type(args.symbol)
    entries = pc(t, include_empty=args.include_empty, workers=args.workers, cache=_cache(args))
    if args.bar_only:
        entries = [e for e in entries if e.tag == "pc-bar"]
    doc, lines = [], []
    for e in entries:
        item = {"graph": format_formal_sum(e.graph), "rank": e.graph.rank, "tag": e.tag}
        line = item["graph"] + (" [B-2]" if e.tag == "exception" else "")
        if args.witness and e.witness is not None:
            item["witness"] = e.witness.to_json()
            line += "\t" + _witness_text(item["witness"])
        doc.append(item)
        lines.append(line)
    return {"symbol": t.symbol, "graphs": doc}, lines, 0


def _witness_text(w: dict) -> str:
    if w["kind"] == "elementary":
        removed = " ".join(f"{k}:{','.join(v)}" for k, v in w["removed"].items())
        return f"elementary from {w['source'] or '(empty)'} removing {removed}"
    return f"tie from {w['source']} A={','.join(w['A'])} B={','.join(w['B']) or '-'}"


def cmd_check(args):
    t = _type(args.symbol)
    g = _graph(args.graph)
    m = check_membership(t, g, workers=args.workers, cache=_cache(args))
    doc = {"symbol": t.symbol, "graph": format_formal_sum(g), "verdict": m.verdict}
    lines = [m.verdict]
    if m.witness is not None:
        doc["witness"] = m.witness.to_json()
        lines.append(_witness_text(doc["witness"]))
    return doc, lines, 1 if m.verdict == "not-in-pc" else 0


def _split_labels(values) -> tuple[str, ...]:
    out = []
    for v in values or ():
        out.extend(s for s in v.split(",") if s)
    return sort_labels(out)


def cmd_transform(args):
    g = _graph(args.graph)
    if args.all:
        table = enumerate_elementary_witnesses(g) if args.kind == "elementary" else enumerate_tie_witnesses(g)
        ws = sorted(table.values(), key=lambda w: w.result.listing_key())
        if not args.include_empty:
            ws = [w for w in ws if w.result]
        doc = {"source": format_formal_sum(g), "kind": args.kind, "results": [w.to_json() for w in ws]}
        lines = [format_formal_sum(w.result) for w in ws]
        return doc, lines, 0
    try:
        if args.kind == "elementary":
            if args.A or args.B:
                raise UsageError("--A/--B apply to tie transformations")
            removed = _split_labels(args.remove)
            parts = tuple(tuple(s for s in removed if s.startswith(f"c{i + 1}:")) for i in range(len(g)))
            if sum(map(len, parts)) != len(removed):
                raise UsageError(f"labels outside the extended graph of {format_formal_sum(g)}")
            choice = ElementaryChoice(parts)
            result = elementary_transform(g, choice)
        else:
            if args.remove:
                raise UsageError("--remove applies to elementary transformations")
            choice = TieChoice(_split_labels(args.A), _split_labels(args.B))
            result = tie_transform(g, choice)
    except TransformError as e:
        raise UsageError(f"invalid choice: {e}") from None
    if result is None:
        doc = {"source": format_formal_sum(g), "kind": args.kind, "result": None}
        return doc, ["reject (not a Dynkin graph)"], 1
    doc = {"source": format_formal_sum(g), "kind": args.kind, "result": format_formal_sum(result)}
    return doc, [format_formal_sum(result)], 0


def cmd_gram(args):
    if args.gabrielov:
        m = gabrielov_graph(_type(args.gabrielov))
    elif args.graph is not None:
        m = graph_of(_graph(args.graph))
    else:
        raise UsageError("give a graph or --gabrielov SYMBOL")
    gram = gram_of(m)
    sig = signature(gram)
    doc = {"vertices": list(m.vertices), "matrix": gram.tolist(), "signature": sig.as_dict()}
    lines = [" ".join(f"{x:2d}" for x in row) for row in gram.tolist()]
    lines.append(f"signature: ({sig.plus}, {sig.minus}, {sig.zero})")
    return doc, lines, 0


def cmd_verify(args):
    wanted = set(args.only or [n for n, *_ in acceptance.CRITERIA])
    results = [acceptance.run_criterion(n) for n, *_ in acceptance.CRITERIA if n in wanted]
    lines = []
    for r in results:
        lines.append(r.line())
        lines.extend(f"    {f}" for f in r.failures)
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return {"passed": ok, "criteria": [r.to_json() for r in results]}, lines, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--no-cache", action="store_true", help="recompute instead of reading the cache")
    common.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")

    p = argparse.ArgumentParser(prog="triangle-pc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", parents=[common], help="the fourteen triangle singularities").set_defaults(fn=cmd_list)

    s = sub.add_parser("show", parents=[common], help="one triangle singularity")
    s.add_argument("symbol")
    s.set_defaults(fn=cmd_show)

    s = sub.add_parser("subgraphs", parents=[common], help="Dynkin subgraphs of the Gabrielov graph")
    s.add_argument("symbol")
    s.add_argument("--include-empty", action="store_true")
    s.set_defaults(fn=cmd_subgraphs)

    s = sub.add_parser("pc", parents=[common], help="list PC(T)")
    s.add_argument("symbol")
    s.add_argument("--bar-only", action="store_true", help="omit the B-2 exceptions")
    s.add_argument("--include-empty", action="store_true")
    s.add_argument("--witness", action="store_true")
    s.set_defaults(fn=cmd_pc)

    s = sub.add_parser("check", parents=[common], help="membership of a graph in PC(T)")
    s.add_argument("symbol")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("transform", parents=[common], help="apply or enumerate one transformation")
    s.add_argument("kind", choices=["elementary", "tie"])
    s.add_argument("graph")
    s.add_argument("--all", action="store_true", help="enumerate every result")
    s.add_argument("--include-empty", action="store_true")
    s.add_argument("--remove", action="append", metavar="LABELS", help="elementary: vertices to remove")
    s.add_argument("--A", action="append", metavar="LABELS", help="tie: the set A")
    s.add_argument("--B", action="append", metavar="LABELS", help="tie: the set B")
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix and signature")
    s.add_argument("graph", nargs="?")
    s.add_argument("--gabrielov", metavar="SYMBOL")
    s.set_defaults(fn=cmd_gram)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", type=int, action="append", metavar="N")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, lines, code = args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = json.dumps(doc, indent=2) if args.json else "\n".join(lines)
    sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
