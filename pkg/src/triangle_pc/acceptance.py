"""Exit criteria of the artifact, runnable from the CLI (``verify``) and pytest.

Each check returns a :class:`CriterionResult`; nothing here raises on a
failed criterion.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import networkx as nx

from .cache import table_to_json
from .graphs import ComponentType, MarkedGraph, classify_graph, classify_mask, parse_formal_sum
from .lattice import direct_sum, extend_component, gram_of, hyperbolic_plane, signature
from .transforms import _bits, _layout, enumerate_elementary_witnesses, enumerate_tie_witnesses
from .triangle import (
    clear_caches,
    compute_pc_bar,
    enumerate_dynkin_subgraphs,
    gabrielov_graph,
    pc,
    pc_bar,
    triangle_table,
    verify_duality,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.number:2d}. {self.name} ({self.detail}; {self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "failures": self.failures,
        }


def all_component_types(max_rank: int) -> list[ComponentType]:
    out = [ComponentType("A", n) for n in range(1, max_rank + 1)]
    out += [ComponentType("D", n) for n in range(4, max_rank + 1)]
    out += [ComponentType("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


def signature_law() -> tuple[list[str], str]:
    bad = []
    for t in triangle_table():
        sig = signature(gram_of(gabrielov_graph(t))).as_tuple()
        if sig != (1, t.milnor - 3, 0):
            bad.append(f"{t.symbol}: {sig}")
    return bad, "14 Gabrielov lattices, expect (1, mu-3, 0)"


def w13_example() -> tuple[list[str], str]:
    bad = []
    seed = parse_formal_sum("E8+A2")
    if seed not in enumerate_dynkin_subgraphs("W13"):
        bad.append("E8+A2 is not a Dynkin subgraph of W13")
    table = pc_bar("W13")
    for text, kind, witnesses in (
        ("A6+D5", "tie", enumerate_tie_witnesses(seed)),
        ("E6+2A2", "elementary", enumerate_elementary_witnesses(seed)),
    ):
        g = parse_formal_sum(text)
        w = witnesses.get(g)
        if w is None or w.kind != kind:
            bad.append(f"no {kind} witness E8+A2 -> {text}")
        elif w.replay() != g:
            bad.append(f"{kind} witness for {text} does not replay")
        if g not in table:
            bad.append(f"{text} missing from pc_bar(W13)")
    return bad, "tie E8+A2 -> A6+D5, elementary E8+A2 -> E6+2A2"


def exception_non_reachability() -> tuple[list[str], str]:
    clear_caches()
    start = time.perf_counter()
    tables = {t.symbol: pc_bar(t) for t in triangle_table()}
    elapsed = time.perf_counter() - start
    bad, checked = [], 0
    for t in triangle_table():
        for g in t.exceptions:
            checked += 1
            if g in tables[t.symbol]:
                bad.append(f"{g} reachable for {t.symbol}")
    if elapsed >= 60:
        bad.append(f"full enumeration took {elapsed:.1f}s (target < 60s)")
    return bad, f"{checked} exception graphs absent; all 14 tables in {elapsed:.1f}s"


def rank_bound() -> tuple[list[str], str]:
    bad = []
    for t in triangle_table():
        for e in pc(t):
            if e.graph.rank > t.milnor - 2:
                bad.append(f"{t.symbol}: {e.graph} has rank {e.graph.rank}")
    return bad, "every member of PC(T) has rank <= mu-2"


def duality() -> tuple[list[str], str]:
    report = verify_duality()
    return [name for name, ok in report if not ok], f"{len(report)} table assertions"


def affine_recovery(max_rank: int = 12) -> tuple[list[str], str]:
    bad, checked = [], 0
    for c in all_component_types(max_rank):
        ext = extend_component(c)
        for v in ext.vertices:
            if ext.coeff[v] != 1:
                continue
            checked += 1
            got = classify_graph(ext.remove([v]))
            if got is None or got.components != (c,):
                bad.append(f"{c} minus {v} gives {got}")
    return bad, f"{checked} coefficient-1 deletions over {len(all_component_types(max_rank))} types"


def elementary_totality(max_rank: int = 10) -> tuple[list[str], str]:
    """Brute force over every valid elementary choice of every small seed."""
    seeds = set()
    for t in triangle_table():
        seeds |= enumerate_dynkin_subgraphs(t)
    seeds = sorted((g for g in seeds if g.rank <= max_rank), key=str)
    bad, checked = [], 0
    for g in seeds:
        lay = _layout(g)
        full = (1 << lay.size) - 1
        per_comp = []
        for i, off in enumerate(lay.offsets):
            n = lay.comps[i].index + 1
            per_comp.append([m << off for m in range(1, 1 << n)])
        for parts in product(*per_comp):
            checked += 1
            removed = sum(parts)
            if classify_mask(lay.adj, full & ~removed, lay.dbl) is None:
                bad.append(f"{g}: removing {_bits(removed)} is not Dynkin")
    return bad, f"{checked} choices over {len(seeds)} seeds of rank <= {max_rank}"


def negative_definite(m: MarkedGraph) -> bool:
    return signature(gram_of(m)).as_tuple() == (0, len(m.vertices), 0)


def trees_up_to(n: int):
    """Every unlabelled tree with 1..n vertices, once each."""
    if n >= 1:
        yield nx.empty_graph(1)
    for k in range(2, n + 1):
        yield from nx.nonisomorphic_trees(k)


def tree_marked_graph(tree: nx.Graph) -> MarkedGraph:
    return MarkedGraph.from_edges([str(v) for v in tree.nodes], [(str(a), str(b)) for a, b in tree.edges])


def classification_oracle(max_vertices: int = 9) -> tuple[list[str], str]:
    bad, checked, dynkin = [], 0, 0
    for tree in trees_up_to(max_vertices):
        m = tree_marked_graph(tree)
        checked += 1
        is_dynkin = classify_graph(m) is not None
        dynkin += is_dynkin
        if is_dynkin != negative_definite(m):
            bad.append(f"tree {sorted(tree.edges)}: classify={is_dynkin}")
    return bad, f"{checked} trees, {dynkin} Dynkin"


def milnor_gram_identity() -> tuple[list[str], str]:
    bad = []
    for t in triangle_table():
        sig = signature(direct_sum(gram_of(gabrielov_graph(t)), hyperbolic_plane())).as_tuple()
        if sig != (2, t.milnor - 2, 0):
            bad.append(f"{t.symbol}: {sig}")
    return bad, "Gabrielov lattice + H has signature (2, mu-2, 0)"


def serialize_tables(workers: int = 1) -> bytes:
    doc = {t.symbol: table_to_json(compute_pc_bar(t, workers=workers)) for t in triangle_table()}
    return json.dumps(doc, sort_keys=True).encode()


def determinism(workers: int = 2) -> tuple[list[str], str]:
    clear_caches()
    first = serialize_tables()
    clear_caches()
    second = serialize_tables()
    clear_caches()
    parallel = serialize_tables(workers=workers)
    bad = []
    if first != second:
        bad.append("two single-worker runs differ")
    if first != parallel:
        bad.append(f"1-worker and {workers}-worker runs differ")
    return bad, f"{len(first)} bytes, 1 vs 1 vs {workers} workers"


CRITERIA: list[tuple[int, str, Callable[[], tuple[list[str], str]], float | None]] = [
    (1, "signature law", signature_law, 1.0),
    (2, "W13 worked example", w13_example, 10.0),
    (3, "exception non-reachability", exception_non_reachability, None),
    (4, "rank bound", rank_bound, None),
    (5, "strange duality", duality, None),
    (6, "affine recovery", affine_recovery, None),
    (7, "elementary totality", elementary_totality, None),
    (8, "classification vs definiteness", classification_oracle, None),
    (9, "Milnor lattice Gram identity", milnor_gram_identity, None),
    (10, "determinism", determinism, None),
]


def run_criterion(number: int) -> CriterionResult:
    for n, name, fn, limit in CRITERIA:
        if n == number:
            start = time.perf_counter()
            failures, detail = fn()
            seconds = time.perf_counter() - start
            if limit is not None and seconds >= limit:
                failures.append(f"took {seconds:.2f}s, limit {limit}s")
            return CriterionResult(n, name, not failures, detail, seconds, failures)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]
