"""The fourteen triangle singularities, their Gabrielov graphs, and PC sets."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .graphs import EMPTY, DynkinGraph, MarkedGraph, classify_mask, format_formal_sum, parse_formal_sum
from .transforms import GcdRule, Witness, reachable_one_step


@dataclass(frozen=True)
class TriangleType:
    symbol: str
    triplet: tuple[int, int, int]
    milnor: int
    dual: str
    exceptions: tuple[DynkinGraph, ...] = ()

    @property
    def gabrielov_rank(self) -> int:
        return sum(self.triplet) - 2


_TRIPLETS = {
    "E12": (2, 3, 7), "Z11": (2, 4, 5), "Q10": (3, 3, 4), "W12": (2, 5, 5), "S11": (3, 4, 4), "U12": (4, 4, 4),
    "E13": (2, 3, 8), "Z12": (2, 4, 6), "Q11": (3, 3, 5), "W13": (2, 5, 6), "S12": (3, 4, 5),
    "E14": (2, 3, 9), "Z13": (2, 4, 7), "Q12": (3, 3, 6),
}
SELF_DUAL = ("E12", "Z12", "Q12", "W12", "S12", "U12")
DUAL_PAIRS = (("E13", "Z11"), ("E14", "Q10"), ("Z13", "Q11"), ("W13", "S11"))
_EXCEPTIONS = {
    "Z13": ("A7+A4",),
    "S11": ("2A4+A1",),
    "U12": ("2D4+A2", "A6+A4", "A5+A4+A1", "2A4+A1"),
}


def _dual_map() -> dict[str, str]:
    out = {s: s for s in SELF_DUAL}
    for a, b in DUAL_PAIRS:
        out[a], out[b] = b, a
    return out


@lru_cache(maxsize=None)
def _table() -> tuple[TriangleType, ...]:
    duals = _dual_map()
    return tuple(
        TriangleType(
            symbol=s,
            triplet=p,
            milnor=int(s[1:]),
            dual=duals[s],
            exceptions=tuple(parse_formal_sum(x) for x in _EXCEPTIONS.get(s, ())),
        )
        for s, p in _TRIPLETS.items()
    )


def triangle_table() -> list[TriangleType]:
    return list(_table())


def lookup(symbol: str) -> TriangleType:
    for t in _table():
        if t.symbol == symbol.upper():
            return t
    raise KeyError(f"unknown triangle singularity {symbol!r}")


def _as_type(t: TriangleType | str) -> TriangleType:
    return lookup(t) if isinstance(t, str) else t


def gabrielov_graph(t: TriangleType | str) -> MarkedGraph:
    """The T-shaped star tree of the triplet.

    The center is ``center``; arm ``k`` continues with ``arm<k>:v2`` ..
    ``arm<k>:v<p_k>`` counted outward, the center being each arm's ``v1``.
    """
    t = _as_type(t)
    vertices, edges = ["center"], []
    for k, p in enumerate(t.triplet, start=1):
        prev = "center"
        for j in range(2, p + 1):
            v = f"arm{k}:v{j}"
            vertices.append(v)
            edges.append((prev, v))
            prev = v
    return MarkedGraph.from_edges(vertices, edges)


@lru_cache(maxsize=None)
def _subgraph_table(symbol: str) -> dict[DynkinGraph, int]:
    adj, _ = gabrielov_graph(symbol).masks()
    out: dict[DynkinGraph, int] = {}
    for mask in range(1 << len(adj)):
        comps = classify_mask(adj, mask)
        if comps is not None:
            out.setdefault(DynkinGraph(comps), mask)
    return out


def enumerate_dynkin_subgraphs(t: TriangleType | str) -> set[DynkinGraph]:
    """Dynkin types of induced subgraphs of the Gabrielov graph, empty included."""
    return set(_subgraph_table(_as_type(t).symbol))


def subgraph_vertices(t: TriangleType | str, g: DynkinGraph) -> tuple[str, ...] | None:
    """A vertex set of the Gabrielov graph inducing ``g``, or None."""
    t = _as_type(t)
    mask = _subgraph_table(t.symbol).get(g)
    if mask is None:
        return None
    vs = gabrielov_graph(t).vertices
    return tuple(v for i, v in enumerate(vs) if mask >> i & 1)


@lru_cache(maxsize=4096)
def _one_step(g: DynkinGraph, gcd_rule: GcdRule) -> dict[DynkinGraph, Witness]:
    return reachable_one_step(g, gcd_rule)


def _one_step_items(args: tuple[DynkinGraph, GcdRule]) -> list[tuple[DynkinGraph, Witness]]:
    return list(_one_step(*args).items())


def _merge(into: dict[DynkinGraph, Witness], items) -> None:
    for result, w in items:
        old = into.get(result)
        if old is None or w.sort_key() < old.sort_key():
            into[result] = w


def compute_pc_bar(t: TriangleType | str, *, workers: int = 1, gcd_rule: GcdRule = "all") -> dict[DynkinGraph, Witness]:
    """One-step transforms of every Dynkin subgraph, with one witness each.

    The empty graph is included here; callers filter it. Witnesses are the
    least by (source string, elementary before tie); the result does not
    depend on ``workers``.
    """
    t = _as_type(t)
    seeds = sorted(enumerate_dynkin_subgraphs(t), key=format_formal_sum)
    out: dict[DynkinGraph, Witness] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for items in pool.map(_one_step_items, [(g, gcd_rule) for g in seeds], chunksize=4):
                _merge(out, items)
    else:
        for g in seeds:
            _merge(out, _one_step(g, gcd_rule).items())
    return dict(sorted(out.items(), key=lambda kv: kv[0].listing_key()))


def pc_bar(
    t: TriangleType | str,
    *,
    include_empty: bool = False,
    workers: int = 1,
    gcd_rule: GcdRule = "all",
    cache=None,
) -> dict[DynkinGraph, Witness]:
    """PC-bar(T) as an ordered mapping from graph to witness.

    ``cache`` is an optional :class:`triangle_pc.cache.PcCache`; it is only
    consulted for the default gcd rule.
    """
    t = _as_type(t)
    table = None
    if cache is not None and gcd_rule == "all":
        table = cache.get(t.symbol)
    if table is None:
        table = compute_pc_bar(t, workers=workers, gcd_rule=gcd_rule)
        if cache is not None and gcd_rule == "all":
            cache.put(t.symbol, table)
    if include_empty:
        return dict(table)
    return {g: w for g, w in table.items() if g != EMPTY}


@dataclass(frozen=True)
class PcEntry:
    graph: DynkinGraph
    tag: Literal["pc-bar", "exception"]
    witness: Witness | None = None


def pc(t: TriangleType | str, **kwargs) -> list[PcEntry]:
    """PC(T): PC-bar(T) plus the tabulated exceptions, in listing order."""
    t = _as_type(t)
    entries = [PcEntry(g, "pc-bar", w) for g, w in pc_bar(t, **kwargs).items()]
    known = {e.graph for e in entries}
    entries += [PcEntry(g, "exception") for g in t.exceptions if g not in known]
    return sorted(entries, key=lambda e: e.graph.listing_key())


@dataclass(frozen=True)
class Membership:
    verdict: Literal["in-pc-bar", "exception", "not-in-pc"]
    witness: Witness | None = None


def check_membership(t: TriangleType | str, g: DynkinGraph, **kwargs) -> Membership:
    t = _as_type(t)
    if g.rank > t.milnor - 2:
        return Membership("exception") if g in t.exceptions else Membership("not-in-pc")
    if not g:
        # the empty fiber configuration is not part of PC(T)
        return Membership("not-in-pc")
    w = pc_bar(t, **kwargs).get(g)
    if w is not None:
        return Membership("in-pc-bar", w)
    if g in t.exceptions:
        return Membership("exception")
    return Membership("not-in-pc")


def verify_duality() -> list[tuple[str, bool]]:
    """Named pass/fail checks of the strange-duality table."""
    table = {t.symbol: t for t in _table()}
    dual = {s: t.dual for s, t in table.items()}
    report = [
        ("dual map stays inside the fourteen symbols", all(d in table for d in dual.values())),
        ("dual of the dual is the identity", all(dual.get(dual[s]) == s for s in dual)),
        ("fixed points are E12 Z12 Q12 W12 S12 U12", {s for s in dual if dual[s] == s} == set(SELF_DUAL)),
    ]
    for a, b in DUAL_PAIRS:
        report.append((f"{a} and {b} are dual", dual[a] == b and dual[b] == a))
    return report


def clear_caches() -> None:
    """Drop every in-process memo so the next computation starts cold."""
    from . import transforms

    _one_step.cache_clear()
    _subgraph_table.cache_clear()
    for fn in (
        transforms.elementary_pieces,
        transforms.untouched_pieces,
        transforms.touched_pieces,
        transforms._touched_finals,
        transforms._fused,
    ):
        fn.cache_clear()
