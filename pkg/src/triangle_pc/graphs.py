"""Dynkin graphs as formal sums, marked graphs, and ADE recognition.

A Dynkin graph is stored as a canonical multiset of connected types
(``E`` before ``D`` before ``A``, larger index first), which is also the
order used when printing, e.g. ``E6+2A2`` or ``2D4+A2``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

KIND_ORDER = {"E": 0, "D": 1, "A": 2}


class FormalSumError(ValueError):
    """Raised for text that is not a formal sum of A/D/E types."""


class _ComponentBase(NamedTuple):
    kind: str
    index: int


class ComponentType(_ComponentBase):
    """A connected simply-laced Dynkin type such as ``A4`` or ``E8``."""

    __slots__ = ()

    def __new__(cls, kind: str, index: int) -> "ComponentType":
        if kind not in KIND_ORDER:
            raise FormalSumError(f"unknown component kind {kind!r}")
        index = int(index)
        if kind == "A" and index < 1:
            raise FormalSumError(f"A{index}: index must be >= 1")
        if kind == "D" and index < 4:
            raise FormalSumError(f"D{index}: index must be >= 4")
        if kind == "E" and index not in (6, 7, 8):
            raise FormalSumError(f"E{index}: index must be 6, 7 or 8")
        return super().__new__(cls, kind, index)

    @property
    def rank(self) -> int:
        return self.index

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    def __repr__(self) -> str:
        return f"ComponentType({self.kind!r}, {self.index})"


def sort_key(c: ComponentType) -> tuple[int, int]:
    return (KIND_ORDER[c.kind], -c.index)


def canonical(components: Iterable[ComponentType]) -> tuple[ComponentType, ...]:
    return tuple(sorted(components, key=sort_key))


@dataclass(frozen=True)
class DynkinGraph:
    """A finite multiset of connected ADE types, kept in canonical order."""

    components: tuple[ComponentType, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", canonical(self.components))

    @property
    def rank(self) -> int:
        return sum(c.index for c in self.components)

    def __add__(self, other: "DynkinGraph") -> "DynkinGraph":
        return DynkinGraph(self.components + other.components)

    def __len__(self) -> int:
        return len(self.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __str__(self) -> str:
        return format_formal_sum(self)

    def __repr__(self) -> str:
        return f"DynkinGraph({format_formal_sum(self)!r})"

    def listing_key(self) -> tuple[int, str]:
        """Listing order: rank descending, then canonical string."""
        return (-self.rank, format_formal_sum(self))


EMPTY = DynkinGraph()


def rank(g: DynkinGraph) -> int:
    return g.rank


_TERM = re.compile(r"([0-9]*)([A-Za-z])([0-9]*)")


def parse_formal_sum(text: str) -> DynkinGraph:
    """Parse ``"2A4+A1"``-style text. Whitespace is ignored; ``""`` is empty."""
    s = "".join(text.split())
    if not s:
        return EMPTY
    parts = []
    for term in s.split("+"):
        m = _TERM.fullmatch(term)
        if m is None:
            raise FormalSumError(f"bad term {term!r} in {text!r}")
        mult, kind, idx = m.groups()
        if kind not in KIND_ORDER:
            raise FormalSumError(f"unknown component kind {kind!r} in {text!r}")
        if not idx or idx.startswith("0"):
            raise FormalSumError(f"bad index in term {term!r}")
        if mult.startswith("0"):
            raise FormalSumError(f"multiplicity must be positive in {term!r}")
        count = int(mult) if mult else 1
        parts.extend([ComponentType(kind, int(idx))] * count)
    return DynkinGraph(tuple(parts))


def format_formal_sum(g: DynkinGraph) -> str:
    counts = Counter(g.components)
    terms = []
    for c in sorted(counts, key=sort_key):
        n = counts[c]
        terms.append(f"{n}{c}" if n > 1 else str(c))
    return "+".join(terms)


@dataclass(frozen=True)
class MarkedGraph:
    """Vertices with a symmetric integer pairing and optional coefficients.

    ``pairing`` holds only the non-zero off-diagonal values, keyed by
    two-element frozensets. Self-pairing is implicitly -2 everywhere.
    """

    vertices: tuple[str, ...]
    pairing: Mapping[frozenset, int] = field(default_factory=dict)
    coeff: Mapping[str, int] | None = None

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        clean = {}
        for key, value in self.pairing.items():
            key = frozenset(key)
            if len(key) != 2 or not key <= vs:
                raise ValueError(f"bad pairing key {sorted(key)}")
            if value not in (0, 1, 2):
                raise ValueError(f"pairing value {value} not in {{0, 1, 2}}")
            if value:
                clean[key] = value
        object.__setattr__(self, "pairing", clean)

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple], coeff=None) -> "MarkedGraph":
        """Build from (v, w) or (v, w, value) tuples; value defaults to 1."""
        pairing = {}
        for e in edges:
            v, w, *rest = e
            pairing[frozenset((v, w))] = rest[0] if rest else 1
        return cls(tuple(vertices), pairing, coeff)

    def pair(self, v: str, w: str) -> int:
        if v == w:
            return -2
        return self.pairing.get(frozenset((v, w)), 0)

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if w != v and self.pair(v, w)]

    def induced(self, keep: Iterable[str]) -> "MarkedGraph":
        keep = set(keep)
        vertices = tuple(v for v in self.vertices if v in keep)
        pairing = {k: x for k, x in self.pairing.items() if k <= keep}
        coeff = None if self.coeff is None else {v: self.coeff[v] for v in vertices}
        return MarkedGraph(vertices, pairing, coeff)

    def remove(self, drop: Iterable[str]) -> "MarkedGraph":
        drop = set(drop)
        return self.induced(v for v in self.vertices if v not in drop)

    def masks(self) -> tuple[list[int], list[int]]:
        """Bitmask adjacency for simple edges and for pairing-2 edges."""
        index = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        dbl = [0] * len(self.vertices)
        for key, value in self.pairing.items():
            v, w = (index[x] for x in key)
            target = adj if value == 1 else dbl
            target[v] |= 1 << w
            target[w] |= 1 << v
        return adj, dbl


# ---------------------------------------------------------------------------
# ADE recognition on bitmask graphs. This is the hot path of every
# enumeration, so it works on plain ints and returns raw component tuples.


def _arm_length(adj: list[int], comp: int, center: int, start: int) -> int:
    length, prev, cur = 1, center, start
    while True:
        nxt = adj[cur] & comp & ~(1 << prev)
        if not nxt:
            return length
        prev, cur = cur, nxt.bit_length() - 1
        length += 1


def _classify_tree(adj: list[int], comp: int) -> ComponentType | None:
    n = comp.bit_count()
    degree_sum = 0
    branch = -1
    m = comp
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        d = (adj[v] & comp).bit_count()
        if d > 3:
            return None
        if d == 3:
            if branch >= 0:
                return None
            branch = v
        degree_sum += d
    if degree_sum != 2 * (n - 1):
        return None  # connected with a cycle
    if branch < 0:
        return ComponentType("A", n)
    arms = []
    nb = adj[branch] & comp
    while nb:
        w = (nb & -nb).bit_length() - 1
        nb &= nb - 1
        arms.append(_arm_length(adj, comp, branch, w))
    a, b, c = sorted(arms)
    if a == 1 and b == 1:
        return ComponentType("D", n)
    if a == 1 and b == 2 and c <= 4:
        return ComponentType("E", n)
    return None


def classify_mask(adj: list[int], mask: int, dbl: list[int] | None = None) -> tuple[ComponentType, ...] | None:
    """Classify the subgraph induced on ``mask``; None if it is not Dynkin."""
    if dbl is not None:
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if dbl[v] & mask:
                return None
    out = []
    remaining = mask
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        remaining &= ~comp
        c = _classify_tree(adj, comp)
        if c is None:
            return None
        out.append(c)
    return tuple(out)


def classify_graph(m: MarkedGraph) -> DynkinGraph | None:
    """Return the formal sum of ``m`` if every component is ADE, else None.

    Coefficients are ignored. A pairing-2 edge always gives None.
    """
    adj, dbl = m.masks()
    comps = classify_mask(adj, (1 << len(m.vertices)) - 1, dbl)
    return None if comps is None else DynkinGraph(comps)


# ---------------------------------------------------------------------------
# Canonical drawings of the connected types.


def tree_edges(c: ComponentType) -> list[tuple[int, int]]:
    """Edges of the standard drawing of ``c`` on vertices ``0..rank-1``.

    A_n is the path; D_n is the path ``0..n-2`` with vertex ``n-1`` also
    attached to ``n-3``; E_n is the path ``0..n-2`` with vertex ``n-1``
    attached to vertex 2.
    """
    n = c.index
    path = [(i, i + 1) for i in range(n - 2)]
    if c.kind == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if c.kind == "D":
        return path + [(n - 3, n - 1)]
    return path + [(2, n - 1)]


def tree_graph(c: ComponentType, prefix: str = "v") -> MarkedGraph:
    labels = [f"{prefix}{j + 1}" for j in range(c.index)]
    return MarkedGraph.from_edges(labels, [(labels[i], labels[j]) for i, j in tree_edges(c)])


def graph_of(g: DynkinGraph) -> MarkedGraph:
    """Disjoint union of the standard drawings, labelled ``c<i>:v<j>``."""
    vertices, edges = [], []
    for i, c in enumerate(g.components, start=1):
        t = tree_graph(c, prefix=f"c{i}:v")
        vertices.extend(t.vertices)
        edges.extend((*sorted(k), x) for k, x in t.pairing.items())
    return MarkedGraph.from_edges(vertices, edges)
