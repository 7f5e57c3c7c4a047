"""Exact Gram matrices, signatures and extended (affine) diagrams.

Sign convention: every vertex squares to -2, so ADE root lattices are
negative definite and a single edge contributes +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .graphs import ComponentType, MarkedGraph, tree_edges, tree_graph


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if r[j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class Signature:
    plus: int
    minus: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.plus, self.minus, self.zero)

    def as_dict(self) -> dict[str, int]:
        return {"plus": self.plus, "minus": self.minus, "zero": self.zero}


def gram_of(m: MarkedGraph) -> GramMatrix:
    vs = m.vertices
    return GramMatrix(tuple(tuple(m.pair(v, w) for w in vs) for v in vs))


def signature(g: GramMatrix | Sequence[Sequence]) -> Signature:
    """Inertia of a symmetric matrix by exact congruence (Sylvester)."""
    rows = g.entries if isinstance(g, GramMatrix) else g
    a = [[Fraction(x) for x in r] for r in rows]
    plus = minus = 0
    n = len(a)
    while a:
        size = len(a)
        p = next((i for i in range(size) if a[i][i] != 0), None)
        if p is not None:
            d = a[p][p]
            if d > 0:
                plus += 1
            else:
                minus += 1
            rest = [i for i in range(size) if i != p]
            a = [[a[i][j] - a[i][p] * a[p][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if a[i][j] != 0), None)
        if pair is None:
            break  # the remaining block is zero
        # Zero diagonal: split off the hyperbolic block [[0, b], [b, 0]].
        i, j = pair
        b = a[i][j]
        plus += 1
        minus += 1
        rest = [k for k in range(size) if k not in (i, j)]
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        a = [[a[k][l] - (a[k][i] * a[j][l] + a[k][j] * a[i][l]) / b for l in rest] for k in rest]
    return Signature(plus, minus, n - plus - minus)


def direct_sum(a: GramMatrix, b: GramMatrix) -> GramMatrix:
    n, m = a.dim, b.dim
    top = tuple(tuple(r) + (0,) * m for r in a.entries)
    bottom = tuple((0,) * n + tuple(r) for r in b.entries)
    return GramMatrix(top + bottom)


def hyperbolic_plane() -> GramMatrix:
    return GramMatrix(((0, 1), (1, 0)))


def cartan_gram(c: ComponentType) -> list[list[int]]:
    n = c.index
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in tree_edges(c):
        g[i][j] = g[j][i] = 1
    return g


def positive_roots(c: ComponentType) -> list[tuple[int, ...]]:
    """All positive roots of ``c`` in the simple-root basis.

    Closure of the simple roots under adding a simple root whenever the
    sum still has norm -2.
    """
    return list(_positive_roots(c))


@lru_cache(maxsize=None)
def _positive_roots(c: ComponentType) -> tuple[tuple[int, ...], ...]:
    n = c.index
    g = cartan_gram(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                # (beta + a_i)^2 = beta^2 + 2(beta, a_i) - 2 = -2  iff  (beta, a_i) = 1
                if sum(beta[j] * g[j][i] for j in range(n)) == 1:
                    gamma = tuple(x + (j == i) for j, x in enumerate(beta))
                    if gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


@lru_cache(maxsize=None)
def highest_root_coefficients(c: ComponentType) -> tuple[int, ...]:
    roots = _positive_roots(c)
    top = tuple(max(r[j] for r in roots) for j in range(c.index))
    if top not in roots:
        raise AssertionError(f"coordinatewise maximum of {c} roots is not a root")
    return top


COXETER_NUMBER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


def coxeter_number(c: ComponentType) -> int:
    return COXETER_NUMBER[c.kind](c.index)


@lru_cache(maxsize=None)
def extended_edges(c: ComponentType) -> tuple[tuple[int, int, int], ...]:
    """Weighted edges of the affine diagram; the added vertex is index ``rank``.

    The added vertex represents minus the highest root, so its pairing with
    a simple root is ``-(highest, a_v)``.
    """
    n = c.index
    g = cartan_gram(c)
    h = highest_root_coefficients(c)
    edges = [(i, j, 1) for i, j in tree_edges(c)]
    for v in range(n):
        p = -sum(h[j] * g[j][v] for j in range(n))
        if p:
            edges.append((v, n, p))
    return tuple(edges)


def extended_coefficients(c: ComponentType) -> tuple[int, ...]:
    return highest_root_coefficients(c) + (1,)


def extend_component(c: ComponentType, prefix: str = "v") -> MarkedGraph:
    """Affine diagram of ``c``; the added vertex is ``<prefix><rank+1>``."""
    labels = [f"{prefix}{j + 1}" for j in range(c.index + 1)]
    coeff = dict(zip(labels, extended_coefficients(c)))
    return MarkedGraph.from_edges(labels, [(labels[i], labels[j], p) for i, j, p in extended_edges(c)], coeff)


def tree_gram(c: ComponentType) -> GramMatrix:
    return gram_of(tree_graph(c))
