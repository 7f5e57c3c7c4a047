"""Elementary and tie transformations of Dynkin graphs.

Vertices of the extended graph of ``g`` are labelled ``c<i>:v<j>``: ``i`` is
the 1-based position of the component in canonical order, ``j`` the 1-based
vertex of its standard drawing, and ``j = rank + 1`` is the added affine
vertex.

Single transformations (``elementary_transform``, ``tie_transform``) build
the marked graph literally and classify it. The enumerators never do that:
they split the choice space per component and combine per-type result sets,
which is what makes the full triangle tables cheap to compute.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Literal, Union

from .graphs import (
    ComponentType,
    DynkinGraph,
    MarkedGraph,
    canonical,
    classify_graph,
    classify_mask,
    format_formal_sum,
    parse_formal_sum,
)
from .lattice import extend_component, extended_coefficients, extended_edges

GcdRule = Literal["all", "any"]
THETA = "theta"


class TransformError(ValueError):
    """Base class for invalid transformation choices."""


class EmptyRemovalError(TransformError):
    """An elementary choice removes nothing from some component."""


class OverlapError(TransformError):
    """Tie choice with A and B intersecting."""


class TooManyTiesError(TransformError):
    """Tie choice with more than three vertices in B."""


class UncoveredComponentError(TransformError):
    """Tie choice whose A misses some component."""


class GcdConditionError(TransformError):
    """Tie choice failing the coefficient gcd condition."""


class UnknownVertexError(TransformError):
    """A label that is not a vertex of the extended graph."""


def label(i: int, j: int) -> str:
    return f"c{i + 1}:v{j + 1}"


def _label_key(s: str) -> tuple[int, int]:
    c, v = s.split(":")
    return (int(c[1:]), int(v[1:]))


def sort_labels(labels: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(labels, key=_label_key))


@dataclass(frozen=True)
class ElementaryChoice:
    """Vertices removed from each extended component, in component order."""

    removed: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "removed", tuple(sort_labels(r) for r in self.removed))

    def to_json(self) -> dict:
        return {str(i + 1): list(r) for i, r in enumerate(self.removed)}


@dataclass(frozen=True)
class TieChoice:
    A: tuple[str, ...]
    B: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", sort_labels(self.A))
        object.__setattr__(self, "B", sort_labels(self.B))


Choice = Union[ElementaryChoice, TieChoice]


@dataclass(frozen=True)
class Witness:
    source: DynkinGraph
    kind: Literal["elementary", "tie"]
    choice: Choice
    result: DynkinGraph

    def replay(self) -> DynkinGraph | None:
        if self.kind == "elementary":
            return elementary_transform(self.source, self.choice)
        return tie_transform(self.source, self.choice)

    def sort_key(self) -> tuple[str, int]:
        return (format_formal_sum(self.source), 0 if self.kind == "elementary" else 1)

    def to_json(self) -> dict:
        doc = {"source": format_formal_sum(self.source), "kind": self.kind}
        if self.kind == "elementary":
            doc["removed"] = self.choice.to_json()
        else:
            doc["A"] = list(self.choice.A)
            doc["B"] = list(self.choice.B)
        doc["result"] = format_formal_sum(self.result)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Witness":
        source = parse_formal_sum(doc["source"])
        if doc["kind"] == "elementary":
            removed = doc["removed"]
            choice = ElementaryChoice(tuple(tuple(removed[str(i + 1)]) for i in range(len(source))))
        else:
            choice = TieChoice(tuple(doc["A"]), tuple(doc["B"]))
        return cls(source, doc["kind"], choice, parse_formal_sum(doc["result"]))


def extended_graph(g: DynkinGraph) -> MarkedGraph:
    """Disjoint union of the affine diagrams of the components of ``g``."""
    vertices, pairing, coeff = [], {}, {}
    for i, c in enumerate(g.components):
        ext = extend_component(c, prefix=f"c{i + 1}:v")
        vertices.extend(ext.vertices)
        pairing.update(ext.pairing)
        coeff.update(ext.coeff)
    return MarkedGraph(tuple(vertices), pairing, coeff)


def _component_of(s: str) -> int:
    return _label_key(s)[0] - 1


def _check_labels(ext: MarkedGraph, labels: Iterable[str]) -> None:
    known = set(ext.vertices)
    for s in labels:
        if s not in known:
            raise UnknownVertexError(f"no vertex {s!r} in the extended graph")


def elementary_transform(g: DynkinGraph, choice: ElementaryChoice) -> DynkinGraph:
    if len(choice.removed) != len(g):
        raise TransformError(f"choice has {len(choice.removed)} parts for {len(g)} components")
    ext = extended_graph(g)
    for i, part in enumerate(choice.removed):
        if not part:
            raise EmptyRemovalError(f"nothing removed from component {i + 1}")
        _check_labels(ext, part)
        if any(_component_of(s) != i for s in part):
            raise TransformError(f"part {i + 1} names vertices of another component")
    result = classify_graph(ext.remove(s for part in choice.removed for s in part))
    if result is None:  # cannot happen for a valid choice
        raise AssertionError(f"elementary transform of {g} left a non-Dynkin graph")
    return result


def check_tie_choice(g: DynkinGraph, choice: TieChoice, gcd_rule: GcdRule = "all") -> None:
    """Raise the matching TransformError if ``choice`` is not admissible."""
    ext = extended_graph(g)
    _check_labels(ext, choice.A + choice.B)
    A, B = set(choice.A), set(choice.B)
    if A & B:
        raise OverlapError(f"A and B share {sort_labels(A & B)}")
    if len(B) > 3:
        raise TooManyTiesError(f"B has {len(B)} vertices, at most 3 allowed")
    if not g.components:
        raise UncoveredComponentError("tie transformation needs at least one component")
    ok = []
    for i in range(len(g)):
        ns = [ext.coeff[s] for s in A if _component_of(s) == i]
        if not ns:
            raise UncoveredComponentError(f"A has no vertex in component {i + 1}")
        N = sum(ext.coeff[s] for s in B if _component_of(s) == i)
        ok.append(gcd(N, *ns) == 1)
    if not (all(ok) if gcd_rule == "all" else any(ok)):
        raise GcdConditionError(f"gcd condition fails (per component: {ok})")


def tie_transform(g: DynkinGraph, choice: TieChoice, gcd_rule: GcdRule = "all") -> DynkinGraph | None:
    """Apply a tie transformation; None when the result is not Dynkin."""
    check_tie_choice(g, choice, gcd_rule)
    rest = extended_graph(g).remove(choice.A)
    pairing = dict(rest.pairing)
    for s in choice.B:
        pairing[frozenset((THETA, s))] = 1
    return classify_graph(MarkedGraph(rest.vertices + (THETA,), pairing))


# ---------------------------------------------------------------------------
# Per-type building blocks for enumeration. Everything below works on local
# vertex indices of one extended component; the added vertex is ``rank``.


@lru_cache(maxsize=None)
def _ext_masks(c: ComponentType) -> tuple[tuple[int, ...], tuple[int, ...]]:
    n = c.index + 1
    adj, dbl = [0] * n, [0] * n
    for i, j, p in extended_edges(c):
        target = adj if p == 1 else dbl
        target[i] |= 1 << j
        target[j] |= 1 << i
    return tuple(adj), tuple(dbl)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _submasks(mask: int):
    """Non-empty submasks of ``mask`` in increasing numeric order."""
    bits = _bits(mask)
    for k in range(1, 1 << len(bits)):
        yield sum(1 << bits[t] for t in range(len(bits)) if k >> t & 1)


def _coeff_gcd(coeffs: tuple[int, ...], mask: int, start: int = 0) -> int:
    g = start
    for v in _bits(mask):
        g = gcd(g, coeffs[v])
    return g


@lru_cache(maxsize=None)
def elementary_pieces(c: ComponentType) -> dict[tuple, int]:
    """Results of removing a non-empty vertex set from the affine diagram of ``c``.

    Maps each result (canonical component tuple) to the first removal mask
    producing it.
    """
    adj, _ = _ext_masks(c)
    full = (1 << (c.index + 1)) - 1
    out: dict[tuple, int] = {}
    for removed in range(1, full + 1):
        comps = classify_mask(adj, full & ~removed)
        out.setdefault(canonical(comps), removed)
    return out


@lru_cache(maxsize=None)
def untouched_pieces(c: ComponentType) -> dict[tuple[bool, tuple], int]:
    """Tie options for a component that B does not meet.

    Keys are (gcd condition holds, result); N = 0 here, so the condition is
    that the removed coefficients are coprime.
    """
    adj, _ = _ext_masks(c)
    coeffs = extended_coefficients(c)
    full = (1 << (c.index + 1)) - 1
    out: dict[tuple[bool, tuple], int] = {}
    for removed in range(1, full + 1):
        ok = _coeff_gcd(coeffs, removed) == 1
        comps = classify_mask(adj, full & ~removed)
        out.setdefault((ok, canonical(comps)), removed)
    return out


def _reach(adj, within: int, seeds: int) -> int:
    comp = frontier = seeds & within
    while frontier:
        v = frontier.bit_length() - 1
        frontier &= ~(1 << v)
        new = adj[v] & within & ~comp
        comp |= new
        frontier |= new
    return comp


def _rooted_code(adj, within: int, root: int, parent: int = -1) -> str:
    """Canonical parenthesis code of the tree on ``within`` rooted at ``root``."""
    kids = adj[root] & within
    if parent >= 0:
        kids &= ~(1 << parent)
    return "(" + "".join(sorted(_rooted_code(adj, within, w, root) for w in _bits(kids))) + ")"


@lru_cache(maxsize=None)
def touched_pieces(c: ComponentType, b: int) -> dict[tuple[bool, tuple[str, ...], tuple], int]:
    """Tie options for a component meeting B in the local vertex set ``b``.

    Keys are (gcd condition holds, tied trees, free result). Every vertex of
    B roots the piece of the remainder containing it; these rooted trees are
    what the new vertex gets tied to, recorded as canonical codes. The free
    result classifies the rest of the remainder. Options that cannot give a
    Dynkin graph (two B vertices in one piece close a cycle through the new
    vertex, or a pairing-2 edge survives) are dropped.
    """
    adj, dbl = _ext_masks(c)
    coeffs = extended_coefficients(c)
    full = (1 << (c.index + 1)) - 1
    N = sum(coeffs[v] for v in _bits(b))
    out: dict[tuple[bool, tuple[str, ...], tuple], int] = {}
    for removed in _submasks(full & ~b):
        rest = full & ~removed
        attached = 0
        codes = []
        for v in _bits(b):
            piece = _reach(adj, rest, 1 << v)
            if piece & b & ~(1 << v) or any(dbl[w] & rest for w in _bits(piece)):
                break
            attached |= piece
            codes.append(_rooted_code(adj, piece, v))
        else:
            ok = _coeff_gcd(coeffs, removed, N) == 1
            comps = classify_mask(adj, rest & ~attached)
            out.setdefault((ok, tuple(sorted(codes)), canonical(comps)), removed)
    return out


def _tree_from_codes(codes: tuple[str, ...]) -> list[int]:
    """Adjacency of a new root joined to the roots of the coded trees."""
    adj = [0]
    for code in codes:
        stack = [0]
        for ch in code:
            if ch == "(":
                v = len(adj)
                adj.append(1 << stack[-1])
                adj[stack[-1]] |= 1 << v
                stack.append(v)
            else:
                stack.pop()
    return adj


@lru_cache(maxsize=None)
def _fused(codes: tuple[str, ...]) -> tuple | None:
    """Classify the new vertex together with the rooted trees tied to it."""
    adj = _tree_from_codes(codes)
    return classify_mask(adj, (1 << len(adj)) - 1)


@dataclass
class _Layout:
    comps: tuple[ComponentType, ...]
    offsets: tuple[int, ...]
    size: int
    adj: tuple[int, ...]
    dbl: tuple[int, ...]
    owner: tuple[int, ...]


def _layout(g: DynkinGraph) -> _Layout:
    offsets, adj, dbl, owner = [], [], [], []
    off = 0
    for i, c in enumerate(g.components):
        a, d = _ext_masks(c)
        offsets.append(off)
        adj.extend(x << off for x in a)
        dbl.extend(x << off for x in d)
        owner.extend([i] * len(a))
        off += len(a)
    return _Layout(g.components, tuple(offsets), off, tuple(adj), tuple(dbl), tuple(owner))


def _labels(layout: _Layout, mask: int) -> tuple[str, ...]:
    out = []
    for v in _bits(mask):
        i = layout.owner[v]
        out.append(label(i, v - layout.offsets[i]))
    return tuple(out)


def _elementary_table(g: DynkinGraph) -> dict[tuple, tuple[int, ...]]:
    table: dict[tuple, tuple[int, ...]] = {(): ()}
    for c in g.components:
        nxt: dict[tuple, tuple[int, ...]] = {}
        pieces = elementary_pieces(c)
        for res, masks in table.items():
            for piece, local in pieces.items():
                nxt.setdefault(canonical(res + piece), masks + (local,))
        table = nxt
    return table


def enumerate_elementary_witnesses(g: DynkinGraph) -> dict[DynkinGraph, Witness]:
    out = {}
    for res, masks in _elementary_table(g).items():
        removed = tuple(tuple(label(i, v) for v in _bits(m)) for i, m in enumerate(masks))
        result = DynkinGraph(res)
        out[result] = Witness(g, "elementary", ElementaryChoice(removed), result)
    return out


def enumerate_elementary(g: DynkinGraph) -> set[DynkinGraph]:
    return {DynkinGraph(res) for res in _elementary_table(g)}


@lru_cache(maxsize=None)
def _touched_finals(parts: tuple[tuple[ComponentType, int], ...], gcd_rule: GcdRule) -> dict[tuple, tuple[int, ...]]:
    """Tie results restricted to the components met by B.

    ``parts`` lists (type, local B mask) per touched component. Maps
    (gcd flag, result including the new vertex) to local removal masks.
    """
    # flag: gcd condition so far (all components / some component)
    state: dict[tuple, tuple[int, ...]] = {(gcd_rule == "all", (), ()): ()}
    for c, b in parts:
        nxt: dict[tuple, tuple[int, ...]] = {}
        for (flag, codes, res), masks in state.items():
            for (ok, tied, piece), local in touched_pieces(c, b).items():
                if gcd_rule == "all" and not ok:
                    continue
                nkey = (flag or ok, tuple(sorted(codes + tied)), canonical(res + piece))
                if nkey not in nxt:
                    nxt[nkey] = masks + (local,)
        state = nxt
    finals: dict[tuple, tuple[int, ...]] = {}
    for (flag, codes, res), masks in state.items():
        fused = _fused(codes)
        if fused is not None:
            finals.setdefault((flag, canonical(res + fused)), masks)
    return finals


def _b_choices(size: int):
    for k in range(4):
        for combo in combinations(range(size), k):
            yield sum(1 << v for v in combo)


def enumerate_tie_witnesses(g: DynkinGraph, gcd_rule: GcdRule = "all") -> dict[DynkinGraph, Witness]:
    """All Dynkin results of admissible tie transformations of ``g``.

    For a fixed B, components not met by B contribute independently of the
    rest, so results are grouped by the set of untouched components and
    combined with their cached per-type option tables at the end.
    """
    if not g.components:
        return {}
    lay = _layout(g)
    k = len(lay.comps)
    # untouched component set -> {(flag, result): (A mask, B mask)}
    grouped: dict[tuple[int, ...], dict[tuple, tuple[int, int]]] = {}
    for B in _b_choices(lay.size):
        local: dict[int, int] = {}
        for v in _bits(B):
            i = lay.owner[v]
            local[i] = local.get(i, 0) | (1 << (v - lay.offsets[i]))
        touched = sorted(local)
        parts = tuple((lay.comps[i], local[i]) for i in touched)
        finals = grouped.setdefault(tuple(i for i in range(k) if i not in local), {})
        for key, masks in _touched_finals(parts, gcd_rule).items():
            if key not in finals:
                A = 0
                for i, m in zip(touched, masks):
                    A |= m << lay.offsets[i]
                finals[key] = (A, B)

    out: dict[DynkinGraph, Witness] = {}
    for untouched in sorted(grouped):
        state = grouped[untouched]
        for i in untouched:
            nxt: dict[tuple, tuple[int, int]] = {}
            for (flag, res), (A, B) in state.items():
                for (ok, piece), m in untouched_pieces(lay.comps[i]).items():
                    if gcd_rule == "all" and not ok:
                        continue
                    nkey = (flag or ok, canonical(res + piece))
                    if nkey not in nxt:
                        nxt[nkey] = (A | (m << lay.offsets[i]), B)
            state = nxt
        for (flag, res), (A, B) in state.items():
            if not flag:
                continue
            result = DynkinGraph(res)
            if result not in out:
                out[result] = Witness(g, "tie", TieChoice(_labels(lay, A), _labels(lay, B)), result)
    return out


def enumerate_tie(g: DynkinGraph, gcd_rule: GcdRule = "all") -> set[DynkinGraph]:
    return set(enumerate_tie_witnesses(g, gcd_rule))


def reachable_one_step(g: DynkinGraph, gcd_rule: GcdRule = "all") -> dict[DynkinGraph, Witness]:
    """Results of one elementary or tie transformation, with a witness each.

    Elementary witnesses are preferred when both kinds reach a result.
    """
    out = dict(enumerate_tie_witnesses(g, gcd_rule))
    out.update(enumerate_elementary_witnesses(g))
    return out
