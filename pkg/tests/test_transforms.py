from itertools import product

import pytest
from hypothesis import given, settings

from triangle_pc.acceptance import all_component_types
from triangle_pc.graphs import EMPTY, classify_mask, parse_formal_sum
from triangle_pc.transforms import (
    ElementaryChoice,
    EmptyRemovalError,
    GcdConditionError,
    OverlapError,
    TieChoice,
    TooManyTiesError,
    TransformError,
    UncoveredComponentError,
    UnknownVertexError,
    Witness,
    _ext_masks,
    elementary_transform,
    enumerate_elementary,
    enumerate_elementary_witnesses,
    enumerate_tie,
    enumerate_tie_witnesses,
    extended_graph,
    reachable_one_step,
    tie_transform,
)

from .conftest import dynkin_graphs

G = parse_formal_sum


def brute_elementary(g):
    ext = extended_graph(g)
    per_comp = [[v for v in ext.vertices if v.startswith(f"c{i + 1}:")] for i in range(len(g))]
    options = []
    for vs in per_comp:
        options.append([tuple(v for k, v in enumerate(vs) if m >> k & 1) for m in range(1, 1 << len(vs))])
    return {elementary_transform(g, ElementaryChoice(parts)) for parts in product(*options)}


def brute_tie(g, gcd_rule="all"):
    """Every assignment of vertices to A, B or neither, through the literal transform."""
    vs = extended_graph(g).vertices
    out = set()
    for roles in product((0, 1, 2), repeat=len(vs)):
        B = tuple(v for v, r in zip(vs, roles) if r == 2)
        if len(B) > 3:
            continue
        A = tuple(v for v, r in zip(vs, roles) if r == 1)
        try:
            res = tie_transform(g, TieChoice(A, B), gcd_rule)
        except TransformError:
            continue
        if res is not None:
            out.add(res)
    return out


SMALL = ["A1", "A2", "A3", "A4", "D4", "2A1", "A2+A1", "A3+A1", "3A1", "D5", "2A2", "D4+A1", "E6", "A5", "A2+2A1"]


@pytest.mark.parametrize("text", SMALL + ["E8+A2", "E7+A2", "2A4+A1", "D6+A3"])
def test_elementary_matches_brute_force(text):
    g = G(text)
    assert enumerate_elementary(g) == brute_elementary(g)


@pytest.mark.parametrize("text", SMALL)
def test_tie_matches_brute_force(text):
    g = G(text)
    assert enumerate_tie(g) == brute_tie(g)


@pytest.mark.parametrize("text", ["A2+A1", "2A1", "A3+A1", "D4+A1", "A2+2A1"])
def test_existential_gcd_rule_matches_brute_force(text):
    g = G(text)
    assert enumerate_tie(g, "any") == brute_tie(g, "any")
    assert enumerate_tie(g) <= enumerate_tie(g, "any")


def test_elementary_examples():
    g = G("E8+A2")
    # drop the E8 vertex next to the far end of the long arm and one vertex of the A2 triangle
    choice = ElementaryChoice((("c1:v6",), ("c2:v1",)))
    assert elementary_transform(g, choice) == G("E6+2A2")
    assert elementary_transform(G("A1"), ElementaryChoice((("c1:v2",),))) == G("A1")
    assert elementary_transform(G("A2"), ElementaryChoice((("c1:v1", "c1:v2", "c1:v3"),))) == EMPTY


def test_elementary_enumeration_examples():
    assert enumerate_elementary(G("A1")) == {G("A1"), EMPTY}
    assert enumerate_elementary(EMPTY) == {EMPTY}
    assert G("E6+2A2") in enumerate_elementary(G("E8+A2"))


def test_elementary_errors():
    with pytest.raises(EmptyRemovalError):
        elementary_transform(G("A2+A1"), ElementaryChoice((("c1:v1",), ())))
    with pytest.raises(TransformError):
        elementary_transform(G("A2+A1"), ElementaryChoice((("c1:v1",),)))
    with pytest.raises(UnknownVertexError):
        elementary_transform(G("A2"), ElementaryChoice((("c1:v9",),)))
    with pytest.raises(TransformError):
        elementary_transform(G("A2+A1"), ElementaryChoice((("c2:v1",), ("c1:v1",))))


def test_tie_examples():
    assert tie_transform(G("A1"), TieChoice(("c1:v1",), ("c1:v2",))) == G("A2")
    assert tie_transform(G("A1"), TieChoice(("c1:v1",), ())) == G("2A1")
    found = [
        w for w in enumerate_tie_witnesses(G("E8+A2")).values() if w.result == G("A6+D5")
    ]
    assert found and found[0].replay() == G("A6+D5")


def test_tie_worked_choice_exists():
    """Some admissible choice with n1 = 4 and N = 1 on E8, n1 = N = 1 on A2 gives A6+D5."""
    g = G("E8+A2")
    ext = extended_graph(g)
    e8 = [v for v in ext.vertices if v.startswith("c1:")]
    a2 = [v for v in ext.vertices if v.startswith("c2:")]
    hits = []
    for a in (v for v in e8 if ext.coeff[v] == 4):
        for b in (v for v in e8 if ext.coeff[v] == 1):
            for a_ in a2:
                for b_ in a2:
                    if a_ != b_ and tie_transform(g, TieChoice((a, a_), (b, b_))) == G("A6+D5"):
                        hits.append((a, a_, b, b_))
    assert hits


def test_tie_a1_all_choices():
    # the four admissible choices on affine A1 with |A| = |B| = 1 or B empty
    results = {
        (A, B): tie_transform(G("A1"), TieChoice(A, B))
        for A, B in [(("c1:v1",), ("c1:v2",)), (("c1:v2",), ("c1:v1",)), (("c1:v1",), ()), (("c1:v2",), ())]
    }
    assert set(results.values()) == {G("A2"), G("2A1")}
    assert enumerate_tie(G("A1")) == {G("A2"), G("2A1"), G("A1")}


def test_tie_errors():
    g = G("A2+A1")
    with pytest.raises(OverlapError):
        tie_transform(g, TieChoice(("c1:v1", "c2:v1"), ("c1:v1",)))
    with pytest.raises(TooManyTiesError):
        tie_transform(G("A5"), TieChoice(("c1:v1",), ("c1:v2", "c1:v3", "c1:v4", "c1:v5")))
    with pytest.raises(UncoveredComponentError):
        tie_transform(g, TieChoice(("c1:v1",), ()))
    with pytest.raises(UncoveredComponentError):
        tie_transform(EMPTY, TieChoice((), ()))
    # E8: removing only the coefficient-2 end vertex with B empty gives gcd(0, 2) = 2
    with pytest.raises(GcdConditionError):
        tie_transform(G("E8"), TieChoice(("c1:v1",), ()))
    with pytest.raises(GcdConditionError):
        tie_transform(G("E8+A1"), TieChoice(("c1:v1", "c2:v1"), ()))
    # the existential reading only needs the A1 component to pass
    assert tie_transform(G("E8+A1"), TieChoice(("c1:v1", "c2:v1"), ()), gcd_rule="any") is not None


def test_tie_empty_graph():
    assert enumerate_tie(EMPTY) == set()
    assert enumerate_tie_witnesses(EMPTY) == {}


def test_reachable_one_step_w13_seed():
    ws = reachable_one_step(G("E8+A2"))
    assert ws[G("E6+2A2")].kind == "elementary"
    assert G("A6+D5") in enumerate_tie(G("E8+A2"))
    for w in ws.values():
        assert w.replay() == w.result
        assert Witness.from_json(w.to_json()) == w


def test_reachable_one_step_a1():
    assert set(reachable_one_step(G("A1"))) == {G("A1"), EMPTY, G("A2"), G("2A1")}


@pytest.mark.parametrize("text", ["E8+A2", "2A4+A1", "D5+A3+A1", "A7+A4", "E7+D4", "A11"])
def test_all_witnesses_replay(text):
    g = G(text)
    for table in (enumerate_elementary_witnesses(g), enumerate_tie_witnesses(g)):
        for result, w in table.items():
            assert w.result == result
            assert w.replay() == result


def test_witness_json_shape():
    w = reachable_one_step(G("E8+A2"))[G("E6+2A2")]
    doc = w.to_json()
    assert set(doc) == {"source", "kind", "removed", "result"}
    assert set(doc["removed"]) == {"1", "2"}
    tie = enumerate_tie_witnesses(G("E8+A2"))[G("A6+D5")].to_json()
    assert set(tie) == {"source", "kind", "A", "B", "result"}
    assert tie["result"] == "D5+A6"
    assert all(s.startswith(("c1:v", "c2:v")) for s in tie["A"] + tie["B"])


@given(dynkin_graphs(max_components=3, max_rank=5))
@settings(max_examples=30, deadline=None)
def test_rank_bookkeeping_and_identity(g):
    elem = enumerate_elementary(g)
    tie = enumerate_tie(g)
    assert all(r.rank <= g.rank for r in elem)
    assert all(r.rank <= g.rank + 1 for r in tie)
    if g:
        assert g in elem


@given(dynkin_graphs(max_components=3, max_rank=4))
@settings(max_examples=20, deadline=None)
def test_enumeration_deterministic(g):
    a = [w.to_json() for w in enumerate_tie_witnesses(g).values()]
    b = [w.to_json() for w in enumerate_tie_witnesses(g).values()]
    assert a == b


@pytest.mark.parametrize("c", all_component_types(12), ids=str)
def test_elementary_totality_per_component(c):
    # a choice on a disjoint union classifies iff it does on every component
    adj, dbl = _ext_masks(c)
    full = (1 << len(adj)) - 1
    for removed in range(1, full + 1):
        assert classify_mask(adj, full & ~removed, dbl) is not None
