import random

import pytest
from hypothesis import given, strategies as st

from cwpoly import cwexpr, graph
from cwpoly.cwexpr import (
    EdgeAdd,
    Recolor,
    Singleton,
    TermError,
    Union,
    evaluate,
    parse_term,
    render_term,
    validate,
)

from conftest import FAMILY_TERMS, random_term


def test_parse_examples():
    assert parse_term("e(1,2, U(v(1,1), v(2,2)))") == EdgeAdd(1, 2, Union(Singleton(1, 1), Singleton(2, 2)))
    assert parse_term("r(2->1, v(3,2))") == Recolor(2, 1, Singleton(3, 2))
    assert parse_term("  r( 2 -> 1 ,\n v(3, 2) )  # trailing\n") == Recolor(2, 1, Singleton(3, 2))


@pytest.mark.parametrize(
    "text, msg",
    [
        ("e(1,1, v(1,1))", "p and q must differ"),
        ("r(3->3, v(1,1))", "p and q must differ"),
        ("U(v(1,1), v(1,2))", "duplicate vertex id 1"),
        ("v(1,0)", "out of range"),
        ("U(v(1,1) v(2,1))", "expected ','"),
        ("v(1,1) v(2,2)", "trailing"),
        ("x(1,1)", "unexpected character"),
        ("e(1,2,", "expected term"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(TermError, match=msg):
        parse_term(text)


def test_parse_error_position():
    with pytest.raises(TermError) as info:
        parse_term("U(v(1,1),\n  v(2,9))", k=3)
    assert info.value.span.line == 2
    assert info.value.span.col == 7


def test_spans_recorded():
    t = parse_term("e(1,2,\nU(v(1,1), v(2,2)))")
    assert (t.span.line, t.span.col) == (1, 1)
    assert (t.child.span.line, t.child.span.col) == (2, 1)


def test_evaluate_examples():
    g = evaluate(parse_term("e(1,2, U(v(1,1), v(2,2)))"))
    assert g.edges == ((1, 2),) and g.labels == {1: 1, 2: 2}
    g = evaluate(parse_term("r(2->1, e(1,2, U(v(1,1), v(2,2))))"))
    assert g.edges == ((1, 2),) and g.labels == {1: 1, 2: 1}


def test_validate_examples():
    rep = validate(parse_term("e(1,2, U(v(1,1), v(2,2)))"))
    assert rep.width == 2 and rep.irredundant and rep.edge_count == 1
    rep = validate(parse_term("e(1,2, e(1,2, U(v(1,1), v(2,2))))"))
    assert not rep.irredundant
    assert len(rep.redundant_sites) == 1 and rep.redundant_sites[0].col == 1
    rep = validate(cwexpr.build_path(5))
    assert rep.width == 3 and rep.irredundant


def test_edge_add_on_empty_class_is_not_redundant():
    rep = validate(parse_term("e(1,3, e(1,3, U(v(1,1), v(2,2))))"))
    assert rep.irredundant and rep.edge_count == 0


EXPECTED = {
    "clique": lambda n: graph.complete_graph(n),
    "biclique": lambda ab: graph.complete_bipartite(*ab),
    "path": lambda n: graph.path_graph(n),
    "cycle": lambda n: graph.cycle_graph(n),
}
WIDTH_BOUND = {"clique": 2, "biclique": 2, "path": 3, "cycle": 4, "cograph": 2}


@pytest.mark.parametrize("family, param, term", FAMILY_TERMS, ids=lambda x: str(x)[:20])
def test_family_builders(family, param, term):
    rep = validate(term)
    assert rep.irredundant
    assert rep.width <= WIDTH_BOUND[family]
    if family in EXPECTED:
        want = EXPECTED[family](param)
        got = evaluate(term)
        assert got.same_graph(want)
        assert rep.edge_count == want.m


def test_specific_widths():
    assert validate(cwexpr.build_clique(3)).width == 2
    assert evaluate(cwexpr.build_clique(3)).m == 3
    assert validate(cwexpr.build_cycle(5)).width <= 4
    assert evaluate(cwexpr.build_biclique(2, 2)).edges == ((1, 3), (1, 4), (2, 3), (2, 4))


def test_cograph_builder():
    tree = cwexpr.parse_cotree("join(1, union(2, 3), 4)")
    g = evaluate(cwexpr.build_cograph(tree))
    # join of 1, {2,3} (no edge), 4: everything adjacent except 2-3
    assert g.edges == ((1, 2), (1, 3), (1, 4), (2, 4), (3, 4))
    with pytest.raises(ValueError):
        cwexpr.parse_cotree("join(1,")


def test_fallback_c4():
    term = cwexpr.build_fallback(graph.cycle_graph(4))
    rep = validate(term)
    assert rep.width == 4 and rep.irredundant
    assert evaluate(term).same_graph(graph.cycle_graph(4))


@given(st.integers(1, 6), st.integers(0, 2**15 - 1))
def test_fallback_reproduces_any_graph(n, mask):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    g = graph.KGraph.build(range(1, n + 1), [p for b, p in enumerate(pairs) if mask >> b & 1])
    term = cwexpr.build_fallback(g)
    assert evaluate(term).same_graph(g)
    assert validate(term).width == n


@given(st.integers(0, 2**32), st.integers(1, 7), st.integers(2, 4))
def test_roundtrip(seed, n, k):
    t = random_term(random.Random(seed), n, k)
    text = render_term(t)
    assert parse_term(text) == t
    assert parse_term(text.replace(" ", "\n  ")) == t
    assert evaluate(t) == evaluate(parse_term(text))


@pytest.mark.parametrize("family, param, term", FAMILY_TERMS, ids=lambda x: str(x)[:20])
def test_family_roundtrip(family, param, term):
    assert parse_term(render_term(term)) == term


def test_fold_handles_deep_terms():
    t = cwexpr.build_path(3000)
    g = evaluate(t)
    assert g.n == 3000 and g.m == 2999
