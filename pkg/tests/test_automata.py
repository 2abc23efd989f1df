import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cwpoly import cwexpr, graph, oracle
from cwpoly.automata import (
    DEAD,
    OccupancySignature,
    dominating_automaton,
    independent_automaton,
    make_automaton,
    true_automaton,
)
from cwpoly.cwexpr import EdgeAdd, Recolor, Singleton, Union

from conftest import FAMILY_TERMS, random_term

PREDICATES = {"true": lambda g, s: True, "independent": graph.is_independent, "dominating": graph.is_dominating}


def sig(d, r):
    return OccupancySignature.from_counts(d, r)


def test_true_automaton():
    a = true_automaton(2)
    s = a.init(1, True)
    assert a.init(2, False) == s
    assert a.edge_add(s, 1, 2, sig((1, 1), (1, 1))) == s
    assert a.recolor(s, 1, 2) == s
    assert a.accept(s)


def test_independent_automaton():
    a = independent_automaton(2)
    ok = a.init(1, True)
    assert a.init(2, False) == ok
    # K_2 as e(1,2, U(v(1,1), v(2,2)))
    assert a.edge_add(ok, 1, 2, sig((1, 1), (1, 1))) == DEAD
    assert a.edge_add(ok, 1, 2, sig((1, 0), (1, 1))) == ok
    assert a.accept(ok) and not a.accept(DEAD)


def test_dominating_automaton():
    a = dominating_automaton(2)
    s1, s2 = a.init(1, True), a.init(2, False)
    assert s1 == frozenset() and s2 == frozenset({2})
    joined = a.join(s1, s2)
    after = a.edge_add(joined, 1, 2, sig((1, 0), (1, 1)))
    assert after == frozenset() and a.accept(after)
    nobody = a.join(a.init(1, False), a.init(2, False))
    assert a.edge_add(nobody, 1, 2, sig((0, 0), (1, 1))) == frozenset({1, 2})
    assert not a.accept(nobody)
    assert a.recolor(frozenset({1}), 1, 2) == frozenset({2})


def test_dominating_leaf_states_have_at_most_one_label():
    a = dominating_automaton(4)
    for c in range(1, 5):
        for in_s in (False, True):
            assert len(a.init(c, in_s)) <= 1


@pytest.mark.parametrize("name", ["true", "independent", "dominating"])
def test_dead_is_absorbing(name):
    a = make_automaton(name, 3)
    assert a.join(DEAD, a.init(1, True)) == DEAD
    assert a.join(a.init(1, False), DEAD) == DEAD
    assert a.recolor(DEAD, 1, 2) == DEAD
    for d in itertools.product((0, 1), repeat=3):
        assert a.edge_add(DEAD, 1, 3, sig(d, (1, 1, 1))) == DEAD
    assert not a.accept(DEAD)


def test_join_commutes_on_reachable_states():
    k = 3
    labels = range(1, k + 1)
    subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(labels, r)]
    cases = {
        "true": [true_automaton(k).STATE, DEAD],
        "independent": ["ok", DEAD],
        "dominating": subsets + [DEAD],
    }
    for name, states in cases.items():
        a = make_automaton(name, k)
        for x, y in itertools.product(states, repeat=2):
            assert a.join(x, y) == a.join(y, x)
            for z in states:
                assert a.join(a.join(x, y), z) == a.join(x, a.join(y, z))


def run_alongside(term, automaton, s, predicate):
    """Step the automaton through ``term`` for the fixed subset ``s``.

    At every node the state must equal the one computed directly from the
    subterm's graph; returns the root state.
    """

    def visit(node, kids):
        k = automaton.k
        if isinstance(node, Singleton):
            r = [0] * k
            r[node.label - 1] = 1
            in_s = node.vertex in s
            state = automaton.init(node.label, in_s)
            d = list(r) if in_s else [0] * k
        elif isinstance(node, Union):
            (sa, da, ra), (sb, db, rb) = kids
            state = automaton.join(sa, sb)
            d = [x + y for x, y in zip(da, db)]
            r = [x + y for x, y in zip(ra, rb)]
        else:
            state, d, r = kids[0]
            d, r = list(d), list(r)
            if isinstance(node, Recolor):
                state = automaton.recolor(state, node.p, node.q)
                for vec in (d, r):
                    vec[node.q - 1] += vec[node.p - 1]
                    vec[node.p - 1] = 0
            else:
                state = automaton.edge_add(state, node.p, node.q, sig(d, r))
        sub = cwexpr.evaluate(node)
        direct = oracle.direct_state(predicate, sub, frozenset(v for v in s if v in sub.labels))
        assert (DEAD if direct is None else direct) == state, node
        return state, d, r

    return cwexpr.fold(term, visit)[0]


def check_term_all_subsets(term, predicate):
    g = cwexpr.evaluate(term)
    a = make_automaton(predicate, max(g.k, 2))
    for s in oracle.subsets(g):
        state = run_alongside(term, a, s, predicate)
        assert a.accept(state) == PREDICATES[predicate](g, s)


@pytest.mark.parametrize("predicate", ["true", "independent", "dominating"])
@pytest.mark.parametrize("family, param, term", FAMILY_TERMS[:14], ids=lambda x: str(x)[:20])
def test_automaton_tracks_predicate_on_families(family, param, term, predicate):
    check_term_all_subsets(term, predicate)


@given(st.integers(0, 2**32), st.integers(1, 5), st.integers(2, 4),
       st.sampled_from(["true", "independent", "dominating"]))
def test_automaton_tracks_predicate_on_random_terms(seed, n, k, predicate):
    check_term_all_subsets(random_term(random.Random(seed), n, k), predicate)


def test_p3_endpoints_independent_and_star_domination():
    p3 = cwexpr.build_path(3)
    a = independent_automaton(3)
    assert a.accept(run_alongside(p3, a, frozenset({1, 3}), "independent"))
    star = cwexpr.build_biclique(1, 3)
    d = dominating_automaton(2)
    assert d.accept(run_alongside(star, d, frozenset({1}), "dominating"))
    assert not d.accept(run_alongside(star, d, frozenset({2}), "dominating"))


def test_unknown_automaton():
    with pytest.raises(ValueError):
        make_automaton("connected", 2)
