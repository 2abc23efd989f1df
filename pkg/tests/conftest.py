import random

import hypothesis
import pytest

from cwpoly import cwexpr, graph
from cwpoly.cwexpr import EdgeAdd, Recolor, Singleton, Union

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> graph.KGraph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return graph.KGraph.build(range(1, n + 1), edges)


def random_term(rng: random.Random, n: int, k: int, extra_ops: int = 4) -> cwexpr.CwTerm:
    """Arbitrary k-expression on vertices 1..n; may contain redundant edge creations."""

    def wrap(t):
        p, q = rng.sample(range(1, k + 1), 2)
        return (Recolor if rng.random() < 0.4 else EdgeAdd)(p, q, t)

    pool = [Singleton(v, rng.randint(1, k)) for v in range(1, n + 1)]
    while len(pool) > 1 or extra_ops > 0:
        if len(pool) > 1 and rng.random() < 0.5:
            a = pool.pop(rng.randrange(len(pool)))
            b = pool.pop(rng.randrange(len(pool)))
            pool.append(Union(a, b))
        else:
            i = rng.randrange(len(pool))
            pool[i] = wrap(pool[i])
            if len(pool) == 1:
                extra_ops -= 1
    return pool[0]


@pytest.fixture
def k2_term():
    return cwexpr.parse_term("e(1,2, U(v(1,1), v(2,2)))")


FAMILY_TERMS = (
    [("clique", n, cwexpr.build_clique(n)) for n in range(1, 6)]
    + [("biclique", (a, b), cwexpr.build_biclique(a, b)) for a in range(1, 4) for b in range(1, 4)]
    + [("path", n, cwexpr.build_path(n)) for n in range(1, 8)]
    + [("cycle", n, cwexpr.build_cycle(n)) for n in range(3, 8)]
    + [("cograph", "J(1,S(2,3),J(4,5))", cwexpr.build_cograph(cwexpr.parse_cotree("J(1,S(2,3),J(4,5))")))]
)
