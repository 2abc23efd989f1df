"""Brute-force ground truth by enumerating every vertex subset.

Nothing here touches the engine's tables.  Subsets are visited as
bitmasks in increasing order and classified with the graph module's
direct predicates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import KGraph, is_dominating, is_independent, partition_edge_counts
from .polynomial import Poly

VARS = ("X1", "X2", "Y11", "Y12", "Y22")
DEFAULT_MAX_N = 20

PREDICATES = {
    "true": lambda g, s: True,
    "independent": is_independent,
    "dominating": is_dominating,
}


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    poly: Poly
    satisfying_count: int


def subsets(g: KGraph):
    vs = g.vertices
    for mask in range(1 << len(vs)):
        yield frozenset(v for i, v in enumerate(vs) if mask >> i & 1)


def brute_force(g: KGraph, predicate: str = "true", max_n: int = DEFAULT_MAX_N) -> OracleResult:
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}; choose from {sorted(PREDICATES)}")
    if g.n > max_n:
        raise OracleTooLarge(f"graph has {g.n} vertices, oracle bound is {max_n}")
    test = PREDICATES[predicate]
    terms: dict[tuple[int, ...], int] = {}
    count = 0
    for s in subsets(g):
        if not test(g, s):
            continue
        count += 1
        exp = (len(s), g.n - len(s), *partition_edge_counts(g, s))
        terms[exp] = terms.get(exp, 0) + 1
    return OracleResult(Poly(VARS, terms), count)


# -- per-node tables, for checking the dynamic program node by node --------

def direct_state(predicate: str, g: KGraph, s: frozenset[int]):
    """The automaton state of ``(g, s)`` computed straight from the graph.

    ``None`` marks subsets an automaton would already have discarded.
    """
    if predicate == "true":
        return "any"
    if predicate == "independent":
        return "ok" if is_independent(g, s) else None
    if predicate == "dominating":
        return frozenset(g.labels[v] for v in g.vertices if v not in s and not g.neighbors(v) & s)
    raise ValueError(f"unknown predicate {predicate!r}")


def brute_force_table(g: KGraph, predicate: str, variant: str, k: int | None = None) -> dict:
    """Cells keyed exactly as the engine keys them, built by enumeration.

    ``aggregated``: ``(state, d) -> Poly`` over Y11, Y12, Y22.
    ``reference``: ``(state, d, m11, m12, m22) -> int`` with per-label-pair
    edge counts flattened row-major over ``k x k``; the unordered families
    use the ``(min, max)`` slot only.
    """
    k = k or g.k
    cells: dict = {}
    for s in subsets(g):
        state = direct_state(predicate, g, s)
        if state is None:
            continue
        d = [0] * k
        for v in s:
            d[g.labels[v] - 1] += 1
        d = tuple(d)
        if variant == "aggregated":
            key = (state, d)
            mono = Poly(("Y11", "Y12", "Y22"), {partition_edge_counts(g, s): 1})
            cells[key] = cells[key] + mono if key in cells else mono
            continue
        m11 = [0] * (k * k)
        m12 = [0] * (k * k)
        m22 = [0] * (k * k)
        for u, v in g.edges:
            a, b = g.labels[u], g.labels[v]
            if u in s and v in s:
                lo, hi = min(a, b), max(a, b)
                m11[(lo - 1) * k + hi - 1] += 1
            elif u not in s and v not in s:
                lo, hi = min(a, b), max(a, b)
                m22[(lo - 1) * k + hi - 1] += 1
            elif u in s:
                m12[(a - 1) * k + b - 1] += 1
            else:
                m12[(b - 1) * k + a - 1] += 1
        key = (state, d, tuple(m11), tuple(m12), tuple(m22))
        cells[key] = cells.get(key, 0) + 1
    return cells
