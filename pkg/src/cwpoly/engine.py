"""Dynamic programming over k-expressions for two-block Ising polynomials.

For a term t and a tracked-set property, ``run`` returns

    sum over S subseteq V(val(t)) with property(S):
        X1^|S| X2^|V\\S| Y11^|E(S)| Y12^|boundary(S)| Y22^|E(V\\S)|

Tables are keyed by automaton state and the per-label counts
``d[c] = |S cap R_c|``.  Two variants share the same fold:

``aggregated``
    each cell holds a polynomial in Y11, Y12, Y22.  Edge creation
    multiplies in the newly created edges, which is only sound when no
    edge between the two label classes exists yet (irredundant terms).

``reference``
    each cell additionally carries per-label-pair edge counts and holds a
    plain integer.  Edge creation overwrites the counts for the joined
    pair, so redundant terms are handled.  The key space grows with k^2;
    meant for small inputs and cross-checking.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import IO

from . import cwexpr
from .automata import FormulaAutomaton, OccupancySignature, make_automaton
from .cwexpr import CwTerm, EdgeAdd, Recolor, Singleton, Span, Union
from .polynomial import Poly, mono_mul, mul, substitute

CANONICAL_VARS = ("X1", "X2", "Y11", "Y12", "Y22")
EDGE_VARS = ("Y11", "Y12", "Y22")
VARIANTS = ("aggregated", "reference")

_ONE = Poly.constant(EDGE_VARS, 1)


class EngineError(ValueError):
    pass


class RedundantEdgeError(EngineError):
    def __init__(self, p: int, q: int, span: Span | None = None):
        self.span = span
        where = f" at {span}" if span else ""
        super().__init__(f"redundant edge creation e({p},{q}){where}: aggregated engine needs an irredundant term")


class BudgetExceeded(EngineError):
    pass


@dataclass
class DpTable:
    """Cells of one parse-tree node.

    ``sizes[c-1]`` is |R_c| at this node.  ``linked`` records the unordered
    label pairs already joined by at least one edge; the aggregated
    variant uses it to refuse redundant edge creation.
    """

    variant: str
    k: int
    sizes: tuple[int, ...]
    cells: dict[tuple, object] = field(default_factory=dict)
    linked: frozenset[tuple[int, int]] = frozenset()

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def max_coeff_bits(self) -> int:
        if self.variant == "aggregated":
            return max((p.max_coeff_bits() for p in self.cells.values()), default=0)
        return max((abs(c).bit_length() for c in self.cells.values()), default=0)

    def total_mass(self) -> int:
        """Number of subsets represented (all variables set to 1)."""
        if self.variant == "aggregated":
            return sum(sum(p.terms.values()) for p in self.cells.values())
        return sum(self.cells.values())


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise EngineError(f"unknown engine variant {variant!r}; choose from {VARIANTS}")


def _accumulate(cells: dict, key: tuple, value, variant: str) -> None:
    old = cells.get(key)
    if old is None:
        cells[key] = value
        return
    new = old + value
    if (variant == "aggregated" and not new) or (variant == "reference" and new == 0):
        del cells[key]
    else:
        cells[key] = new


def table_singleton(vertex: int, label: int, automaton: FormulaAutomaton, variant: str = "aggregated") -> DpTable:
    _check_variant(variant)
    k = automaton.k
    if not 1 <= label <= k:
        raise EngineError(f"label {label} outside 1..{k}")
    sizes = tuple(1 if c == label else 0 for c in range(1, k + 1))
    zero = (0,) * k
    table = DpTable(variant, k, sizes)
    for in_s in (False, True):
        state = automaton.init(label, in_s)
        if automaton.is_dead(state):
            continue
        d = sizes if in_s else zero
        if variant == "aggregated":
            table.cells[(state, d)] = _ONE
        else:
            empty = (0,) * (k * k)
            table.cells[(state, d, empty, empty, empty)] = 1
    return table


def table_union(a: DpTable, b: DpTable, automaton: FormulaAutomaton) -> DpTable:
    if a.variant != b.variant or a.k != b.k:
        raise EngineError(f"cannot join a {a.variant}/k={a.k} table with a {b.variant}/k={b.k} table")
    variant = a.variant
    sizes = tuple(x + y for x, y in zip(a.sizes, b.sizes))
    out = DpTable(variant, a.k, sizes, linked=a.linked | b.linked)
    cells = out.cells
    join = automaton.join
    dead = automaton.is_dead
    if variant == "aggregated":
        for (sa, da), pa in a.cells.items():
            for (sb, db), pb in b.cells.items():
                s = join(sa, sb)
                if dead(s):
                    continue
                key = (s, tuple(x + y for x, y in zip(da, db)))
                _accumulate(cells, key, mul(pa, pb), variant)
    else:
        for (sa, da, m11a, m12a, m22a), ca in a.cells.items():
            for (sb, db, m11b, m12b, m22b), cb in b.cells.items():
                s = join(sa, sb)
                if dead(s):
                    continue
                key = (
                    s,
                    tuple(x + y for x, y in zip(da, db)),
                    tuple(x + y for x, y in zip(m11a, m11b)),
                    tuple(x + y for x, y in zip(m12a, m12b)),
                    tuple(x + y for x, y in zip(m22a, m22b)),
                )
                _accumulate(cells, key, ca * cb, variant)
    return out


def _fold_pairs(m: tuple[int, ...], k: int, p: int, q: int, symmetric: bool) -> tuple[int, ...]:
    out = [0] * (k * k)
    for i, v in enumerate(m):
        if not v:
            continue
        a, b = divmod(i, k)
        a += 1
        b += 1
        a = q if a == p else a
        b = q if b == p else b
        if symmetric:
            a, b = _pair(a, b)
        out[(a - 1) * k + (b - 1)] += v
    return tuple(out)


def table_recolor(a: DpTable, p: int, q: int, automaton: FormulaAutomaton) -> DpTable:
    if p == q:
        raise EngineError("recolor needs p != q")
    k = a.k
    sizes = list(a.sizes)
    sizes[q - 1] += sizes[p - 1]
    sizes[p - 1] = 0
    linked = frozenset(_pair(q if x == p else x, q if y == p else y) for x, y in a.linked)
    out = DpTable(a.variant, k, tuple(sizes), linked=linked)

    def move(d: tuple[int, ...]) -> tuple[int, ...]:
        d2 = list(d)
        d2[q - 1] += d2[p - 1]
        d2[p - 1] = 0
        return tuple(d2)

    for key, value in a.cells.items():
        state = automaton.recolor(key[0], p, q)
        if automaton.is_dead(state):
            continue
        if a.variant == "aggregated":
            new_key = (state, move(key[1]))
        else:
            _, d, m11, m12, m22 = key
            new_key = (
                state,
                move(d),
                _fold_pairs(m11, k, p, q, True),
                _fold_pairs(m12, k, p, q, False),
                _fold_pairs(m22, k, p, q, True),
            )
        _accumulate(out.cells, new_key, value, a.variant)
    return out


def table_edge_add(
    a: DpTable, p: int, q: int, automaton: FormulaAutomaton, span: Span | None = None
) -> DpTable:
    if p == q:
        raise EngineError("edge creation needs p != q")
    k = a.k
    r = a.sizes
    rp, rq = r[p - 1], r[q - 1]
    pair = _pair(p, q)
    if a.variant == "aggregated" and pair in a.linked:
        raise RedundantEdgeError(p, q, span)
    linked = a.linked | {pair} if rp and rq else a.linked
    out = DpTable(a.variant, k, r, linked=linked)
    lo, hi = pair
    i_pq = (p - 1) * k + (q - 1)
    i_qp = (q - 1) * k + (p - 1)
    i_sym = (lo - 1) * k + (hi - 1)
    for key, value in a.cells.items():
        state, d = key[0], key[1]
        dp, dq = d[p - 1], d[q - 1]
        state = automaton.edge_add(state, p, q, OccupancySignature.from_counts(d, r))
        if automaton.is_dead(state):
            continue
        in_in = dp * dq
        p_out = dp * (rq - dq)
        q_out = dq * (rp - dp)
        out_out = (rp - dp) * (rq - dq)
        if a.variant == "aggregated":
            new_key = (state, d)
            if in_in or p_out or q_out or out_out:
                value = mono_mul(value, (in_in, p_out + q_out, out_out))
        else:
            _, _, m11, m12, m22 = key
            m11 = list(m11)
            m12 = list(m12)
            m22 = list(m22)
            m11[i_sym] = in_in
            m12[i_pq] = p_out
            m12[i_qp] = q_out
            m22[i_sym] = out_out
            new_key = (state, d, tuple(m11), tuple(m12), tuple(m22))
        _accumulate(out.cells, new_key, value, a.variant)
    return out


@dataclass
class RunStats:
    nodes: int = 0
    peak_cells: int = 0
    max_coeff_bits: int = 0
    seconds: float = 0.0


def build_table(
    term: CwTerm,
    automaton: FormulaAutomaton,
    variant: str = "aggregated",
    *,
    deadline: float | None = None,
    trace: IO[str] | None = None,
    stats: RunStats | None = None,
) -> DpTable:
    """Fold the four table operations over ``term`` and return the root table.

    ``deadline`` is a ``time.monotonic()`` value; ``trace`` receives one
    JSON object per node.
    """
    _check_variant(variant)
    if cwexpr.width(term) > automaton.k:
        raise EngineError(f"term uses labels up to {cwexpr.width(term)} but automaton has k={automaton.k}")
    stats = stats if stats is not None else RunStats()
    counter = [0]

    def visit(node, kids):
        if isinstance(node, Singleton):
            t = table_singleton(node.vertex, node.label, automaton, variant)
            kind = "v"
        elif isinstance(node, Union):
            t = table_union(kids[0], kids[1], automaton)
            kind = "U"
        elif isinstance(node, Recolor):
            t = table_recolor(kids[0], node.p, node.q, automaton)
            kind = "r"
        elif isinstance(node, EdgeAdd):
            t = table_edge_add(kids[0], node.p, node.q, automaton, node.span)
            kind = "e"
        else:
            raise EngineError(f"not a term node: {node!r}")
        node_id = counter[0]
        counter[0] += 1
        stats.nodes += 1
        stats.peak_cells = max(stats.peak_cells, len(t.cells))
        if trace is not None:
            bits = t.max_coeff_bits()
            stats.max_coeff_bits = max(stats.max_coeff_bits, bits)
            trace.write(json.dumps({"node": node_id, "op": kind, "cells": len(t.cells), "max_coeff_bits": bits}) + "\n")
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"time budget exceeded after {stats.nodes} nodes")
        return t

    return cwexpr.fold(term, visit)


def table_to_poly(table: DpTable, automaton: FormulaAutomaton) -> Poly:
    """Keep accepted cells and emit the polynomial over X1, X2, Y11, Y12, Y22."""
    n = table.n
    terms: dict[tuple[int, ...], int] = {}
    for key, value in table.cells.items():
        if not automaton.accept(key[0]):
            continue
        s = sum(key[1])
        if table.variant == "aggregated":
            for (e11, e12, e22), c in value.terms.items():
                exp = (s, n - s, e11, e12, e22)
                terms[exp] = terms.get(exp, 0) + c
        else:
            _, _, m11, m12, m22 = key
            exp = (s, n - s, sum(m11), sum(m12), sum(m22))
            terms[exp] = terms.get(exp, 0) + value
    return Poly(CANONICAL_VARS, terms)


def run(
    term: CwTerm,
    automaton: FormulaAutomaton | str = "true",
    variant: str = "aggregated",
    *,
    budget: float | None = None,
    trace: IO[str] | None = None,
    stats: RunStats | None = None,
) -> Poly:
    """Two-block polynomial of ``val(term)`` restricted to sets with the property."""
    if isinstance(automaton, str):
        automaton = make_automaton(automaton, cwexpr.width(term))
    stats = stats if stats is not None else RunStats()
    start = time.monotonic()
    deadline = start + budget if budget is not None else None
    table = build_table(term, automaton, variant, deadline=deadline, trace=trace, stats=stats)
    poly = table_to_poly(table, automaton)
    stats.seconds = time.monotonic() - start
    if trace is None:
        stats.max_coeff_bits = poly.max_coeff_bits()
    return poly


# -- specializations -------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    name: str
    automaton: str
    mapping: dict[str, str | int]
    vars: tuple[str, ...]


# The independence presets track the independent block as X1 rather than
# X2; swapping the two blocks exchanges X1/X2 and Y11/Y22 and fixes Y12.
PRESETS: dict[str, Preset] = {
    "ising": Preset("ising", "true", {"X1": "x", "X2": 1, "Y11": "z", "Y12": "y", "Y22": 1}, ("x", "y", "z")),
    "independence_ising": Preset(
        "independence_ising", "independent", {"X1": "x", "X2": 1, "Y11": 1, "Y12": "y", "Y22": 1}, ("x", "y")
    ),
    "dominating_ising": Preset(
        "dominating_ising", "dominating", {"X1": "x", "X2": 1, "Y11": "z", "Y12": "y", "Y22": 1}, ("x", "y", "z")
    ),
    "independence": Preset("independence", "independent", {"X1": "x", "X2": 1, "Y11": 1, "Y12": 1, "Y22": 1}, ("x",)),
    "domination": Preset("domination", "dominating", {"X1": "x", "X2": 1, "Y11": 1, "Y12": 1, "Y22": 1}, ("x",)),
}


def preset(p: Poly, name: str) -> Poly:
    try:
        spec = PRESETS[name]
    except KeyError:
        raise EngineError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    if p.vars != CANONICAL_VARS:
        raise EngineError(f"preset {name!r} expects variables {CANONICAL_VARS}, got {p.vars}")
    return substitute(p, spec.mapping, spec.vars)


def compute(
    term: CwTerm, name: str, variant: str = "aggregated", **kwargs
) -> Poly:
    """Run the engine with the preset's property and specialize the result."""
    spec = PRESETS[name]
    return preset(run(term, spec.automaton, variant, **kwargs), name)
