"""k-expressions: terms built from labeled singletons, disjoint union,
relabeling and edge creation.

Concrete syntax::

    v(id, label)      a single vertex
    U(t, t)           disjoint union
    r(p->q, t)        relabel every p-vertex to q
    e(p, q, t)        join every p-vertex to every q-vertex

Whitespace is free and ``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union as _U

from .graph import KGraph


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class Singleton:
    vertex: int
    label: int
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Union:
    left: "CwTerm"
    right: "CwTerm"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Recolor:
    p: int
    q: int
    child: "CwTerm"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class EdgeAdd:
    p: int
    q: int
    child: "CwTerm"
    span: Span | None = field(default=None, compare=False, repr=False)


CwTerm = _U[Singleton, Union, Recolor, EdgeAdd]


class TermError(ValueError):
    def __init__(self, message: str, span: Span | None = None):
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


def children(t: CwTerm) -> tuple[CwTerm, ...]:
    if isinstance(t, Union):
        return (t.left, t.right)
    if isinstance(t, (Recolor, EdgeAdd)):
        return (t.child,)
    return ()


def fold(t: CwTerm, visit: Callable[[CwTerm, list[Any]], Any]) -> Any:
    """Post-order fold without recursion; ``visit(node, child_results)``."""
    stack: list[tuple[CwTerm, bool]] = [(t, False)]
    results: list[Any] = []
    while stack:
        node, expanded = stack.pop()
        kids = children(node)
        if expanded or not kids:
            args = results[len(results) - len(kids):] if kids else []
            if kids:
                del results[len(results) - len(kids):]
            results.append(visit(node, args))
        else:
            stack.append((node, True))
            for kid in reversed(kids):
                stack.append((kid, False))
    return results[0]


def nodes_postorder(t: CwTerm) -> list[CwTerm]:
    out: list[CwTerm] = []
    fold(t, lambda node, _: out.append(node))
    return out


def width(t: CwTerm) -> int:
    def visit(node, kids):
        if isinstance(node, Singleton):
            return node.label
        own = max(node.p, node.q) if isinstance(node, (Recolor, EdgeAdd)) else 0
        return max([own, *kids])

    return fold(t, visit)


def vertex_ids(t: CwTerm) -> list[int]:
    return [n.vertex for n in nodes_postorder(t) if isinstance(n, Singleton)]


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<tok>->|[vUre]|\d+|[(),])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        if m.group("tok"):
            toks.append((m.group("tok"), pos))
        pos = m.end()
    return toks


def _span(text: str, start: int, end: int) -> Span:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return Span(start, end, line, col)


class _Parser:
    def __init__(self, text: str, k: int | None):
        self.text = text
        self.k = k
        self.toks = _tokenize(text)
        self.i = 0
        self.seen: dict[int, Span] = {}

    def _peek(self) -> tuple[str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("<end>", len(self.text))

    def _error(self, msg: str, pos: int | None = None) -> TermError:
        if pos is None:
            pos = self._peek()[1]
        return TermError(msg, _span(self.text, pos, pos + 1))

    def _expect(self, want: str) -> int:
        tok, pos = self._peek()
        if tok != want:
            raise self._error(f"expected {want!r}, found {tok!r}")
        self.i += 1
        return pos

    def _int(self) -> tuple[int, int]:
        tok, pos = self._peek()
        if not tok.isdigit():
            raise self._error(f"expected integer, found {tok!r}")
        self.i += 1
        return int(tok), pos

    def _label(self) -> int:
        value, pos = self._int()
        if value < 1 or (self.k is not None and value > self.k):
            bound = f"1..{self.k}" if self.k is not None else ">= 1"
            raise self._error(f"label {value} out of range {bound}", pos)
        return value

    def term(self) -> CwTerm:
        tok, start = self._peek()
        if tok not in ("v", "U", "r", "e"):
            raise self._error(f"expected term, found {tok!r}")
        self.i += 1
        self._expect("(")
        if tok == "v":
            vid, vpos = self._int()
            if vid < 1:
                raise self._error("vertex ids must be positive", vpos)
            self._expect(",")
            label = self._label()
            end = self._expect(")") + 1
            span = _span(self.text, start, end)
            if vid in self.seen:
                raise TermError(f"duplicate vertex id {vid} (first at {self.seen[vid]})", span)
            self.seen[vid] = span
            return Singleton(vid, label, span)
        if tok == "U":
            left = self.term()
            self._expect(",")
            right = self.term()
            end = self._expect(")") + 1
            return Union(left, right, _span(self.text, start, end))
        p = self._label()
        self._expect("->" if tok == "r" else ",")
        q = self._label()
        if p == q:
            raise self._error("p and q must differ", start)
        self._expect(",")
        child = self.term()
        end = self._expect(")") + 1
        cls = Recolor if tok == "r" else EdgeAdd
        return cls(p, q, child, _span(self.text, start, end))


def parse_term(text: str, k: int | None = None) -> CwTerm:
    parser = _Parser(text, k)
    t = parser.term()
    tok, _ = parser._peek()
    if tok != "<end>":
        raise parser._error(f"trailing input {tok!r}")
    return t


def read_term(path: str | Path, k: int | None = None) -> CwTerm:
    return parse_term(Path(path).read_text(encoding="utf-8"), k)


def render_term(t: CwTerm) -> str:
    def visit(node, kids):
        if isinstance(node, Singleton):
            return f"v({node.vertex},{node.label})"
        if isinstance(node, Union):
            return f"U({kids[0]}, {kids[1]})"
        if isinstance(node, Recolor):
            return f"r({node.p}->{node.q}, {kids[0]})"
        return f"e({node.p},{node.q}, {kids[0]})"

    return fold(t, visit)


# -- semantics -------------------------------------------------------------

class _Replay:
    """Mutable k-graph state used while evaluating a term bottom-up."""

    def __init__(self):
        self.classes: dict[int, set[int]] = {}
        self.edges: set[tuple[int, int]] = set()

    def absorb(self, other: "_Replay") -> "_Replay":
        for c, vs in other.classes.items():
            self.classes.setdefault(c, set()).update(vs)
        self.edges |= other.edges
        return self


def _replay(t: CwTerm, on_edge_add: Callable[[EdgeAdd, _Replay], None] | None = None) -> _Replay:
    def visit(node, kids):
        if isinstance(node, Singleton):
            st = _Replay()
            st.classes[node.label] = {node.vertex}
            return st
        if isinstance(node, Union):
            a, b = kids
            if len(a.edges) + sum(map(len, a.classes.values())) < len(b.edges) + sum(map(len, b.classes.values())):
                a, b = b, a
            return a.absorb(b)
        st = kids[0]
        if isinstance(node, Recolor):
            moved = st.classes.pop(node.p, set())
            if moved:
                st.classes.setdefault(node.q, set()).update(moved)
            return st
        if on_edge_add is not None:
            on_edge_add(node, st)
        for u in st.classes.get(node.p, ()):
            for v in st.classes.get(node.q, ()):
                st.edges.add((min(u, v), max(u, v)))
        return st

    return fold(t, visit)


def _check_distinct(t: CwTerm) -> None:
    seen: set[int] = set()
    for node in nodes_postorder(t):
        if isinstance(node, Singleton):
            if node.vertex in seen:
                raise TermError(f"duplicate vertex id {node.vertex}", node.span)
            seen.add(node.vertex)
        elif isinstance(node, (Recolor, EdgeAdd)) and node.p == node.q:
            raise TermError("p and q must differ", node.span)


def evaluate(t: CwTerm) -> KGraph:
    _check_distinct(t)
    st = _replay(t)
    labels = {v: c for c, vs in st.classes.items() for v in vs}
    return KGraph.build(labels, st.edges, labels, k=width(t))


@dataclass(frozen=True)
class ValidationReport:
    width: int
    irredundant: bool
    redundant_sites: tuple[Span | None, ...]
    vertex_count: int
    edge_count: int


def validate(t: CwTerm) -> ValidationReport:
    _check_distinct(t)
    sites: list[Span | None] = []

    def check(node: EdgeAdd, st: _Replay) -> None:
        ps = st.classes.get(node.p, ())
        qs = st.classes.get(node.q, ())
        if any((min(u, v), max(u, v)) in st.edges for u in ps for v in qs):
            sites.append(node.span)

    st = _replay(t, check)
    return ValidationReport(
        width=width(t),
        irredundant=not sites,
        redundant_sites=tuple(sites),
        vertex_count=sum(len(vs) for vs in st.classes.values()),
        edge_count=len(st.edges),
    )


# -- family builders -------------------------------------------------------

def _balanced_union(parts: Sequence[CwTerm]) -> CwTerm:
    if not parts:
        raise ValueError("cannot build a union of zero terms")
    layer = list(parts)
    while len(layer) > 1:
        nxt = [Union(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def _join(a: CwTerm, b: CwTerm) -> CwTerm:
    # both sides entirely label 1
    return Recolor(2, 1, EdgeAdd(1, 2, Union(a, Recolor(1, 2, b))))


def build_clique(n: int) -> CwTerm:
    if n < 1:
        raise ValueError("n must be >= 1")
    t: CwTerm = Singleton(1, 1)
    for i in range(2, n + 1):
        t = Recolor(2, 1, EdgeAdd(1, 2, Union(t, Singleton(i, 2))))
    return t


def build_biclique(a: int, b: int) -> CwTerm:
    """K_{a,b} with parts ``1..a`` and ``a+1..a+b``."""
    if a < 1 or b < 1:
        raise ValueError("both sides must be non-empty")
    left = _balanced_union([Singleton(i, 1) for i in range(1, a + 1)])
    right = _balanced_union([Singleton(i, 2) for i in range(a + 1, a + b + 1)])
    return EdgeAdd(1, 2, Union(left, right))


def build_path(n: int) -> CwTerm:
    # labels: 1 finished, 2 current endpoint, 3 fresh vertex
    if n < 1:
        raise ValueError("n must be >= 1")
    t: CwTerm = Singleton(1, 2)
    for i in range(2, n + 1):
        t = Recolor(3, 2, Recolor(2, 1, EdgeAdd(2, 3, Union(t, Singleton(i, 3)))))
    return t


def build_cycle(n: int) -> CwTerm:
    # labels: 1 finished, 2 current endpoint, 3 fresh vertex, 4 first vertex
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    t: CwTerm = Recolor(3, 2, EdgeAdd(4, 3, Union(Singleton(1, 4), Singleton(2, 3))))
    for i in range(3, n + 1):
        t = Recolor(3, 2, Recolor(2, 1, EdgeAdd(2, 3, Union(t, Singleton(i, 3)))))
    return EdgeAdd(2, 4, t)


Cotree = _U[int, tuple[str, Sequence["Cotree"]]]


def build_cograph(cotree: Cotree) -> CwTerm:
    """Width-2 term for a cotree.

    A cotree is a vertex id (leaf) or ``("union" | "join", [children])``.
    Every vertex of the result carries label 1.
    """
    if isinstance(cotree, int):
        return Singleton(cotree, 1)
    kind, kids = cotree
    if not kids:
        raise ValueError(f"cotree node {kind!r} has no children")
    parts = [build_cograph(c) for c in kids]
    if kind == "union":
        return _balanced_union(parts)
    if kind == "join":
        t = parts[0]
        for p in parts[1:]:
            t = _join(t, p)
        return t
    raise ValueError(f"unknown cotree node kind {kind!r}")


def parse_cotree(text: str) -> Cotree:
    """Read ``join(1, union(2, 3))``-style cotrees (``J``/``S`` also accepted)."""
    toks = re.findall(r"join|union|J|S|\d+|[(),]|\S", text)
    pos = 0

    def node() -> Cotree:
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of cotree")
        tok = toks[pos]
        pos += 1
        if tok.isdigit():
            return int(tok)
        kind = {"J": "join", "S": "union"}.get(tok, tok)
        if kind not in ("join", "union"):
            raise ValueError(f"unexpected token {tok!r} in cotree")
        if pos >= len(toks) or toks[pos] != "(":
            raise ValueError(f"expected '(' after {tok}")
        pos += 1
        kids = [node()]
        while pos < len(toks) and toks[pos] == ",":
            pos += 1
            kids.append(node())
        if pos >= len(toks) or toks[pos] != ")":
            raise ValueError("expected ')' in cotree")
        pos += 1
        return (kind, kids)

    tree = node()
    if pos != len(toks):
        raise ValueError(f"trailing input in cotree: {toks[pos]!r}")
    return tree


def build_fallback(g: KGraph) -> CwTerm:
    """Give every vertex its own label and create each edge separately."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    label = {v: i + 1 for i, v in enumerate(g.vertices)}
    t = _balanced_union([Singleton(v, label[v]) for v in g.vertices])
    for u, v in g.edges:
        t = EdgeAdd(label[u], label[v], t)
    return t
