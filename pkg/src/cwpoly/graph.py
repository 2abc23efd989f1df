"""Simple graphs whose vertices carry a label in ``1..k``."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class KGraph:
    """A k-graph: vertex ids, undirected edges and a label per vertex.

    ``edges`` holds normalized ``(min, max)`` id pairs in sorted order.  Use
    :meth:`build` rather than the raw constructor; it validates and
    normalizes.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: Mapping[int, int]
    k: int
    _index: dict[int, int] = field(repr=False, compare=False)
    _adj: dict[int, frozenset[int]] = field(repr=False, compare=False)

    @classmethod
    def build(
        cls,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, int] | None = None,
        k: int | None = None,
    ) -> "KGraph":
        vs = tuple(sorted(vertices))
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex ids")
        vset = set(vs)
        norm: set[tuple[int, int]] = set()
        for u, v in edges:
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u}, {v}) has an unknown endpoint")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise GraphError(f"duplicate edge ({u}, {v})")
            norm.add(e)
        lab = {v: 1 for v in vs} if labels is None else {v: int(labels[v]) for v in vs}
        if labels is not None and set(labels) - vset:
            raise GraphError(f"labels given for unknown vertices {sorted(set(labels) - vset)}")
        top = max(lab.values(), default=1)
        if k is None:
            k = top
        if any(c < 1 or c > k for c in lab.values()):
            raise GraphError(f"labels must lie in 1..{k}")
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        return cls(
            vertices=vs,
            edges=tuple(sorted(norm)),
            labels=lab,
            k=k,
            _index={v: i for i, v in enumerate(vs)},
            _adj={v: frozenset(a) for v, a in adj.items()},
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, v: int) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def neighbors(self, v: int) -> frozenset[int]:
        self.index(v)
        return self._adj[v]

    def label_class(self, c: int) -> frozenset[int]:
        return frozenset(v for v in self.vertices if self.labels[v] == c)

    def relabeled(self, labels: Mapping[int, int] | None = None, k: int | None = None) -> "KGraph":
        return KGraph.build(self.vertices, self.edges, labels, k)

    def same_graph(self, other: "KGraph") -> bool:
        """Equal vertex and edge sets, labels ignored."""
        return self.vertices == other.vertices and self.edges == other.edges


def has_edge(g: KGraph, u: int, v: int) -> bool:
    g.index(u)
    g.index(v)
    return v in g._adj[u]


def _check_subset(g: KGraph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    bad = [v for v in s if v not in g._index]
    if bad:
        raise GraphError(f"subset contains unknown vertices {sorted(bad)}")
    return s


def partition_edge_counts(g: KGraph, s: Iterable[int]) -> tuple[int, int, int]:
    """Edges inside S, crossing S, and inside the complement of S."""
    s = _check_subset(g, s)
    e11 = e12 = e22 = 0
    for u, v in g.edges:
        inside = (u in s) + (v in s)
        if inside == 2:
            e11 += 1
        elif inside == 1:
            e12 += 1
        else:
            e22 += 1
    return e11, e12, e22


def is_independent(g: KGraph, s: Iterable[int]) -> bool:
    s = _check_subset(g, s)
    return not any(u in s and v in s for u, v in g.edges)


def is_dominating(g: KGraph, s: Iterable[int]) -> bool:
    s = _check_subset(g, s)
    return all(v in s or g._adj[v] & s for v in g.vertices)


def iso_count(g: KGraph) -> int:
    return sum(1 for v in g.vertices if not g._adj[v])


def degree_histogram(g: KGraph) -> dict[int, int]:
    return dict(sorted(Counter(len(g._adj[v]) for v in g.vertices).items()))


# -- common graphs ---------------------------------------------------------

def complete_graph(n: int) -> KGraph:
    return KGraph.build(range(1, n + 1), [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def complete_bipartite(a: int, b: int) -> KGraph:
    left = range(1, a + 1)
    right = range(a + 1, a + b + 1)
    return KGraph.build(range(1, a + b + 1), [(i, j) for i in left for j in right])


def path_graph(n: int) -> KGraph:
    return KGraph.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> KGraph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return KGraph.build(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def graphs_on(n: int):
    """Every labeled simple graph on vertices 1..n, one per edge subset."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        yield KGraph.build(range(1, n + 1), [p for b, p in enumerate(pairs) if mask >> b & 1])


# -- text format -----------------------------------------------------------

def parse_graph(text: str) -> KGraph:
    """Read ``n m``, then ``m`` lines ``u v``, then optionally ``labels l1 .. ln``."""
    lines = [(i + 1, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise GraphParseError("empty graph file", 1)
    no, head = lines[0]
    if len(head) != 2:
        raise GraphParseError("expected header 'n m'", no)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphParseError("header values must be integers", no) from None
    if n < 0 or m < 0:
        raise GraphParseError("negative count in header", no)
    if len(lines) < 1 + m:
        raise GraphParseError(f"expected {m} edge lines, found {len(lines) - 1}", lines[-1][0])
    seen: set[tuple[int, int]] = set()
    edges = []
    for no, toks in lines[1 : 1 + m]:
        if len(toks) != 2:
            raise GraphParseError("expected edge line 'u v'", no)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphParseError("edge endpoints must be integers", no) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"vertex out of range 1..{n}", no)
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphParseError(f"duplicate edge {u} {v}", no)
        seen.add(e)
        edges.append(e)
    labels = None
    rest = lines[1 + m :]
    if rest:
        no, toks = rest[0]
        if toks[0] != "labels" or len(rest) > 1:
            raise GraphParseError("unexpected trailing content", no)
        if len(toks) - 1 != n:
            raise GraphParseError(f"expected {n} labels, found {len(toks) - 1}", no)
        try:
            labels = {i + 1: int(x) for i, x in enumerate(toks[1:])}
        except ValueError:
            raise GraphParseError("labels must be integers", no) from None
        if any(c < 1 for c in labels.values()):
            raise GraphParseError("labels must be positive", no)
    return KGraph.build(range(1, n + 1), edges, labels)


def format_graph(g: KGraph) -> str:
    """Write ``g`` in the text format; vertex ids are renumbered 1..n by rank."""
    out = [f"{g.n} {g.m}"]
    out += [f"{g.index(u) + 1} {g.index(v) + 1}" for u, v in g.edges]
    if any(c != 1 for c in g.labels.values()):
        out.append("labels " + " ".join(str(g.labels[v]) for v in g.vertices))
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> KGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
