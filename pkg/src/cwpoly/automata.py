"""Finite-state trackers for the vertex-set property being counted.

Each automaton follows one tracked set S (the first block of the
two-block partition) through a k-expression.  Its state summarises
exactly what the property needs to know about ``(G, S)`` so that the
state after a union, relabel or edge creation is a function of the
states before it.  ``accept`` decides the property at the root.

Edge creation may also look at which label classes meet S and which meet
its complement, passed in as an :class:`OccupancySignature`.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from functools import lru_cache

DEAD = "dead"

State = Hashable


@dataclass(frozen=True)
class OccupancySignature:
    """Per label ``c`` (index ``c - 1``): does S meet R_c, does V\\S meet R_c."""

    s_nonempty: tuple[bool, ...]
    comp_nonempty: tuple[bool, ...]

    @classmethod
    def from_counts(cls, d: Sequence[int], r: Sequence[int]) -> "OccupancySignature":
        return _signature(tuple(d), tuple(r))

    def in_s(self, c: int) -> bool:
        return self.s_nonempty[c - 1]

    def in_complement(self, c: int) -> bool:
        return self.comp_nonempty[c - 1]


@lru_cache(maxsize=1 << 16)
def _signature(d: tuple[int, ...], r: tuple[int, ...]) -> OccupancySignature:
    return OccupancySignature(tuple(x > 0 for x in d), tuple(y - x > 0 for x, y in zip(d, r)))


class FormulaAutomaton(ABC):
    name: str

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k

    @abstractmethod
    def init(self, label: int, in_s: bool) -> State: ...

    @abstractmethod
    def join(self, a: State, b: State) -> State: ...

    @abstractmethod
    def recolor(self, a: State, p: int, q: int) -> State: ...

    @abstractmethod
    def edge_add(self, a: State, p: int, q: int, sig: OccupancySignature) -> State: ...

    @abstractmethod
    def accept(self, a: State) -> bool: ...

    def is_dead(self, a: State) -> bool:
        return a == DEAD

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k={self.k})"


class TrueAutomaton(FormulaAutomaton):
    """No constraint: every subset is counted."""

    name = "true"
    STATE = "any"

    def init(self, label, in_s):
        return self.STATE

    def join(self, a, b):
        return DEAD if DEAD in (a, b) else self.STATE

    def recolor(self, a, p, q):
        return a

    def edge_add(self, a, p, q, sig):
        return a

    def accept(self, a):
        return a != DEAD


class IndependentAutomaton(FormulaAutomaton):
    """S must contain no edge."""

    name = "independent"
    OK = "ok"

    def init(self, label, in_s):
        return self.OK

    def join(self, a, b):
        return DEAD if DEAD in (a, b) else self.OK

    def recolor(self, a, p, q):
        return a

    def edge_add(self, a, p, q, sig):
        if a == DEAD or (sig.in_s(p) and sig.in_s(q)):
            return DEAD
        return self.OK

    def accept(self, a):
        return a == self.OK


class DominatingAutomaton(FormulaAutomaton):
    """Every vertex outside S needs a neighbour in S.

    The state is the frozenset of labels that still hold an undominated
    vertex outside S.
    """

    name = "dominating"

    def init(self, label, in_s):
        return frozenset() if in_s else frozenset((label,))

    def join(self, a, b):
        if DEAD in (a, b):
            return DEAD
        return a | b

    def recolor(self, a, p, q):
        if a == DEAD or p not in a:
            return a
        return (a - {p}) | {q}

    def edge_add(self, a, p, q, sig):
        if a == DEAD:
            return a
        drop = set()
        if sig.in_s(q):
            drop.add(p)
        if sig.in_s(p):
            drop.add(q)
        return a - drop if drop & a else a

    def accept(self, a):
        return a != DEAD and not a


AUTOMATA: dict[str, type[FormulaAutomaton]] = {
    "true": TrueAutomaton,
    "independent": IndependentAutomaton,
    "dominating": DominatingAutomaton,
}


def true_automaton(k: int) -> TrueAutomaton:
    return TrueAutomaton(k)


def independent_automaton(k: int) -> IndependentAutomaton:
    return IndependentAutomaton(k)


def dominating_automaton(k: int) -> DominatingAutomaton:
    return DominatingAutomaton(k)


def make_automaton(name: str, k: int) -> FormulaAutomaton:
    try:
        return AUTOMATA[name](k)
    except KeyError:
        raise ValueError(f"unknown property {name!r}; choose from {sorted(AUTOMATA)}") from None
