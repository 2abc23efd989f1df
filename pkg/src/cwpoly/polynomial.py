"""Sparse multivariate polynomials with exact integer coefficients.

A :class:`Poly` is a fixed, ordered list of variable names together with a
map from exponent tuples to nonzero Python ints.  Values are treated as
immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class VariableMismatch(ValueError):
    pass


class Poly:
    __slots__ = ("vars", "_terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars):
                raise ValueError(f"exponent {exp} has arity {len(exp)}, expected {len(self.vars)}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exponent, int]) -> "Poly":
        # trusted constructor: caller guarantees arity and no zero coefficients
        p = cls.__new__(cls)
        p.vars = vars
        p._terms = terms
        return p

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars: Sequence[str], c: int) -> "Poly":
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): int(c)} if c else {})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Sequence[int], c: int = 1) -> "Poly":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise VariableMismatch(f"unknown variable {name!r}")
        return cls._raw(vars, {exp: 1})

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.vars}, {self.to_text()!r})"

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "Poly") -> "Poly":
        return add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return add(self, Poly._raw(other.vars, {e: -c for e, c in other._terms.items()}))

    def __mul__(self, other: "Poly") -> "Poly":
        return mul(self, other)

    def coeff(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._terms.values()), default=0)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly":
        terms: dict[Exponent, int] = {}
        for t in obj["terms"]:
            exp = tuple(t["exp"])
            if exp in terms:
                raise ValueError(f"duplicate exponent vector {list(exp)}")
            terms[exp] = int(t["coeff"])
        return cls(obj["vars"], terms)

    @classmethod
    def loads(cls, text: str) -> "Poly":
        return cls.from_json(json.loads(text))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        # highest total degree last, so 1 + 2*x*y + x^2*z reads naturally
        order = sorted(self._terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))
        parts = []
        for exp, c in order:
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = f"{abs(c)}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def add(p: Poly, q: Poly) -> Poly:
    p._check(q)
    terms = dict(p._terms)
    for e, c in q._terms.items():
        s = terms.get(e, 0) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return Poly._raw(p.vars, terms)


def mul(p: Poly, q: Poly) -> Poly:
    p._check(q)
    if len(p._terms) > len(q._terms):
        p, q = q, p
    terms: dict[Exponent, int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return Poly._raw(p.vars, {e: c for e, c in terms.items() if c})


def mono_mul(p: Poly, exp: Sequence[int], c: int = 1) -> Poly:
    """Multiply ``p`` by the single term ``c * prod(var**exp)``."""
    exp = tuple(exp)
    if len(exp) != len(p.vars):
        raise VariableMismatch(f"exponent arity {len(exp)} does not match {p.vars}")
    if any(e < 0 for e in exp):
        raise ValueError(f"negative exponent in {exp}")
    if c == 0:
        return Poly.zero(p.vars)
    return Poly._raw(
        p.vars,
        {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in p._terms.items()},
    )


def poly_sum(polys: Iterable[Poly], vars: Sequence[str]) -> Poly:
    terms: dict[Exponent, int] = {}
    vars = tuple(vars)
    for p in polys:
        if p.vars != vars:
            raise VariableMismatch(f"variable lists differ: {p.vars} vs {vars}")
        for e, c in p._terms.items():
            terms[e] = terms.get(e, 0) + c
    return Poly._raw(vars, {e: c for e, c in terms.items() if c})


def evaluate(p: Poly, assignment: Mapping[str, int]) -> int:
    missing = [v for v in p.vars if v not in assignment]
    if missing:
        raise KeyError(f"assignment missing variables {missing}")
    values = [assignment[v] for v in p.vars]
    total = 0
    for exp, c in p._terms.items():
        term = c
        for x, e in zip(values, exp):
            if e:
                term *= x**e
        total += term
    return total


def substitute(p: Poly, mapping: Mapping[str, str | int], new_vars: Sequence[str] | None = None) -> Poly:
    """Rename, merge, or fix variables.

    Each variable of ``p`` maps either to a name in the new variable list
    (several may map to the same name) or to an integer constant.  The new
    variable list defaults to the mapped names in first-appearance order.
    """
    missing = [v for v in p.vars if v not in mapping]
    if missing:
        raise KeyError(f"substitution missing variables {missing}")
    if new_vars is None:
        seen: list[str] = []
        for v in p.vars:
            t = mapping[v]
            if isinstance(t, str) and t not in seen:
                seen.append(t)
        new_vars = seen
    new_vars = tuple(new_vars)
    pos = {v: i for i, v in enumerate(new_vars)}
    plan = []
    for v in p.vars:
        t = mapping[v]
        if isinstance(t, str):
            if t not in pos:
                raise VariableMismatch(f"target {t!r} not in {new_vars}")
            plan.append((pos[t], None))
        else:
            plan.append((None, int(t)))
    terms: dict[Exponent, int] = {}
    for exp, c in p._terms.items():
        out = [0] * len(new_vars)
        for (i, const), e in zip(plan, exp):
            if i is not None:
                out[i] += e
            elif e:
                c *= const**e
        if c:
            key = tuple(out)
            terms[key] = terms.get(key, 0) + c
    return Poly._raw(new_vars, {e: c for e, c in terms.items() if c})


def max_degree(p: Poly, var: str) -> int:
    if var not in p.vars:
        raise VariableMismatch(f"unknown variable {var!r}")
    i = p.vars.index(var)
    return max((e[i] for e in p._terms), default=0)


def coefficients_in(p: Poly, var: str) -> dict[int, Poly]:
    """Group ``p`` by powers of ``var``; each value omits ``var``."""
    i = p.vars.index(var)
    rest = p.vars[:i] + p.vars[i + 1 :]
    groups: dict[int, dict[Exponent, int]] = {}
    for exp, c in p._terms.items():
        groups.setdefault(exp[i], {})[exp[:i] + exp[i + 1 :]] = c
    return {d: Poly._raw(rest, t) for d, t in sorted(groups.items())}
