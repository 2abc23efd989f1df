"""Exact two-block Ising graph polynomials by dynamic programming over
clique-width expressions, with a brute-force oracle for cross-checking."""

from .cwexpr import parse_term, render_term, evaluate, validate
from .engine import run, compute, preset, PRESETS
from .graph import KGraph
from .oracle import brute_force
from .polynomial import Poly

__all__ = [
    "KGraph", "Poly", "PRESETS", "brute_force", "compute", "evaluate",
    "parse_term", "preset", "render_term", "run", "validate",
]
