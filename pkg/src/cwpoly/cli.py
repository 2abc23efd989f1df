"""Command line front end.

    cwpoly compute  (--term F | --family SPEC | --graph F) [--poly NAME] [--engine E]
    cwpoly oracle   (--graph F | --term F | --family SPEC) [--poly NAME]
    cwpoly check    (--term F | --family SPEC | --graph F | --corpus N) [--poly NAME]
    cwpoly bench    --family NAME --range START:STOP[:STEP]
    cwpoly expr parse|validate FILE
    cwpoly expr build --family SPEC [--graph F]

Polynomial JSON goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import cwexpr, engine, graph, oracle
from .cwexpr import CwTerm, TermError
from .engine import BudgetExceeded, PRESETS, RedundantEdgeError
from .graph import GraphError
from .polynomial import Poly, max_degree

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_REDUNDANT = 3
EXIT_BUDGET = 4

PROPERTIES = ("true", "independent", "dominating")
POLY_NAMES = tuple(PRESETS) + PROPERTIES
FAMILIES = ("clique", "biclique", "path", "cycle", "cograph", "fallback")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    term: str | None = None
    family: str | None = None
    poly: str = "ising"
    engine: str = "aggregated"
    format: str = "json"
    out: str | None = None
    budget_secs: float = 600.0
    oracle_max_n: int = oracle.DEFAULT_MAX_N

    def __post_init__(self):
        if self.budget_secs <= 0:
            raise UsageError("--budget-secs must be positive")


def property_of(name: str) -> str:
    if name in PRESETS:
        return PRESETS[name].automaton
    if name in PROPERTIES:
        return name
    raise UsageError(f"unknown polynomial {name!r}; choose from {', '.join(POLY_NAMES)}")


def specialize(p: Poly, name: str) -> Poly:
    return engine.preset(p, name) if name in PRESETS else p


def parse_family(spec: str, g: graph.KGraph | None = None) -> CwTerm:
    """Build a term from ``name:args``, e.g. ``biclique:3,3`` or ``cograph:join(1,union(2,3))``."""
    name, _, args = spec.partition(":")

    def ints(count: int) -> list[int]:
        try:
            vals = [int(a) for a in args.split(",")] if args else []
        except ValueError:
            raise UsageError(f"family {name!r} expects integer arguments, got {args!r}") from None
        if len(vals) != count:
            raise UsageError(f"family {name!r} expects {count} argument(s)")
        return vals

    try:
        if name == "clique":
            return cwexpr.build_clique(*ints(1))
        if name == "biclique":
            return cwexpr.build_biclique(*ints(2))
        if name == "path":
            return cwexpr.build_path(*ints(1))
        if name == "cycle":
            return cwexpr.build_cycle(*ints(1))
        if name == "cograph":
            return cwexpr.build_cograph(cwexpr.parse_cotree(args))
        if name == "fallback":
            if g is None:
                raise UsageError("family 'fallback' needs --graph")
            return cwexpr.build_fallback(g)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad family spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def load_term(cfg: RunConfig) -> CwTerm:
    sources = [s for s in (cfg.term, cfg.family) if s]
    if len(sources) > 1:
        raise UsageError("give exactly one of --term, --family, --graph")
    g = graph.read_graph(cfg.graph) if cfg.graph else None
    if cfg.term:
        if g is not None:
            raise UsageError("give exactly one of --term, --family, --graph")
        return cwexpr.read_term(cfg.term)
    if cfg.family:
        return parse_family(cfg.family, g)
    if g is not None:
        return cwexpr.build_fallback(g)
    raise UsageError("no input: give --term, --family or --graph")


def load_graph(cfg: RunConfig) -> graph.KGraph:
    if cfg.graph and not cfg.family:
        if cfg.term:
            raise UsageError("give exactly one of --term, --family, --graph")
        return graph.read_graph(cfg.graph)
    return cwexpr.evaluate(load_term(cfg))


def result_json(p: Poly, *, name: str, source: str, n: int, width: int | None) -> str:
    doc = p.to_json()
    doc.update(
        poly=name,
        engine=source,
        n=n,
        width=width,
        max_degree={v: max_degree(p, v) for v in p.vars},
    )
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit(cfg: RunConfig, p: Poly, source: str, n: int, width: int | None) -> None:
    if cfg.format == "text":
        text = p.to_text() + "\n"
    else:
        text = result_json(p, name=cfg.poly, source=source, n=n, width=width)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def log(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands --------------------------------------------------------------

def cmd_compute(cfg: RunConfig, trace: str | None = None) -> int:
    prop = property_of(cfg.poly)
    term = load_term(cfg)
    report = cwexpr.validate(term)
    if cfg.engine == "aggregated" and not report.irredundant:
        log(f"error: redundant edge creation at {', '.join(map(str, report.redundant_sites))}; "
            "use --engine reference")
        return EXIT_REDUNDANT
    stats = engine.RunStats()
    trace_fh = open(trace, "w", encoding="utf-8") if trace else None
    try:
        raw = engine.run(term, prop, cfg.engine, budget=cfg.budget_secs, trace=trace_fh, stats=stats)
    finally:
        if trace_fh:
            trace_fh.close()
    log(f"width={report.width} n={report.vertex_count} m={report.edge_count} engine={cfg.engine} "
        f"nodes={stats.nodes} peak_cells={stats.peak_cells} max_coeff_bits={stats.max_coeff_bits} "
        f"seconds={stats.seconds:.3f}")
    emit(cfg, specialize(raw, cfg.poly), cfg.engine, report.vertex_count, report.width)
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    prop = property_of(cfg.poly)
    g = load_graph(cfg)
    res = oracle.brute_force(g, prop, cfg.oracle_max_n)
    log(f"n={g.n} m={g.m} satisfying={res.satisfying_count}")
    emit(cfg, specialize(res.poly, cfg.poly), "oracle", g.n, None)
    return EXIT_OK


def poly_diff(engine_poly: Poly, oracle_poly: Poly) -> dict:
    a = set(engine_poly.items())
    b = set(oracle_poly.items())
    fmt = lambda ts: [{"exp": list(e), "coeff": str(c)} for e, c in sorted(ts)]
    return {"vars": list(engine_poly.vars), "only_engine": fmt(a - b), "only_oracle": fmt(b - a)}


def check_term(term: CwTerm, props, engines, max_n: int, out=None) -> bool:
    g = cwexpr.evaluate(term)
    ok = True
    for prop in props:
        want = oracle.brute_force(g, prop, max_n).poly
        for variant in engines:
            got = engine.run(term, prop, variant)
            if got != want:
                ok = False
                diff = poly_diff(got, want)
                diff.update(property=prop, engine=variant, term=cwexpr.render_term(term))
                (out or sys.stdout).write(json.dumps(diff, sort_keys=True) + "\n")
    return ok


def cmd_check(cfg: RunConfig, corpus: int | None = None, engines=None) -> int:
    props = (property_of(cfg.poly),) if cfg.poly else PROPERTIES
    engines = engines or engine.VARIANTS
    if corpus is not None:
        terms = (cwexpr.build_fallback(g) for n in range(1, corpus + 1) for g in graph.graphs_on(n))
    else:
        terms = [load_term(cfg)]
    count = 0
    ok = True
    for term in terms:
        if "aggregated" in engines and not cwexpr.validate(term).irredundant:
            log("error: redundant term cannot be checked with the aggregated engine")
            return EXIT_REDUNDANT
        ok &= check_term(term, props, engines, cfg.oracle_max_n)
        count += 1
    log(f"checked {count} term(s), properties={','.join(props)}, engines={','.join(engines)}: "
        f"{'ok' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def parse_range(text: str) -> range:
    parts = text.split(":")
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use START:STOP[:STEP]") from None
    if len(nums) == 2:
        start, stop, step = nums[0], nums[1], 1
    elif len(nums) == 3:
        start, stop, step = nums
    else:
        raise UsageError(f"bad range {text!r}; use START:STOP[:STEP]")
    if step <= 0:
        raise UsageError("range step must be positive")
    return range(start, stop + 1, step)


def bench_term(family: str, n: int) -> CwTerm:
    # one integer parameter per family; bicliques are balanced, fallback uses C_n
    if family == "biclique":
        return cwexpr.build_biclique(n, n)
    if family == "fallback":
        return cwexpr.build_fallback(graph.cycle_graph(n))
    if family in ("clique", "path", "cycle"):
        return parse_family(f"{family}:{n}")
    raise UsageError(f"bench supports clique, biclique, path, cycle, fallback; got {family!r}")


BENCH_FIELDS = ["family", "param", "n", "k", "engine", "poly", "wall_time", "peak_cells", "max_coeff_bits", "status"]


def run_bench(family: str, params: range, poly: str, variant: str, budget: float, repeat: int = 3):
    prop = property_of(poly)
    rows = []
    for param in params:
        term = bench_term(family, param)
        report = cwexpr.validate(term)
        row = dict(family=family, param=param, n=report.vertex_count, k=report.width, engine=variant, poly=poly)
        best = math.inf
        stats = engine.RunStats()
        try:
            for _ in range(max(1, repeat)):
                stats = engine.RunStats()
                t0 = time.perf_counter()
                engine.run(term, prop, variant, budget=budget, stats=stats)
                best = min(best, time.perf_counter() - t0)
            row.update(wall_time=f"{best:.6f}", peak_cells=stats.peak_cells,
                       max_coeff_bits=stats.max_coeff_bits, status="ok")
        except BudgetExceeded:
            row.update(wall_time="", peak_cells=stats.peak_cells, max_coeff_bits="", status="budget")
        rows.append(row)
    return rows


def fit_slope(rows) -> float | None:
    pts = [(math.log(r["n"]), math.log(float(r["wall_time"])))
           for r in rows if r["status"] == "ok" and float(r["wall_time"]) > 0 and r["n"] > 0]
    if len({x for x, _ in pts}) < 2:
        return None
    return statistics.linear_regression([x for x, _ in pts], [y for _, y in pts]).slope


def cmd_bench(cfg: RunConfig, range_text: str, repeat: int = 3) -> int:
    if not cfg.family:
        raise UsageError("bench needs --family")
    rows = run_bench(cfg.family, parse_range(range_text), cfg.poly, cfg.engine, cfg.budget_secs, repeat)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if cfg.out:
        Path(cfg.out).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    slope = fit_slope(rows)
    log("slope: n/a" if slope is None else f"slope: {slope:.3f} (log wall_time vs log n)")
    return EXIT_OK


def cmd_expr(args, cfg: RunConfig) -> int:
    if args.action == "parse":
        sys.stdout.write(cwexpr.render_term(cwexpr.read_term(args.file)) + "\n")
    elif args.action == "validate":
        rep = cwexpr.validate(cwexpr.read_term(args.file))
        sys.stdout.write(json.dumps({
            "width": rep.width,
            "irredundant": rep.irredundant,
            "redundant_sites": [str(s) for s in rep.redundant_sites],
            "vertex_count": rep.vertex_count,
            "edge_count": rep.edge_count,
        }, sort_keys=True, indent=2) + "\n")
    else:
        if not cfg.family:
            raise UsageError("expr build needs --family")
        g = graph.read_graph(cfg.graph) if cfg.graph else None
        text = cwexpr.render_term(parse_family(cfg.family, g)) + "\n"
        if cfg.out:
            Path(cfg.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------

def _add_io(p: argparse.ArgumentParser, poly_default: str | None = "ising") -> None:
    p.add_argument("--graph", help="graph file (n m / edges / optional labels)")
    p.add_argument("--term", help="k-expression file")
    p.add_argument("--family", help="family spec, e.g. biclique:3,3 or path:10")
    p.add_argument("--poly", default=poly_default, choices=POLY_NAMES,
                   help="preset (specialized) or property name (raw X1,X2,Y11,Y12,Y22 polynomial)")
    p.add_argument("--format", default="json", choices=("json", "text"))
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--budget-secs", type=float, default=600.0)
    p.add_argument("--oracle-max-n", type=int, default=oracle.DEFAULT_MAX_N)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cwpoly", description="Ising-type graph polynomials over clique-width expressions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="run the dynamic program")
    _add_io(p)
    p.add_argument("--engine", default="aggregated", choices=engine.VARIANTS)
    p.add_argument("--trace", help="write per-node JSON lines here")

    p = sub.add_parser("oracle", help="brute-force over all vertex subsets")
    _add_io(p)

    p = sub.add_parser("check", help="compare engine output with the oracle")
    _add_io(p, poly_default=None)
    p.add_argument("--engine", default="both", choices=engine.VARIANTS + ("both",))
    p.add_argument("--corpus", type=int, metavar="N", help="check fallback terms of every graph on <= N vertices")

    p = sub.add_parser("bench", help="time a family over a parameter range, CSV output")
    _add_io(p)
    p.add_argument("--engine", default="aggregated", choices=engine.VARIANTS)
    p.add_argument("--range", dest="range_text", required=True, help="START:STOP[:STEP], inclusive")
    p.add_argument("--repeat", type=int, default=3, help="report the best of this many runs")

    p = sub.add_parser("expr", help="parse, validate or build k-expressions")
    p.add_argument("action", choices=("parse", "validate", "build"))
    p.add_argument("file", nargs="?")
    p.add_argument("--family")
    p.add_argument("--graph")
    p.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            graph=getattr(args, "graph", None),
            term=getattr(args, "term", None),
            family=getattr(args, "family", None),
            poly=getattr(args, "poly", "ising"),
            engine=getattr(args, "engine", "aggregated"),
            format=getattr(args, "format", "json"),
            out=getattr(args, "out", None),
            budget_secs=getattr(args, "budget_secs", 600.0),
            oracle_max_n=getattr(args, "oracle_max_n", oracle.DEFAULT_MAX_N),
        )
        if args.command == "compute":
            return cmd_compute(cfg, args.trace)
        if args.command == "oracle":
            return cmd_oracle(cfg)
        if args.command == "check":
            engines = engine.VARIANTS if args.engine == "both" else (args.engine,)
            return cmd_check(cfg, args.corpus, engines)
        if args.command == "bench":
            return cmd_bench(cfg, args.range_text, args.repeat)
        if args.action in ("parse", "validate") and not args.file:
            raise UsageError(f"expr {args.action} needs a FILE")
        return cmd_expr(args, cfg)
    except RedundantEdgeError as exc:
        log(f"error: {exc}")
        return EXIT_REDUNDANT
    except BudgetExceeded as exc:
        log(f"error: {exc}")
        return EXIT_BUDGET
    except (UsageError, TermError, GraphError, oracle.OracleTooLarge, OSError) as exc:
        log(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
