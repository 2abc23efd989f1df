"""Time the aggregated engine on bounded-width families and fit log-time vs log-n.

    python scripts/scaling.py --out scaling.csv
"""

import argparse
import csv
import sys

from cwpoly import cli

RUNS = [
    ("biclique", range(4, 25, 4), "ising", "aggregated"),
    ("path", range(10, 61, 10), "dominating_ising", "aggregated"),
    ("cycle", range(10, 61, 10), "independence_ising", "aggregated"),
    ("clique", range(5, 31, 5), "ising", "aggregated"),
    # width grows with n here, so the reference engine blows up
    ("fallback", range(4, 10), "ising", "reference"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="-")
    ap.add_argument("--budget-secs", type=float, default=60.0)
    args = ap.parse_args()

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.DictWriter(fh, fieldnames=cli.BENCH_FIELDS + ["slope"], lineterminator="\n")
    writer.writeheader()
    for family, params, poly, variant in RUNS:
        rows = cli.run_bench(family, params, poly, variant, args.budget_secs)
        slope = cli.fit_slope(rows)
        for row in rows:
            writer.writerow({**row, "slope": "" if slope is None else f"{slope:.3f}"})
        print(f"{family:9s} {variant:10s} slope={slope}", file=sys.stderr)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
