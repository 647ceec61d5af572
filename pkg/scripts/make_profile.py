"""Performance profile table from one or more runner CSV files.

Repetitions of a cell are averaged, then each algorithm-backend pair is
compared against the per-instance best.  Prints the fraction of instances
within each factor tau and optionally writes the full step functions.

    python3 scripts/make_profile.py desk.csv --metric time --taus 1 1.5 2 4
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from statistics import fmean

from dynorient.bench.runner import read_csv
from dynorient.bench.stats import performance_profile, profile_value

METRIC_COLUMNS = {"time": "total_ns", "delta": "final_delta", "searches": "searches", "flips": "flips"}


@dataclass
class ProfileConfig:
    inputs: list[str]
    metric: str = "time"
    taus: list[float] = field(default_factory=lambda: [1.0, 1.25, 1.5, 2.0, 4.0])
    output: str | None = None


def load_results(cfg: ProfileConfig) -> dict[str, dict[str, float]]:
    column = METRIC_COLUMNS[cfg.metric]
    cells: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    for path in cfg.inputs:
        with open(path, encoding="utf-8", newline="") as fh:
            for row in read_csv(fh):
                cells[f"{row['algorithm']}-{row['backend']}"][row["instance"]].append(float(row[column]))
    return {alg: {inst: fmean(v) for inst, v in per.items()} for alg, per in cells.items()}


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--metric", choices=sorted(METRIC_COLUMNS), default="time")
    p.add_argument("--taus", type=float, nargs="+", default=[1.0, 1.25, 1.5, 2.0, 4.0])
    p.add_argument("--output", help="write algorithm,tau,fraction rows here")
    a = p.parse_args(argv)
    cfg = ProfileConfig(a.inputs, a.metric, a.taus, a.output)

    profile = performance_profile(load_results(cfg))
    print("algorithm".ljust(16) + "".join(f"tau={t:<8g}" for t in cfg.taus))
    for alg in sorted(profile):
        print(alg.ljust(16) + "".join(f"{profile_value(profile[alg], t):<12.3f}" for t in cfg.taus))
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["algorithm", "tau", "fraction"])
            for alg in sorted(profile):
                for pt in profile[alg]:
                    w.writerow([alg, repr(pt.tau), repr(pt.fraction)])
    return 0


if __name__ == "__main__":
    sys.exit(main())
