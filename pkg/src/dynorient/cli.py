"""Command line entry point: ``dynorient {run,convert,oracle,profile}``.

Exit codes: 0 success, 2 parse error, 3 verification failure, 4 oracle guard exceeded.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from collections import defaultdict
from pathlib import Path
from statistics import fmean

from .bench.formats import (
    EditSequence,
    FormatError,
    Mode,
    parse_edit_sequence,
    parse_metis,
    static_to_sequence,
    write_edit_sequence,
)
from .bench.runner import Cell, VerificationFailure, read_csv, run, run_cells, write_csv
from .bench.stats import performance_profile
from .dynsolvers import MAINTAINERS
from .oracle import TooLarge, pseudoarboricity_bruteforce

EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_GUARD = 4

log = logging.getLogger("dynorient")


def _load(path: str, fmt: str, seed: int, mode: str) -> EditSequence:
    with open(path, encoding="utf-8") as fh:
        if fmt == "metis":
            n, edges = parse_metis(fh)
            return static_to_sequence(edges, seed, mode, n)
        return parse_edit_sequence(fh)


def _guess_format(path: str) -> str:
    return "metis" if Path(path).suffix in (".metis", ".graph") else "seq"


def cmd_run(args: argparse.Namespace) -> int:
    algs = args.alg or ["improved"]
    backends = args.backend or ["bfs"]
    cells = []
    for path in args.input:
        fmt = args.format or _guess_format(path)
        seq = _load(path, fmt, args.seed, args.mode)
        name = Path(path).stem
        for alg in algs:
            for backend in backends:
                cells.append(Cell(seq, alg, backend, args.reps, args.verify, name, args.seed))

    if args.trajectory:
        cell = cells[0]
        recs = run(cell.seq, cell.algorithm, cell.backend, 1, "none", trajectory=True)
        with open(args.trajectory, "w", encoding="utf-8") as fh:
            fh.writelines(f"{d}\n" for d in recs[0].trajectory or [])

    records = run_cells(cells, jobs=args.jobs)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    with open(args.input, encoding="utf-8") as fh:
        n, edges = parse_metis(fh)
    seq = static_to_sequence(edges, args.seed, args.mode, n)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(f"% {Path(args.input).name} seed={args.seed} mode={Mode(args.mode).value}\n")
        write_edit_sequence(seq, fh)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    fmt = args.format or _guess_format(args.input)
    with open(args.input, encoding="utf-8") as fh:
        if fmt == "metis":
            n, edges = parse_metis(fh)
            ext = list(range(n))
        else:
            seq = parse_edit_sequence(fh)
            n, edges = seq.n, seq.final_edges()
            ext = [seq.external(v) for v in range(n)]
    cert = pseudoarboricity_bruteforce(edges, n)
    print(f"optimal_delta {cert.optimal_delta}")
    print(f"density {cert.witness_density}")
    print("witness " + " ".join(str(ext[v]) for v in sorted(cert.witness)))
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    with open(args.input, encoding="utf-8", newline="") as fh:
        rows = read_csv(fh)
    cells: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    column = "total_ns" if args.metric == "time" else "final_delta"
    for row in rows:
        cells[f"{row['algorithm']}-{row['backend']}"][row["instance"]].append(float(row[column]))
    results = {a: {i: fmean(v) for i, v in per.items()} for a, per in cells.items()}
    profile = performance_profile(results)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", "tau", "fraction"])
        for alg in sorted(profile):
            for p in profile[alg]:
                w.writerow([alg, repr(p.tau), repr(p.fraction)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynorient", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    modes = [m.value for m in Mode]

    r = sub.add_parser("run", help="replay instances and write one CSV row per repetition")
    r.add_argument("--alg", action="append", choices=sorted(MAINTAINERS), help="repeatable; default improved")
    r.add_argument("--backend", action="append", choices=["bfs", "dfs"], help="repeatable; default bfs")
    r.add_argument("--input", nargs="+", required=True)
    r.add_argument("--format", choices=["seq", "metis"])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--mode", choices=modes, default="insert_only")
    r.add_argument("--reps", type=int, default=1)
    r.add_argument("--verify", choices=["none", "final", "every"], default="none")
    r.add_argument("--csv")
    r.add_argument("--trajectory", help="write the per-update delta of the first cell here")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("convert", help="METIS graph -> random-order edit sequence")
    c.add_argument("--input", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--mode", choices=modes, default="insert_only")
    c.add_argument("--output", required=True)
    c.set_defaults(func=cmd_convert)

    o = sub.add_parser("oracle", help="exact pseudoarboricity by subset enumeration")
    o.add_argument("--input", required=True)
    o.add_argument("--format", choices=["seq", "metis"])
    o.set_defaults(func=cmd_oracle)

    pr = sub.add_parser("profile", help="performance profile from a results CSV")
    pr.add_argument("--metric", choices=["time", "delta"], default="time")
    pr.add_argument("--input", required=True)
    pr.add_argument("--output", required=True)
    pr.set_defaults(func=cmd_profile)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except FormatError as exc:
        log.error("parse error: %s", exc)
        return EXIT_PARSE
    except VerificationFailure as exc:
        log.error("verification failed: %s\n%s", exc, exc.repro)
        return EXIT_VERIFY
    except TooLarge as exc:
        log.error("oracle guard exceeded: %s", exc)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
