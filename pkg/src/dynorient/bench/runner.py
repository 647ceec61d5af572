"""Replay edit sequences on fresh maintainers and record timings."""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from ..dynsolvers import InvariantViolation, make_maintainer
from ..oracle import pseudoarboricity_bruteforce, validate_orientation
from ..pathfind import SearchStats
from ..static import venkateswaran_solve
from .formats import EditSequence, OpKind, format_edit_sequence, replay_edges

CSV_COLUMNS = (
    "instance",
    "algorithm",
    "backend",
    "seed",
    "repetition",
    "ops",
    "total_ns",
    "final_delta",
    "searches",
    "flips",
    "verified",
)
VERIFY_LEVELS = ("none", "final", "every")
# subset enumeration is exponential; only consult the oracle on small finals
ORACLE_MAX_N = 16


class VerificationFailure(AssertionError):
    """A maintainer disagreed with ground truth.

    ``index`` is the 0-based update after which the check failed (``-1`` for
    the final check); ``repro`` is an edit-sequence text reproducing the
    failing prefix.
    """

    def __init__(self, message: str, index: int, repro: str) -> None:
        super().__init__(f"update {index}: {message}")
        self.index = index
        self.repro = repro


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    backend: str
    seed: int | None
    repetition: int
    total_ns: int
    final_delta: int
    op_count: int
    stats: SearchStats
    verified: str = "none"
    trajectory: list[int] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.trajectory:
            assert self.trajectory[-1] == self.final_delta

    def csv_row(self) -> dict[str, object]:
        return {
            "instance": self.instance,
            "algorithm": self.algorithm,
            "backend": self.backend,
            "seed": "" if self.seed is None else self.seed,
            "repetition": self.repetition,
            "ops": self.op_count,
            "total_ns": self.total_ns,
            "final_delta": self.final_delta,
            "searches": self.stats.searches_started,
            "flips": self.stats.edges_flipped,
            "verified": self.verified,
        }


def _repro(seq: EditSequence, upto: int, algorithm: str, backend: str) -> str:
    head = f"% repro: --alg {algorithm} --backend {backend}, fails after op {upto}\n"
    return head + "".join(format_edit_sequence(seq.prefix(upto + 1)))


def _final_check(seq: EditSequence, m, algorithm: str, backend: str) -> None:
    edges = seq.final_edges()
    report = validate_orientation(m.orientation(), edges)
    fail = None
    if not report:
        fail = f"orientation does not match the edge set: {report}"
    else:
        _, k = venkateswaran_solve(edges, seq.n)
        if m.delta() != k:
            fail = f"delta {m.delta()} != static optimum {k}"
        elif m.orientation().delta != k:
            fail = f"orientation max out-degree {m.orientation().delta} != {k}"
        elif seq.n <= ORACLE_MAX_N:
            opt = pseudoarboricity_bruteforce(edges, seq.n).optimal_delta
            if opt != k:
                fail = f"static optimum {k} != subset oracle {opt}"
    if fail:
        raise VerificationFailure(fail, -1, _repro(seq, len(seq) - 1, algorithm, backend))


def run(
    seq: EditSequence,
    algorithm: str,
    backend: str = "bfs",
    repetitions: int = 1,
    verify: str = "none",
    *,
    instance: str = "",
    seed: int | None = None,
    trajectory: bool = False,
) -> list[RunRecord]:
    """Replay ``seq`` ``repetitions`` times; only the update loop is timed.

    The sequence is validated first, so an insert of a present edge or a
    delete of an absent one raises InvalidOp before any maintainer exists.
    """
    if verify not in VERIFY_LEVELS:
        raise ValueError(f"verify must be one of {VERIFY_LEVELS}")
    replay_edges(seq.ops)
    records = []
    ops = [(op.kind is OpKind.INSERT, op.u, op.v) for op in seq.ops]
    for rep in range(repetitions):
        m = make_maintainer(algorithm, backend, seq.n)
        insert, delete, delta = m.insert, m.delete, m.delta
        traj: list[int] | None = [] if trajectory else None
        if verify == "every":
            total = 0
            clock = time.perf_counter_ns
            for i, (ins, u, v) in enumerate(ops):
                t0 = clock()
                (insert if ins else delete)(u, v)
                total += clock() - t0
                if traj is not None:
                    traj.append(delta())
                try:
                    m.orientation().check()
                    m.audit()
                except (InvariantViolation, AssertionError) as exc:
                    raise VerificationFailure(str(exc), i, _repro(seq, i, algorithm, backend)) from exc
        else:
            t0 = time.perf_counter_ns()
            if traj is None:
                for ins, u, v in ops:
                    (insert if ins else delete)(u, v)
            else:
                for ins, u, v in ops:
                    (insert if ins else delete)(u, v)
                    traj.append(delta())
            total = time.perf_counter_ns() - t0
        if verify in ("final", "every"):
            _final_check(seq, m, algorithm, backend)
        records.append(
            RunRecord(
                instance=instance,
                algorithm=algorithm,
                backend=str(m.backend.value),
                seed=seed,
                repetition=rep,
                total_ns=total,
                final_delta=delta(),
                op_count=len(ops),
                stats=m.stats().copy(),
                verified=verify,
                trajectory=traj,
            )
        )
    return records


@dataclass(frozen=True)
class Cell:
    """One (instance, algorithm, backend) unit of work for :func:`run_cells`."""

    seq: EditSequence
    algorithm: str
    backend: str
    repetitions: int = 1
    verify: str = "none"
    instance: str = ""
    seed: int | None = None


def _run_cell(cell: Cell) -> list[RunRecord]:
    return run(
        cell.seq,
        cell.algorithm,
        cell.backend,
        cell.repetitions,
        cell.verify,
        instance=cell.instance,
        seed=cell.seed,
    )


def run_cells(cells: Sequence[Cell], jobs: int = 1) -> list[RunRecord]:
    """Run independent cells, optionally in worker processes; output order follows ``cells``."""
    if jobs <= 1 or len(cells) <= 1:
        results = [_run_cell(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, cells))
    return [rec for recs in results for rec in recs]


def write_csv(records: Iterable[RunRecord], stream: TextIO, header: bool = True) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if header:
        writer.writeheader()
    for rec in records:
        writer.writerow(rec.csv_row())


def read_csv(stream: TextIO) -> list[dict[str, str]]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return list(reader)
