"""Edit-sequence and METIS readers/writers, plus static-to-dynamic conversion.

Edit-sequence grammar (UTF-8, one item per line)::

    % free comment
    # dyn <n>          optional header; ids must then lie in [0, n)
    + u v              insert {u, v}
    - u v              delete {u, v}

Without a header, external ids are densified in first-seen order and the
mapping is kept on the sequence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, TextIO

MASK64 = (1 << 64) - 1


class FormatError(ValueError):
    def __init__(self, line: int, msg: str) -> None:
        super().__init__(f"line {line}: {msg}")
        self.line = line


class ParseError(FormatError):
    pass


class InvalidOp(FormatError):
    pass


class AsymmetricAdjacency(FormatError):
    pass


class CountMismatch(FormatError):
    pass


class OpKind(str, Enum):
    INSERT = "+"
    DELETE = "-"


@dataclass(frozen=True)
class EditOp:
    kind: OpKind
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"self-loop at {self.u}")


@dataclass
class EditSequence:
    ops: list[EditOp]
    declared_n: int | None = None
    # dense id -> external id; empty means identity
    external_ids: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        if self.declared_n is not None:
            return self.declared_n
        if self.external_ids:
            return len(self.external_ids)
        return max((max(op.u, op.v) for op in self.ops), default=-1) + 1

    def __len__(self) -> int:
        return len(self.ops)

    def external(self, v: int) -> int:
        return self.external_ids[v] if self.external_ids else v

    def final_edges(self) -> list[tuple[int, int]]:
        return sorted(replay_edges(self.ops))

    def prefix(self, k: int) -> EditSequence:
        return EditSequence(self.ops[:k], self.declared_n, list(self.external_ids))


def replay_edges(ops: Iterable[EditOp]) -> set[tuple[int, int]]:
    """Final undirected edge set after ``ops``; raises InvalidOp (1-based op index) on conflicts."""
    present: set[tuple[int, int]] = set()
    for i, op in enumerate(ops, 1):
        key = (min(op.u, op.v), max(op.u, op.v))
        if op.kind is OpKind.INSERT:
            if key in present:
                raise InvalidOp(i, f"insert of present edge {key}")
            present.add(key)
        else:
            if key not in present:
                raise InvalidOp(i, f"delete of absent edge {key}")
            present.remove(key)
    return present


def parse_edit_sequence(stream: TextIO | Iterable[str]) -> EditSequence:
    raw: list[tuple[int, OpKind, int, int]] = []
    declared: int | None = None
    for lineno, line in enumerate(stream, 1):
        text = line.strip()
        if not text or text.startswith("%"):
            continue
        parts = text.split()
        if parts[0] == "#":
            if len(parts) != 3 or parts[1] != "dyn" or raw or declared is not None:
                raise ParseError(lineno, f"bad header {text!r}")
            try:
                declared = int(parts[2])
            except ValueError:
                raise ParseError(lineno, f"bad vertex count {parts[2]!r}") from None
            if declared < 0:
                raise ParseError(lineno, "negative vertex count")
            continue
        if len(parts) != 3 or parts[0] not in ("+", "-"):
            raise ParseError(lineno, f"expected '+ u v' or '- u v', got {text!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(lineno, f"non-integer vertex id in {text!r}") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "negative vertex id")
        if declared is not None and (u >= declared or v >= declared):
            raise ParseError(lineno, f"vertex id out of range for '# dyn {declared}'")
        if u == v:
            raise InvalidOp(lineno, f"self-loop at {u}")
        raw.append((lineno, OpKind(parts[0]), u, v))

    external: list[int] = []
    if declared is None:
        index: dict[int, int] = {}
        for _, _, u, v in raw:
            for x in (u, v):
                if x not in index:
                    index[x] = len(external)
                    external.append(x)
        raw = [(ln, k, index[u], index[v]) for ln, k, u, v in raw]

    present: set[tuple[int, int]] = set()
    ops = []
    for lineno, kind, u, v in raw:
        key = (min(u, v), max(u, v))
        if kind is OpKind.INSERT:
            if key in present:
                raise InvalidOp(lineno, f"insert of present edge {{{u}, {v}}}")
            present.add(key)
        else:
            if key not in present:
                raise InvalidOp(lineno, f"delete of absent edge {{{u}, {v}}}")
            present.remove(key)
        ops.append(EditOp(kind, u, v))
    return EditSequence(ops, declared, external)


def format_edit_sequence(seq: EditSequence, *, header: bool = True) -> Iterator[str]:
    """Lines of ``seq`` in the edit-sequence grammar, using external ids."""
    if header and seq.declared_n is not None:
        yield f"# dyn {seq.declared_n}\n"
    for op in seq.ops:
        yield f"{op.kind.value} {seq.external(op.u)} {seq.external(op.v)}\n"


def write_edit_sequence(seq: EditSequence, stream: TextIO) -> None:
    stream.writelines(format_edit_sequence(seq))


def parse_metis(stream: TextIO | Iterable[str]) -> tuple[int, list[tuple[int, int]]]:
    """Read an unweighted METIS graph; return ``(n, edges)`` with 0-based ``(u, v)``, ``u < v``."""
    lines = ((i, ln.rstrip("\r\n")) for i, ln in enumerate(stream, 1))
    lines = ((i, ln) for i, ln in lines if not ln.lstrip().startswith("%"))
    try:
        hline, header = next(lines)
        while not header.strip():
            hline, header = next(lines)
    except StopIteration:
        raise ParseError(0, "missing header") from None
    fields_ = header.split()
    try:
        n, m = int(fields_[0]), int(fields_[1])
    except (IndexError, ValueError):
        raise ParseError(hline, f"bad header {header!r}") from None
    if len(fields_) > 2 and fields_[2].strip("0"):
        raise ParseError(hline, f"weighted METIS format {fields_[2]!r} not supported")

    listed: dict[tuple[int, int], int] = {}
    last_line = hline
    u = -1
    for u, (lineno, text) in zip(range(n), lines):
        last_line = lineno
        for tok in text.split():
            try:
                v = int(tok) - 1
            except ValueError:
                raise ParseError(lineno, f"non-integer neighbour {tok!r}") from None
            if not 0 <= v < n:
                raise ParseError(lineno, f"neighbour {tok} out of range 1..{n}")
            if v == u:
                raise ParseError(lineno, f"self-loop at vertex {u + 1}")
            if (u, v) in listed:
                raise ParseError(lineno, f"neighbour {tok} listed twice")
            listed[(u, v)] = lineno
    for lineno, text in lines:
        if text.strip():
            raise ParseError(lineno, "content after the last adjacency line")

    edges = []
    for (a, b), lineno in listed.items():
        if (b, a) not in listed:
            raise AsymmetricAdjacency(lineno, f"{a + 1} lists {b + 1} but not vice versa")
        if a < b:
            edges.append((a, b))
    if len(edges) != m:
        raise CountMismatch(last_line, f"header declares {m} edges, adjacency holds {len(edges)}")
    edges.sort()
    return n, edges


def write_metis(n: int, edges: Iterable[tuple[int, int]], stream: TextIO) -> None:
    adj: list[list[int]] = [[] for _ in range(n)]
    count = 0
    for u, v in edges:
        adj[u].append(v + 1)
        adj[v].append(u + 1)
        count += 1
    stream.write(f"{n} {count}\n")
    for row in adj:
        stream.write(" ".join(map(str, sorted(row))) + "\n")


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014); tiny and bit-identical in any language."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        # plain modulo reduction; the bias is irrelevant for shuffling and keeps ports trivial
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, swapping ``i`` with ``below(i + 1)`` for ``i = len-1 .. 1``."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


class Mode(str, Enum):
    INSERT_ONLY = "insert_only"
    INSERT_THEN_DELETE = "insert_then_delete"


def static_to_sequence(
    edges: Iterable[tuple[int, int]],
    seed: int,
    mode: Mode | str = Mode.INSERT_ONLY,
    n: int | None = None,
) -> EditSequence:
    """Insert all edges in a seeded random order; optionally delete them again.

    Deletions (``insert_then_delete``) use a second, independent shuffle from
    the same generator stream.
    """
    mode = Mode(mode)
    rng = SplitMix64(seed)
    order = [(min(u, v), max(u, v)) for u, v in edges]
    rng.shuffle(order)
    ops = [EditOp(OpKind.INSERT, u, v) for u, v in order]
    if mode is Mode.INSERT_THEN_DELETE:
        rng.shuffle(order)
        ops.extend(EditOp(OpKind.DELETE, u, v) for u, v in order)
    if n is None:
        n = max((max(e) for e in order), default=-1) + 1
    return EditSequence(ops, n)
