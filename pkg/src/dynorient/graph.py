"""Mutable oriented graph with mirrored in/out adjacency arrays.

Every undirected edge ``{u, v}`` lives in exactly one out-list (the endpoint
that "owns" it) and has a mirror record in the other endpoint's in-list.
Both records store the position of their partner, so an edge can be flipped
or removed in O(1) given its slot, and reverse traversal costs O(in-degree).

Removal is swap-remove, so list order depends on history but is fully
deterministic for a fixed operation sequence.
"""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, NamedTuple


class GraphError(Exception):
    """Base class for structural errors on :class:`DynOrientedGraph`."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class EdgeNotFound(GraphError):
    pass


class StaleEdgeRef(GraphError):
    pass


class EdgeRef(NamedTuple):
    """Directed edge ``frm -> to`` stored at ``out_adj[frm][slot]``."""

    frm: int
    to: int
    slot: int


class Direction(Enum):
    FORWARD = 1  # stored at the first argument
    BACKWARD = -1  # stored at the second argument


class DynOrientedGraph:
    """Oriented simple graph over dense vertex ids ``0..n-1``.

    ``delta`` (max out-degree) and ``peak_count`` are kept up to date through
    a histogram of out-degrees.  Optionally vertices are also kept in
    per-degree buckets so that all vertices of a given out-degree can be
    enumerated without a scan (``buckets=True``).
    """

    __slots__ = (
        "out_adj",
        "out_pos",
        "in_adj",
        "in_pos",
        "_deg_count",
        "_delta",
        "_m",
        "_buckets",
    )

    def __init__(self, n_hint: int = 0, *, buckets: bool = False) -> None:
        # out_pos[u][i] is the index of u inside in_adj[out_adj[u][i]];
        # in_pos[v][j] is the index of v inside out_adj[in_adj[v][j]].
        self.out_adj: list[list[int]] = []
        self.out_pos: list[list[int]] = []
        self.in_adj: list[list[int]] = []
        self.in_pos: list[list[int]] = []
        self._deg_count: list[int] = [0]
        self._delta = 0
        self._m = 0
        self._buckets: list[set[int]] | None = [set()] if buckets else None
        if n_hint:
            self.ensure_vertex(n_hint - 1)

    # ---- size / growth ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.out_adj)

    @property
    def m(self) -> int:
        return self._m

    def ensure_vertex(self, v: int) -> None:
        """Grow the vertex set so that ``v`` is a valid id."""
        if v < 0:
            raise ValueError(f"vertex ids must be non-negative, got {v}")
        grow = v + 1 - len(self.out_adj)
        if grow <= 0:
            return
        start = len(self.out_adj)
        for _ in range(grow):
            self.out_adj.append([])
            self.out_pos.append([])
            self.in_adj.append([])
            self.in_pos.append([])
        self._deg_count[0] += grow
        if self._buckets is not None:
            self._buckets[0].update(range(start, v + 1))

    # ---- degree bookkeeping ---------------------------------------------

    def odeg(self, v: int) -> int:
        return len(self.out_adj[v]) if v < len(self.out_adj) else 0

    def indeg(self, v: int) -> int:
        return len(self.in_adj[v]) if v < len(self.in_adj) else 0

    @property
    def delta(self) -> int:
        return self._delta

    @property
    def peak_count(self) -> int:
        return self._deg_count[self._delta] if self.out_adj else 0

    def degree_histogram(self) -> list[int]:
        return list(self._deg_count)

    def vertices_with_degree(self, d: int) -> set[int]:
        if self._buckets is None:
            return {v for v, adj in enumerate(self.out_adj) if len(adj) == d}
        if d >= len(self._buckets):
            return set()
        return self._buckets[d]

    def _raise_degree(self, v: int, old: int) -> None:
        counts = self._deg_count
        counts[old] -= 1
        new = old + 1
        if new == len(counts):
            counts.append(0)
        counts[new] += 1
        if new > self._delta:
            self._delta = new
        if self._buckets is not None:
            if new == len(self._buckets):
                self._buckets.append(set())
            self._buckets[old].discard(v)
            self._buckets[new].add(v)

    def _lower_degree(self, v: int, old: int) -> None:
        counts = self._deg_count
        counts[old] -= 1
        counts[old - 1] += 1
        # delta can only drop by one per decrement
        if old == self._delta and counts[old] == 0:
            self._delta = old - 1
        if self._buckets is not None:
            self._buckets[old].discard(v)
            self._buckets[old - 1].add(v)

    # ---- low level edge records -----------------------------------------

    def _append(self, u: int, v: int) -> int:
        out_u = self.out_adj[u]
        in_v = self.in_adj[v]
        slot = len(out_u)
        out_u.append(v)
        self.out_pos[u].append(len(in_v))
        in_v.append(u)
        self.in_pos[v].append(slot)
        return slot

    def _detach(self, u: int, slot: int) -> int:
        """Swap-remove ``out_adj[u][slot]`` and its mirror; return the target."""
        out_u, opos_u = self.out_adj[u], self.out_pos[u]
        v = out_u[slot]
        j = opos_u[slot]
        in_v, ipos_v = self.in_adj[v], self.in_pos[v]

        last = len(out_u) - 1
        if slot != last:
            w = out_u[last]
            wj = opos_u[last]
            out_u[slot] = w
            opos_u[slot] = wj
            self.in_pos[w][wj] = slot
        out_u.pop()
        opos_u.pop()

        last = len(in_v) - 1
        if j != last:
            x = in_v[last]
            xs = ipos_v[last]
            in_v[j] = x
            ipos_v[j] = xs
            self.out_pos[x][xs] = j
        in_v.pop()
        ipos_v.pop()
        return v

    # ---- public mutation --------------------------------------------------

    def insert_oriented(self, u: int, v: int) -> EdgeRef:
        """Insert edge ``{u, v}`` stored at ``u`` (oriented ``u -> v``)."""
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        self.ensure_vertex(max(u, v))
        if self.adjacent(u, v):
            raise DuplicateEdge(f"edge {{{u}, {v}}} already present")
        old = len(self.out_adj[u])
        slot = self._append(u, v)
        self._m += 1
        self._raise_degree(u, old)
        return EdgeRef(u, v, slot)

    def remove_oriented(self, u: int, v: int) -> None:
        """Remove edge ``u -> v``; raises :class:`EdgeNotFound` if not stored at ``u``."""
        slot = self.find_slot(u, v)
        if slot < 0:
            raise EdgeNotFound(f"edge {u} -> {v} not present")
        old = len(self.out_adj[u])
        self._detach(u, slot)
        self._m -= 1
        self._lower_degree(u, old)

    def flip_slot(self, u: int, slot: int) -> int:
        """Reverse ``out_adj[u][slot]``; returns the new slot in the target's out-list."""
        old_u = len(self.out_adj[u])
        v = self._detach(u, slot)
        old_v = len(self.out_adj[v])
        new_slot = self._append(v, u)
        self._lower_degree(u, old_u)
        self._raise_degree(v, old_v)
        return new_slot

    def flip(self, e: EdgeRef) -> EdgeRef:
        out = self.out_adj[e.frm] if e.frm < len(self.out_adj) else ()
        if not (0 <= e.slot < len(out)) or out[e.slot] != e.to:
            raise StaleEdgeRef(f"{e} does not match current adjacency")
        return EdgeRef(e.to, e.frm, self.flip_slot(e.frm, e.slot))

    # ---- queries -----------------------------------------------------------

    def find_slot(self, u: int, v: int) -> int:
        """Index of ``v`` in ``out_adj[u]`` or -1."""
        if u >= len(self.out_adj):
            return -1
        out_u = self.out_adj[u]
        # scan the shorter of out_adj[u] / in_adj[v]
        if v < len(self.in_adj) and len(self.in_adj[v]) < len(out_u):
            in_v = self.in_adj[v]
            for j, w in enumerate(in_v):
                if w == u:
                    return self.in_pos[v][j]
            return -1
        for i, w in enumerate(out_u):
            if w == v:
                return i
        return -1

    def orientation_of(self, u: int, v: int) -> Direction | None:
        """``FORWARD`` if stored as ``u -> v``, ``BACKWARD`` if ``v -> u``, else None."""
        if u == v:
            return None
        if self.find_slot(u, v) >= 0:
            return Direction.FORWARD
        if self.find_slot(v, u) >= 0:
            return Direction.BACKWARD
        return None

    def adjacent(self, u: int, v: int) -> bool:
        return self.orientation_of(u, v) is not None

    def edge_ref(self, u: int, v: int) -> EdgeRef:
        slot = self.find_slot(u, v)
        if slot < 0:
            raise EdgeNotFound(f"edge {u} -> {v} not present")
        return EdgeRef(u, v, slot)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u, out in enumerate(self.out_adj):
            for v in out:
                yield u, v

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edge list, each as ``(min, max)``, sorted."""
        return sorted((min(u, v), max(u, v)) for u, v in self.arcs())

    def out_degrees(self) -> list[int]:
        return [len(adj) for adj in self.out_adj]

    def checksum(self) -> tuple:
        """Hashable snapshot of the full adjacency state (order-sensitive)."""
        return tuple(tuple(adj) for adj in self.out_adj), tuple(
            tuple(adj) for adj in self.in_adj
        )

    def check(self) -> None:
        """Recompute every maintained quantity from scratch; raise AssertionError on mismatch."""
        n = self.n
        seen: set[frozenset[int]] = set()
        counts = [0] * len(self._deg_count)
        for u in range(n):
            out_u = self.out_adj[u]
            assert len(out_u) == len(self.out_pos[u])
            for i, v in enumerate(out_u):
                assert v != u, f"self-loop at {u}"
                key = frozenset((u, v))
                assert key not in seen, f"parallel edge {u}-{v}"
                seen.add(key)
                j = self.out_pos[u][i]
                assert self.in_adj[v][j] == u and self.in_pos[v][j] == i
            for j, w in enumerate(self.in_adj[u]):
                i = self.in_pos[u][j]
                assert self.out_adj[w][i] == u and self.out_pos[w][i] == j
            d = len(out_u)
            if d >= len(counts):
                counts.extend([0] * (d + 1 - len(counts)))
            counts[d] += 1
        assert sum(len(a) for a in self.in_adj) == len(seen) == self._m
        padded = counts + [0] * (len(self._deg_count) - len(counts))
        assert padded[: len(self._deg_count)] == self._deg_count, "degree histogram"
        delta = max((len(a) for a in self.out_adj), default=0)
        assert self._delta == delta, f"delta {self._delta} != {delta}"
        if self._buckets is not None:
            for d, bucket in enumerate(self._buckets):
                assert all(len(self.out_adj[v]) == d for v in bucket)
            assert sum(len(b) for b in self._buckets) == n

    @classmethod
    def from_arcs(
        cls, arcs: Iterable[tuple[int, int]], n: int = 0, *, buckets: bool = False
    ) -> DynOrientedGraph:
        g = cls(n, buckets=buckets)
        for u, v in arcs:
            g.insert_oriented(u, v)
        return g

    def copy(self) -> DynOrientedGraph:
        g = DynOrientedGraph(0, buckets=self._buckets is not None)
        g.out_adj = [list(a) for a in self.out_adj]
        g.out_pos = [list(a) for a in self.out_pos]
        g.in_adj = [list(a) for a in self.in_adj]
        g.in_pos = [list(a) for a in self.in_pos]
        g._deg_count = list(self._deg_count)
        g._delta = self._delta
        g._m = self._m
        if self._buckets is not None:
            g._buckets = [set(b) for b in self._buckets]
        return g

    def __repr__(self) -> str:
        return f"DynOrientedGraph(n={self.n}, m={self.m}, delta={self.delta})"
