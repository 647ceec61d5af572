"""Improving-path search and flip routines.

A search from a root of out-degree ``d`` looks for a vertex with out-degree
below ``d - 1`` and only walks through intermediates of out-degree exactly
``d - 1``; the reverse search from a root of out-degree ``d`` looks for a
vertex above ``d + 1`` through intermediates of exactly ``d + 1``.  All
thresholds are taken from the root, not from the current vertex.

Depth-first searches examine every out-neighbour for a target before
descending into any of them ("early check") and use an explicit stack.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, fields
from typing import Callable, Iterable

from .graph import DynOrientedGraph


class MixedSourceDegrees(ValueError):
    pass


class VisitMarker:
    """Epoch-stamped visited flags; :meth:`bump` clears all marks in O(1)."""

    __slots__ = ("stamp", "epoch")

    def __init__(self, n: int = 0) -> None:
        self.stamp: list[int] = [0] * n
        self.epoch = 1

    def ensure(self, n: int) -> None:
        if n > len(self.stamp):
            self.stamp.extend([0] * (n - len(self.stamp)))

    def bump(self) -> None:
        self.epoch += 1

    def visited(self, v: int) -> bool:
        return v < len(self.stamp) and self.stamp[v] == self.epoch

    def mark(self, v: int) -> None:
        self.ensure(v + 1)
        self.stamp[v] = self.epoch


@dataclass
class SearchStats:
    searches_started: int = 0
    searches_succeeded: int = 0
    vertices_scanned: int = 0
    edges_flipped: int = 0

    def copy(self) -> SearchStats:
        return SearchStats(**{f.name: getattr(self, f.name) for f in fields(self)})

    def __sub__(self, other: SearchStats) -> SearchStats:
        return SearchStats(
            **{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)}
        )


def _flip_forward(g: DynOrientedGraph, path: list[tuple[int, int]], stats: SearchStats | None) -> None:
    # path: (vertex, slot in its out-list), root first; each vertex loses one
    # out-edge and gains one, so earlier flips never invalidate later slots
    for x, slot in path:
        g.flip_slot(x, slot)
    if stats is not None:
        stats.searches_succeeded += 1
        stats.edges_flipped += len(path)


def _flip_reverse(g: DynOrientedGraph, path: list[tuple[int, int]], stats: SearchStats | None) -> None:
    # path: (vertex, index into its in-list) describing edge in_adj[x][j] -> x
    in_adj, in_pos = g.in_adj, g.in_pos
    for x, j in path:
        g.flip_slot(in_adj[x][j], in_pos[x][j])
    if stats is not None:
        stats.searches_succeeded += 1
        stats.edges_flipped += len(path)


def _dfs(
    g: DynOrientedGraph,
    root: int,
    marker: VisitMarker,
    stats: SearchStats | None,
    reverse: bool,
    dead: VisitMarker | None = None,
) -> bool:
    out_adj = g.out_adj
    nbrs = g.in_adj if reverse else out_adj
    stamp = marker.stamp
    epoch = marker.epoch
    # vertices marked in ``dead`` are skipped like visited ones
    dstamp, depoch = (stamp, epoch) if dead is None else (dead.stamp, dead.epoch)
    d = len(out_adj[root])
    if reverse:
        through = d + 1
    else:
        through = d - 1
        if through < 1:
            return False
    scanned = 0

    # early check at the root
    adj = nbrs[root]
    scanned += 1
    for i, y in enumerate(adj):
        dy = len(out_adj[y])
        if (dy > through) if reverse else (dy < through):
            path = [(root, i)]
            (_flip_reverse if reverse else _flip_forward)(g, path, stats)
            if stats is not None:
                stats.vertices_scanned += scanned
            return True
    stamp[root] = epoch
    seen = [root]

    verts = [root]
    nxt = [0]
    found: tuple[int, int] | None = None
    while verts:
        x = verts[-1]
        adj = nbrs[x]
        i = nxt[-1]
        end = len(adj)
        while i < end:
            y = adj[i]
            if stamp[y] != epoch and dstamp[y] != depoch and len(out_adj[y]) == through:
                break
            i += 1
        if i == end:
            verts.pop()
            nxt.pop()
            continue
        nxt[-1] = i + 1
        # enter y: early check over its neighbours first
        adj_y = nbrs[y]
        scanned += 1
        for k, z in enumerate(adj_y):
            dz = len(out_adj[z])
            if (dz > through) if reverse else (dz < through):
                found = (y, k)
                break
        if found is not None:
            break
        stamp[y] = epoch
        seen.append(y)
        verts.append(y)
        nxt.append(0)

    if stats is not None:
        stats.vertices_scanned += scanned
    if found is None:
        if dead is not None:
            for v in seen:
                dstamp[v] = depoch
        return False
    path = [(v, k - 1) for v, k in zip(verts, nxt)]
    path.append(found)
    (_flip_reverse if reverse else _flip_forward)(g, path, stats)
    return True


def _begin(g: DynOrientedGraph, marker: VisitMarker, stats: SearchStats | None, shared: bool) -> None:
    marker.ensure(g.n)
    if not shared:
        marker.bump()
    if stats is not None:
        stats.searches_started += 1


def find_and_flip_path(
    u: int,
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
    *,
    shared: bool = False,
    dead: VisitMarker | None = None,
) -> bool:
    """Depth-first search for an improving path starting at ``u``; flip it if found.

    With ``shared=True`` the marker epoch is not bumped, so vertices left
    visited by earlier failed searches are skipped.  Vertices marked in
    ``dead`` are skipped as well, and a failed search marks everything it
    visited there.
    """
    _begin(g, marker, stats, shared)
    return _dfs(g, u, marker, stats, False, dead)


def find_and_flip_path_rev(
    u: int,
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
    *,
    shared: bool = False,
) -> bool:
    """Depth-first search over in-edges for an improving path ending at ``u``."""
    _begin(g, marker, stats, shared)
    return _dfs(g, u, marker, stats, reverse=True)


def dfs_find_and_flip_multi(
    sources: Iterable[int],
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
) -> bool:
    """One depth-first forest search from all ``sources`` (equal out-degree).

    Visit marks are shared between the trees, so the whole call costs
    O(n + m) like a single search.
    """
    order = sorted(sources)
    _check_sources(g, order)
    _begin(g, marker, stats, shared=False)
    for s in order:
        if _dfs(g, s, marker, stats, reverse=False):
            return True
    return False


def _check_sources(g: DynOrientedGraph, sources: list[int]) -> int:
    if not sources:
        raise ValueError("source set must be non-empty")
    d = g.odeg(sources[0])
    for s in sources:
        if g.odeg(s) != d:
            raise MixedSourceDegrees(f"sources disagree on out-degree ({d} vs {g.odeg(s)} at {s})")
    return d


def bfs_find_and_flip(
    sources: Iterable[int],
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
    *,
    target_pred: Callable[[int], bool] | None = None,
    restrict: bool = True,
    shared: bool = False,
    dead: VisitMarker | None = None,
) -> bool:
    """Multi-source breadth-first search over out-edges; flip the first path found.

    All sources must share one out-degree ``d``.  ``target_pred`` receives an
    out-degree and defaults to ``odeg < d - 1``.  With ``restrict`` only
    vertices of out-degree ``d - 1`` are used as intermediates; without it
    every reachable vertex is.  ``shared`` and ``dead`` behave as in
    :func:`find_and_flip_path`.
    """
    return (
        bfs_flip_endpoints(
            sources,
            g,
            marker,
            stats,
            target_pred=target_pred,
            restrict=restrict,
            shared=shared,
            dead=dead,
        )
        is not None
    )


def bfs_flip_endpoints(
    sources: Iterable[int],
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
    *,
    target_pred: Callable[[int], bool] | None = None,
    restrict: bool = True,
    shared: bool = False,
    dead: VisitMarker | None = None,
) -> tuple[int, int] | None:
    """Same search as :func:`bfs_find_and_flip`; returns ``(source, sink)`` of the flipped path."""
    order = sorted(sources)
    d = _check_sources(g, order)
    _begin(g, marker, stats, shared)
    through = d - 1
    if target_pred is None and through < 1:
        return None
    out_adj = g.out_adj
    stamp = marker.stamp
    epoch = marker.epoch
    dstamp, depoch = (stamp, epoch) if dead is None else (dead.stamp, dead.epoch)
    for s in order:
        stamp[s] = epoch
    parent: dict[int, tuple[int, int]] = {}
    # a plain list doubles as the record of every visited vertex
    queue = list(order)
    head = 0
    found: tuple[int, int] | None = None
    if target_pred is None and restrict:
        # hot path: plain comparisons instead of a predicate call per edge
        while head < len(queue):
            x = queue[head]
            head += 1
            i = 0
            for y in out_adj[x]:
                dy = len(out_adj[y])
                if dy < through:
                    found = (x, i)
                    break
                if dy == through and stamp[y] != epoch and dstamp[y] != depoch:
                    stamp[y] = epoch
                    parent[y] = (x, i)
                    queue.append(y)
                i += 1
            if found is not None:
                break
    else:
        if target_pred is None:
            target_pred = through.__gt__
        while head < len(queue):
            x = queue[head]
            head += 1
            for i, y in enumerate(out_adj[x]):
                dy = len(out_adj[y])
                if target_pred(dy):
                    found = (x, i)
                    break
                if stamp[y] != epoch and dstamp[y] != depoch and (not restrict or dy == through):
                    stamp[y] = epoch
                    parent[y] = (x, i)
                    queue.append(y)
            if found is not None:
                break
    if stats is not None:
        stats.vertices_scanned += head
    if found is None:
        if dead is not None:
            for v in queue:
                dstamp[v] = depoch
        return None
    sink = out_adj[found[0]][found[1]]
    path = [found]
    x = found[0]
    while x in parent:
        step = parent[x]
        path.append(step)
        x = step[0]
    path.reverse()
    _flip_forward(g, path, stats)
    return x, sink


def probe_alive(
    u: int,
    g: DynOrientedGraph,
    through: int,
    marker: VisitMarker,
    dead: VisitMarker,
    stats: SearchStats | None = None,
) -> bool:
    """Whether ``u`` reaches a vertex below ``through`` via intermediates of exactly ``through``.

    Nothing is flipped and the call is not counted as a search.  Vertices
    marked in ``dead`` are skipped; on failure every visited vertex,
    ``u`` included, is marked there.
    """
    marker.ensure(g.n)
    dead.ensure(g.n)
    marker.bump()
    out_adj = g.out_adj
    stamp, epoch = marker.stamp, marker.epoch
    dstamp, depoch = dead.stamp, dead.epoch
    stamp[u] = epoch
    queue = [u]
    head = 0
    alive = False
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in out_adj[x]:
            dy = len(out_adj[y])
            if dy < through:
                alive = True
                break
            if dy == through and stamp[y] != epoch and dstamp[y] != depoch:
                stamp[y] = epoch
                queue.append(y)
        if alive:
            break
    if stats is not None:
        stats.vertices_scanned += head
    if not alive:
        for v in queue:
            dstamp[v] = depoch
    return alive


def revive(u: int, g: DynOrientedGraph, dead: VisitMarker, stats: SearchStats | None = None) -> int:
    """Unmark every ``dead`` vertex that reaches ``u`` through dead vertices; return how many."""
    dead.ensure(g.n)
    in_adj = g.in_adj
    dstamp, depoch = dead.stamp, dead.epoch
    queue = [u]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for w in in_adj[x]:
            if dstamp[w] == depoch:
                dstamp[w] = 0
                queue.append(w)
    if stats is not None:
        stats.vertices_scanned += head
    return len(queue) - 1


def bfs_find_and_flip_rev(
    u: int,
    g: DynOrientedGraph,
    marker: VisitMarker,
    stats: SearchStats | None = None,
) -> bool:
    """Breadth-first counterpart of :func:`find_and_flip_path_rev`."""
    _begin(g, marker, stats, shared=False)
    out_adj, in_adj = g.out_adj, g.in_adj
    through = len(out_adj[u]) + 1
    stamp = marker.stamp
    epoch = marker.epoch
    stamp[u] = epoch
    parent: dict[int, tuple[int, int]] = {}
    queue = deque([u])
    scanned = 0
    found: tuple[int, int] | None = None
    while queue:
        x = queue.popleft()
        scanned += 1
        for j, w in enumerate(in_adj[x]):
            dw = len(out_adj[w])
            if dw > through:
                found = (x, j)
                break
            if dw == through and stamp[w] != epoch:
                stamp[w] = epoch
                parent[w] = (x, j)
                queue.append(w)
        if found is not None:
            break
    if stats is not None:
        stats.vertices_scanned += scanned
    if found is None:
        return False
    path = [found]
    x = found[0]
    while x in parent:
        step = parent[x]
        path.append(step)
        x = step[0]
    _flip_reverse(g, path, stats)
    return True
