"""Static exact orientation by repeated S -> T path flipping (Venkateswaran)."""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .graph import DynOrientedGraph, GraphError
from .pathfind import SearchStats, VisitMarker, bfs_flip_endpoints


class MalformedInput(ValueError):
    pass


def initial_orientation(edges: Iterable[tuple[int, int]], n: int = 0) -> DynOrientedGraph:
    """Orient every edge from its lower-id endpoint."""
    g = DynOrientedGraph(n)
    try:
        for u, v in edges:
            g.insert_oriented(min(u, v), max(u, v))
    except GraphError as exc:
        raise MalformedInput(str(exc)) from exc
    return g


def _sink_level(k: int):
    """Out-degree predicate for membership in ``T`` at level ``k``."""
    return lambda d: d <= k - 2


def venkateswaran_solve(
    edges: Iterable[tuple[int, int]],
    n: int = 0,
    stats: SearchStats | None = None,
) -> tuple[DynOrientedGraph, int]:
    """Return an orientation of ``edges`` together with its optimal max out-degree ``k``.

    ``S`` holds the vertices of out-degree ``k`` and ``T`` those of out-degree
    at most ``k - 2``.  Paths from ``S`` to ``T`` are flipped one at a time;
    when ``S`` runs empty ``k`` drops and both sets are rebuilt.  The loop
    ends at the first search that finds no path.
    """
    g = initial_orientation(edges, n)
    marker = VisitMarker(g.n)
    k = g.delta
    S = set(g.vertices_with_degree(k))
    T = {v for v in range(g.n) if g.odeg(v) <= k - 2}
    while S and T:
        ends = bfs_flip_endpoints(S, g, marker, stats, target_pred=_sink_level(k), restrict=False)
        if ends is None:
            break
        s, t = ends
        S.discard(s)
        if g.odeg(t) == k - 1:
            T.discard(t)
        if not S:
            k -= 1
            S = set(g.vertices_with_degree(k))
            T = {v for v in range(g.n) if g.odeg(v) <= k - 2}
    return g, k


def density_certificate(g: DynOrientedGraph, k: int) -> set[int]:
    """Vertices reachable from the out-degree-``k`` vertices along out-edges.

    For an optimal ``k`` every such vertex has out-degree at least ``k - 1``,
    so the set induces more than ``|U| (k - 1)`` edges.
    """
    start = [v for v in range(g.n) if g.odeg(v) == k]
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for y in g.out_adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
