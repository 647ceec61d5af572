"""Independent ground truth for small graphs.

Nothing here shares code with the search routines in :mod:`dynorient.pathfind`;
the improving-path scan is a plain unrestricted BFS.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

import numpy as np

from .graph import DynOrientedGraph

MAX_SUBSET_N = 24
MAX_ORIENT_M = 20


class TooLarge(ValueError):
    """Input exceeds an enumeration guard."""


@dataclass(frozen=True)
class PseudoarboricityCertificate:
    optimal_delta: int
    witness: frozenset[int]
    witness_density: Fraction

    def __post_init__(self) -> None:
        assert ceil(self.witness_density) == self.optimal_delta


class DisjointSet:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            out.setdefault(self.find(v), []).append(v)
        return sorted(out.values())


def _normalize(edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        out.append(key)
    return out


def pseudoarboricity_bruteforce(
    edges: Iterable[tuple[int, int]], n: int | None = None
) -> PseudoarboricityCertificate:
    """Exact pseudoarboricity by enumerating vertex subsets of each component.

    The witness is a densest subset (maximum ``|E(S)|/|S|``); ties go to the
    smallest bitmask over global vertex ids.
    """
    edges = _normalize(edges)
    if n is None:
        n = max((max(e) for e in edges), default=-1) + 1
    if n > MAX_SUBSET_N:
        raise TooLarge(f"n={n} exceeds subset-enumeration guard {MAX_SUBSET_N}")
    if not edges:
        return PseudoarboricityCertificate(0, frozenset(), Fraction(0))

    ds = DisjointSet(n)
    for u, v in edges:
        ds.union(u, v)

    best_e, best_sz, best_gmask = 0, 1, 0
    for comp in ds.groups():
        if len(comp) < 2:
            continue
        local = {v: i for i, v in enumerate(comp)}
        nbr = [0] * len(comp)
        for u, v in edges:
            if u in local:
                nbr[local[u]] |= 1 << local[v]
                nbr[local[v]] |= 1 << local[u]
        k = len(comp)

        def to_global(mask: int) -> int:
            return sum(1 << comp[j] for j in range(k) if mask >> j & 1)

        # e[mask] = |E(mask)|, built from mask minus its lowest vertex
        e = [0] * (1 << k)
        for mask in range(1, 1 << k):
            low = mask & -mask
            rest = mask ^ low
            em = e[rest] + (nbr[low.bit_length() - 1] & rest).bit_count()
            e[mask] = em
            if em == 0:
                continue
            sz = mask.bit_count()
            lhs, rhs = em * best_sz, best_e * sz
            if lhs > rhs or (lhs == rhs and to_global(mask) < best_gmask):
                best_e, best_sz, best_gmask = em, sz, to_global(mask)
    witness = frozenset(v for v in range(n) if best_gmask >> v & 1)
    dens = Fraction(best_e, best_sz)
    return PseudoarboricityCertificate(ceil(dens), witness, dens)


def exhaustive_orientation_delta(edges: Sequence[tuple[int, int]], n: int | None = None) -> int:
    """Minimum over all 2^m orientations of the maximum out-degree."""
    edges = _normalize(edges)
    m = len(edges)
    if m > MAX_ORIENT_M:
        raise TooLarge(f"m={m} exceeds orientation-enumeration guard {MAX_ORIENT_M}")
    if m == 0:
        return 0
    if n is None:
        n = max(max(e) for e in edges) + 1
    masks = np.arange(1 << m, dtype=np.uint32)
    deg = np.zeros((n, 1 << m), dtype=np.uint8)
    for j, (u, v) in enumerate(edges):
        bit = ((masks >> j) & 1).astype(np.uint8)
        deg[v] += bit
        deg[u] += 1 - bit
    return int(deg.max(axis=0).min())


def scan_improving_paths(g: DynOrientedGraph, from_peaks_only: bool = False) -> list[int] | None:
    """Return some improving path (vertex list) or None.

    Starts from every vertex, or only from vertices of maximum out-degree,
    and explores all out-edges without any degree restriction.
    """
    n = g.n
    odeg = [len(a) for a in g.out_adj]
    top = max(odeg, default=0)
    starts = [v for v in range(n) if odeg[v] == top] if from_peaks_only else range(n)
    for s in starts:
        if odeg[s] < 2:
            continue
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.out_adj[x]:
                if y in parent:
                    continue
                parent[y] = x
                if odeg[y] + 1 < odeg[s]:
                    path = [y]
                    while parent[path[-1]] != -1:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(y)
    return None


@dataclass
class ValidationReport:
    valid: bool
    missing: list[tuple[int, int]]
    extra: list[tuple[int, int]]
    duplicated: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.valid


def validate_orientation(g: DynOrientedGraph, original_edges: Iterable[tuple[int, int]]) -> ValidationReport:
    """Check that ``g`` orients exactly the undirected ``original_edges``, once each."""
    want = {(min(u, v), max(u, v)) for u, v in original_edges}
    counts: dict[tuple[int, int], int] = {}
    for u, v in g.arcs():
        key = (min(u, v), max(u, v))
        counts[key] = counts.get(key, 0) + 1
    missing = sorted(want - counts.keys())
    extra = sorted(counts.keys() - want)
    duplicated = sorted(k for k, c in counts.items() if c > 1)
    return ValidationReport(not (missing or extra or duplicated), missing, extra, duplicated)
