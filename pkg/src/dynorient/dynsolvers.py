"""Exact fully dynamic maintainers of a minimum max-out-degree orientation.

All three keep ``delta()`` optimal after every ``insert``/``delete``:

* :class:`NaiveDynOpt` reruns the static peak-to-sink search after every
  update until a search fails.
* :class:`StrongDynOpt` keeps "no improving path anywhere" and needs a single
  search per update.
* :class:`ImprovedDynOpt` only keeps "no improving path from a peak vertex",
  tracking the max out-degree and the number of peaks itself; it skips the
  search for most insertions and tightens the orientation when the last
  peak disappears.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import ClassVar

from .graph import DynOrientedGraph, EdgeNotFound
from .oracle import scan_improving_paths
from .pathfind import (
    SearchStats,
    VisitMarker,
    bfs_find_and_flip,
    bfs_find_and_flip_rev,
    dfs_find_and_flip_multi,
    find_and_flip_path,
    find_and_flip_path_rev,
    probe_alive,
    revive,
)


class Backend(str, Enum):
    DFS = "dfs"
    BFS = "bfs"


class InvariantViolation(AssertionError):
    pass


class Maintainer(ABC):
    """Common update interface.  One maintainer owns its graph exclusively."""

    name: ClassVar[str]
    uses_buckets: ClassVar[bool] = False

    def __init__(self, n_hint: int = 0, backend: Backend | str = Backend.BFS, *, debug: bool = False) -> None:
        self.backend = Backend(backend)
        self.g = DynOrientedGraph(n_hint, buckets=self.uses_buckets)
        self.marker = VisitMarker(n_hint)
        self._stats = SearchStats()
        self.debug = debug

    @abstractmethod
    def insert(self, u: int, v: int) -> None: ...

    @abstractmethod
    def delete(self, u: int, v: int) -> None: ...

    def delta(self) -> int:
        return self.g.delta

    def stats(self) -> SearchStats:
        return self._stats

    def orientation(self) -> DynOrientedGraph:
        return self.g

    @abstractmethod
    def audit(self) -> None:
        """Raise :class:`InvariantViolation` if the maintained invariant is broken."""

    # ---- shared helpers ---------------------------------------------------

    def _orient_new(self, u: int, v: int) -> int:
        """Store ``{u, v}`` at the endpoint of smaller out-degree (ties: smaller id)."""
        g = self.g
        du, dv = g.odeg(u), g.odeg(v)
        if dv < du or (dv == du and v < u):
            u, v = v, u
        g.insert_oriented(u, v)
        return u

    def _remove(self, u: int, v: int) -> int:
        """Remove ``{u, v}`` whichever way it is stored; return the storing endpoint."""
        g = self.g
        if g.find_slot(u, v) < 0:
            if g.find_slot(v, u) < 0:
                raise EdgeNotFound(f"edge {{{u}, {v}}} not present")
            u, v = v, u
        g.remove_oriented(u, v)
        return u

    def _forward(self, u: int, shared: bool = False) -> bool:
        if self.backend is Backend.DFS:
            return find_and_flip_path(u, self.g, self.marker, self._stats, shared=shared)
        return bfs_find_and_flip((u,), self.g, self.marker, self._stats)

    def _reverse(self, u: int) -> bool:
        if self.backend is Backend.DFS:
            return find_and_flip_path_rev(u, self.g, self.marker, self._stats)
        return bfs_find_and_flip_rev(u, self.g, self.marker, self._stats)

    def _after_update(self) -> None:
        if self.debug:
            self.g.check()
            self.audit()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(backend={self.backend.value}, n={self.g.n}, m={self.g.m}, delta={self.delta()})"


class NaiveDynOpt(Maintainer):
    name = "naive"
    uses_buckets = True

    def insert(self, u: int, v: int) -> None:
        self._orient_new(u, v)
        self._settle()
        self._after_update()

    def delete(self, u: int, v: int) -> None:
        self._remove(u, v)
        self._settle()
        self._after_update()

    def _settle(self) -> None:
        g = self.g
        while True:
            d = g.delta
            if d < 2:  # no vertex can sit below d - 1
                return
            peaks = g.vertices_with_degree(d)
            if self.backend is Backend.BFS:
                ok = bfs_find_and_flip(peaks, g, self.marker, self._stats)
            else:
                ok = dfs_find_and_flip_multi(peaks, g, self.marker, self._stats)
            if not ok:
                return

    def audit(self) -> None:
        path = scan_improving_paths(self.g, from_peaks_only=True)
        if path is not None:
            raise InvariantViolation(f"improving path from a peak: {path}")


class StrongDynOpt(Maintainer):
    name = "strong"

    def insert(self, u: int, v: int) -> None:
        self._forward(self._orient_new(u, v))
        self._after_update()

    def delete(self, u: int, v: int) -> None:
        self._reverse(self._remove(u, v))
        self._after_update()

    def audit(self) -> None:
        path = scan_improving_paths(self.g, from_peaks_only=False)
        if path is not None:
            raise InvariantViolation(f"improving path: {path}")


class ImprovedDynOpt(Maintainer):
    """Maintains "no improving path from a peak" plus delta and the peak count.

    With ``dead_cache`` (default) the vertices visited by a failed search
    from a new peak are remembered as dead: out-degree ``delta - 1`` and no
    way down to a vertex below ``delta - 1``.  Later searches from new peaks
    skip them instead of re-exploring the same region.  The dead set stays
    closed: a dead vertex only points at dead vertices or at vertices of
    out-degree ``delta`` or more.

    During insertions the only vertex that can newly drop to ``delta - 1``
    is the root of a successful search from a new peak.  That root is
    probed: if it is itself dead it joins the set, otherwise exactly the
    dead vertices that reach it are revived.  Deletions, tightening and a
    change of delta forget the whole set.  Skipped regions never yield a
    path, so every search finds exactly the path it would find without the
    cache.

    Searches from a vertex at ``delta + 1`` are not cached: they nearly
    always succeed, and measured probing there cost more than it saved.
    """

    name = "improved"

    def __init__(
        self,
        n_hint: int = 0,
        backend: Backend | str = Backend.BFS,
        *,
        debug: bool = False,
        dead_cache: bool = True,
    ) -> None:
        super().__init__(n_hint, backend, debug=debug)
        self._delta = 0
        self.peak_count = 0  # m_c; only meaningful while delta > 0
        self.dead_cache = dead_cache
        self._dead = VisitMarker(n_hint)

    def delta(self) -> int:
        return self._delta

    def _peak_search(self, u: int) -> bool:
        """Forward search from a vertex that just reached out-degree delta."""
        if not self.dead_cache:
            return self._forward(u)
        g, dead = self.g, self._dead
        dead.ensure(g.n)
        dead.stamp[u] = 0  # u may have been dead at delta - 1 before this insertion
        if self.backend is Backend.DFS:
            ok = find_and_flip_path(u, g, self.marker, self._stats, dead=dead)
        else:
            ok = bfs_find_and_flip((u,), g, self.marker, self._stats, dead=dead)
        # u is back at delta - 1
        if ok and probe_alive(u, g, g.odeg(u), self.marker, dead, self._stats):
            revive(u, g, dead, self._stats)
        return ok

    def insert(self, u: int, v: int) -> None:
        u = self._orient_new(u, v)
        d = self.g.odeg(u)
        if d == self._delta:
            if not self._peak_search(u):
                self.peak_count += 1
        elif d == self._delta + 1:
            if self._forward(u):
                # the path's sink rose to delta
                self.peak_count += 1
            else:
                self._delta += 1
                self.peak_count = 1
                self._dead.bump()
        self._after_update()

    def delete(self, u: int, v: int) -> None:
        u = self._remove(u, v)
        self._dead.bump()
        d = self.g.odeg(u)
        if d == self._delta - 1:
            self.peak_count -= 1
        elif d == self._delta - 2:
            if self._reverse(u):
                self.peak_count -= 1
        if self.peak_count == 0:
            self._delta -= 1
            self.tighten_outdegree()
        self._after_update()

    def tighten_outdegree(self) -> None:
        """Sweep the current peaks until a sweep improves nothing.

        A sweep in which every peak improved lowers delta by one.  With the
        DFS backend the visit marks are shared across the failed searches of
        a sweep and cleared after every successful flip.
        """
        g = self.g
        shared = self.backend is Backend.DFS
        improved_one = True
        failures = 0
        while improved_one:
            improved_one = False
            improved_all = True
            failures = 0
            target = self._delta
            peaks = sorted(v for v, adj in enumerate(g.out_adj) if len(adj) == target)
            if not peaks:
                break
            self.marker.bump()
            for v in peaks:
                if self._forward(v, shared=shared):
                    improved_one = True
                    self.marker.bump()
                else:
                    improved_all = False
                    failures += 1
            if improved_all:
                self._delta -= 1
        self.peak_count = failures

    def audit(self) -> None:
        g = self.g
        if self._delta != g.delta:
            raise InvariantViolation(f"tracked delta {self._delta} != actual {g.delta}")
        if self._delta > 0 and self.peak_count != g.peak_count:
            raise InvariantViolation(f"tracked peak count {self.peak_count} != actual {g.peak_count}")
        path = scan_improving_paths(g, from_peaks_only=True)
        if path is not None:
            raise InvariantViolation(f"improving path from a peak: {path}")


MAINTAINERS: dict[str, type[Maintainer]] = {
    cls.name: cls for cls in (NaiveDynOpt, StrongDynOpt, ImprovedDynOpt)
}


def make_maintainer(
    algorithm: str, backend: Backend | str = Backend.BFS, n_hint: int = 0, *, debug: bool = False
) -> Maintainer:
    try:
        cls = MAINTAINERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(MAINTAINERS)}") from None
    return cls(n_hint, backend, debug=debug)
