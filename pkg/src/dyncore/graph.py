"""Mutable undirected simple graph over dense integer node ids.

The adjacency lives in one flat int64 arena with per-node ``start``/``deg``/
``cap`` bookkeeping, so the hot kernels can walk neighbor lists without any
Python-level indirection.  A set of packed ``(min, max)`` pairs backs O(1)
edge-membership checks (duplicate rejection needs it to stay cheap on hub
nodes).  Removing a node tombstones its id: degree drops to zero and the id
is never reused within a session.

Edge-list text format: one edge per line, two whitespace-separated integer
tokens; lines starting with '#' are ignored.  Input node labels are remapped
to dense ids in order of first appearance and the mapping is kept for output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np


class GraphError(Exception):
    """Base class for graph-store rejections."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UnknownNodeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class InvariantError(Exception):
    """A structural invariant failed; signals a bug, never swallowed."""


@dataclass(frozen=True)
class LoadSummary:
    duplicates: int
    self_loops: int


def _pack(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return (u << 32) | v


class Graph:
    __slots__ = ("_start", "_deg", "_cap", "_adj", "_used", "_alive",
                 "_edges", "_num_live", "num_edges", "labels", "load_summary")

    def __init__(self, num_nodes: int = 0):
        n = int(num_nodes)
        self._start = np.zeros(n, dtype=np.int64)
        self._deg = np.zeros(n, dtype=np.int64)
        self._cap = np.zeros(n, dtype=np.int64)
        self._adj = np.empty(max(16, 2 * n), dtype=np.int64)
        self._used = 0
        self._alive = np.ones(n, dtype=bool)
        self._edges: set[int] = set()
        self._num_live = n
        self.num_edges = 0
        self.labels = np.arange(n, dtype=np.int64)
        self.load_summary: LoadSummary | None = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, num_nodes: int, eu, ev) -> "Graph":
        """Bulk-build from parallel endpoint arrays (must already be simple)."""
        eu = np.asarray(eu, dtype=np.int64)
        ev = np.asarray(ev, dtype=np.int64)
        if eu.shape != ev.shape:
            raise ValueError("endpoint arrays differ in length")
        g = cls(num_nodes)
        m = len(eu)
        if m == 0:
            return g
        if eu.size and (min(eu.min(), ev.min()) < 0
                        or max(eu.max(), ev.max()) >= num_nodes):
            raise UnknownNodeError("edge endpoint out of range")
        if np.any(eu == ev):
            raise SelfLoopError("self-loop in edge array")
        lo = np.minimum(eu, ev).astype(np.int64)
        hi = np.maximum(eu, ev).astype(np.int64)
        packed = (lo << 32) | hi
        g._edges = set(packed.tolist())
        if len(g._edges) != m:
            raise DuplicateEdgeError("duplicate edge in edge array")
        deg = (np.bincount(eu, minlength=num_nodes)
               + np.bincount(ev, minlength=num_nodes)).astype(np.int64)
        start = np.zeros(num_nodes, dtype=np.int64)
        if num_nodes > 1:
            np.cumsum(deg[:-1], out=start[1:])
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        order = np.argsort(src, kind="stable")
        g._adj = dst[order].copy()
        g._start = start
        g._deg = deg
        g._cap = deg.copy()
        g._used = 2 * m
        g.num_edges = m
        return g

    # -- basic queries -----------------------------------------------------

    @property
    def num_nodes(self) -> int:
        """Count of live (non-tombstoned) nodes."""
        return self._num_live

    @property
    def num_ids(self) -> int:
        """Total ids ever allocated, including tombstones."""
        return len(self._deg)

    def is_live(self, u: int) -> bool:
        return 0 <= u < len(self._alive) and bool(self._alive[u])

    def degree(self, u: int) -> int:
        self._check_live(u)
        return int(self._deg[u])

    def neighbors(self, u: int) -> np.ndarray:
        """Read-only view of u's neighbor block (invalidated by mutation)."""
        self._check_live(u)
        s = self._start[u]
        return self._adj[s:s + self._deg[u]]

    def has_edge(self, u: int, v: int) -> bool:
        return _pack(int(u), int(v)) in self._edges

    def live_nodes(self) -> np.ndarray:
        return np.flatnonzero(self._alive).astype(np.int64)

    def edges_packed(self) -> np.ndarray:
        """Sorted packed (u<<32|v) pairs; stable basis for edge sampling."""
        arr = np.fromiter(self._edges, dtype=np.int64, count=len(self._edges))
        arr.sort()
        return arr

    def iter_edges(self) -> Iterable[tuple[int, int]]:
        for packed in self.edges_packed():
            yield int(packed >> 32), int(packed & 0xFFFFFFFF)

    def arrays(self):
        """(start, deg, adj) views for the kernels."""
        return self._start, self._deg, self._adj

    # -- mutation ----------------------------------------------------------

    def add_node(self) -> int:
        u = len(self._deg)
        self._start = np.append(self._start, self._used)
        self._deg = np.append(self._deg, 0)
        self._cap = np.append(self._cap, 0)
        self._alive = np.append(self._alive, True)
        self.labels = np.append(self.labels,
                                self.labels.max() + 1 if len(self.labels) else 0)
        self._num_live += 1
        return u

    def insert_edge(self, u: int, v: int) -> None:
        u, v = int(u), int(v)
        self._check_live(u)
        self._check_live(v)
        if u == v:
            raise SelfLoopError(f"self-loop ({u}, {v})")
        key = _pack(u, v)
        if key in self._edges:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        self._append_neighbor(u, v)
        self._append_neighbor(v, u)
        self._edges.add(key)
        self.num_edges += 1

    def delete_edge(self, u: int, v: int) -> None:
        u, v = int(u), int(v)
        self._check_live(u)
        self._check_live(v)
        key = _pack(u, v)
        if key not in self._edges:
            raise MissingEdgeError(f"edge ({u}, {v}) not present")
        self._drop_neighbor(u, v)
        self._drop_neighbor(v, u)
        self._edges.remove(key)
        self.num_edges -= 1

    def remove_node(self, u: int) -> list[tuple[int, int]]:
        """Remove u's incident edges one by one, then tombstone u."""
        u = int(u)
        self._check_live(u)
        removed = []
        for w in self.neighbors(u).copy():
            self.delete_edge(u, int(w))
            removed.append((u, int(w)))
        self._alive[u] = False
        self._num_live -= 1
        return removed

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g._start = self._start.copy()
        g._deg = self._deg.copy()
        g._cap = self._cap.copy()
        g._adj = self._adj.copy()
        g._used = self._used
        g._alive = self._alive.copy()
        g._edges = set(self._edges)
        g._num_live = self._num_live
        g.num_edges = self.num_edges
        g.labels = self.labels.copy()
        g.load_summary = self.load_summary
        return g

    # -- internals ---------------------------------------------------------

    def _check_live(self, u: int) -> None:
        if not (0 <= u < len(self._alive)) or not self._alive[u]:
            raise UnknownNodeError(f"node {u} is unknown or removed")

    def _append_neighbor(self, u: int, v: int) -> None:
        if self._deg[u] == self._cap[u]:
            self._relocate(u, max(4, 2 * int(self._cap[u])))
        self._adj[self._start[u] + self._deg[u]] = v
        self._deg[u] += 1

    def _drop_neighbor(self, u: int, v: int) -> None:
        s = int(self._start[u])
        d = int(self._deg[u])
        block = self._adj[s:s + d]
        idx = int(np.nonzero(block == v)[0][0])
        block[idx] = block[d - 1]
        self._deg[u] = d - 1

    def _relocate(self, u: int, new_cap: int) -> None:
        if self._used + new_cap > len(self._adj):
            grow = max(len(self._adj), new_cap)
            self._adj = np.concatenate(
                [self._adj, np.empty(grow, dtype=np.int64)])
        s = int(self._start[u])
        d = int(self._deg[u])
        self._adj[self._used:self._used + d] = self._adj[s:s + d]
        self._start[u] = self._used
        self._cap[u] = new_cap
        self._used += new_cap


def validate(g: Graph) -> None:
    """Check symmetry, simplicity and the edge-count identity; raise on failure."""
    total = 0
    for u in range(g.num_ids):
        d = int(g._deg[u])
        if not g._alive[u] and d != 0:
            raise InvariantError(f"tombstoned node {u} has degree {d}")
        block = g._adj[g._start[u]:g._start[u] + d]
        if d:
            if np.any(block == u):
                raise InvariantError(f"self-loop stored at node {u}")
            if len(np.unique(block)) != d:
                raise InvariantError(f"duplicate neighbor at node {u}")
        for w in block:
            if not g.has_edge(u, int(w)):
                raise InvariantError(f"adjacency/edge-set mismatch at ({u}, {w})")
        total += d
    if total != 2 * g.num_edges or g.num_edges != len(g._edges):
        raise InvariantError(
            f"edge count mismatch: sum(deg)={total}, num_edges={g.num_edges}")


def load_edge_list(source: IO[str] | Iterable[str]) -> Graph:
    """Parse an edge-list stream into a Graph.

    Duplicate edges and self-loops are dropped and counted in the attached
    ``load_summary``.  Labels are remapped to dense ids by first appearance.
    """
    label_to_id: dict[int, int] = {}
    order: list[int] = []
    eu: list[int] = []
    ev: list[int] = []
    seen: set[int] = set()
    duplicates = 0
    self_loops = 0
    for lineno, raw in enumerate(source, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two tokens, got {len(parts)}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        for lab in (a, b):
            if lab not in label_to_id:
                label_to_id[lab] = len(order)
                order.append(lab)
        if a == b:
            self_loops += 1
            continue
        u, v = label_to_id[a], label_to_id[b]
        key = _pack(u, v)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        eu.append(u)
        ev.append(v)
    g = Graph.from_edges(len(order), np.array(eu, dtype=np.int64),
                         np.array(ev, dtype=np.int64))
    g.labels = np.array(order, dtype=np.int64)
    g.load_summary = LoadSummary(duplicates=duplicates, self_loops=self_loops)
    return g


def dump_edge_list(g: Graph) -> str:
    """Canonical dump: 'min max' per edge in label space, sorted."""
    pairs = sorted(
        (min(int(g.labels[u]), int(g.labels[v])),
         max(int(g.labels[u]), int(g.labels[v])))
        for u, v in g.iter_edges())
    return "".join(f"{a} {b}\n" for a, b in pairs)
