"""Full core decomposition: the linear-time baseline and the test oracle.

``decompose`` runs bucket-sorted minimum-degree peeling over the adjacency
arena (O(n + m)); it serves both as the recompute-everything baseline in the
benchmark harness and as the correctness oracle for every incremental
variant.  ``brute_force_core`` re-derives core numbers straight from the
definition with none of the bucket machinery and is used only in tests.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import Graph

CoreState = np.ndarray  # int64, one entry per node id; tombstones stay 0


def decompose(g: Graph, backend: str | None = None) -> CoreState:
    """Exact core numbers for every node id (degree-0 and tombstoned ids get 0)."""
    k = _kernels.get_kernels(backend)
    start, deg, adj = g.arrays()
    core = np.zeros(g.num_ids, dtype=np.int64)
    k.peel_cores(g.num_ids, start, deg, adj, core)
    return core


def brute_force_core(g: Graph) -> CoreState:
    """Reference decomposition by definition, for graphs up to ~2000 nodes.

    For k = 1, 2, ... repeatedly strip nodes of degree < k until a fixpoint;
    a node's core number is the largest k it survives.  Kept deliberately
    independent of the peeling implementation.
    """
    core = np.zeros(g.num_ids, dtype=np.int64)
    adj: dict[int, set[int]] = {}
    for u in g.live_nodes():
        u = int(u)
        adj[u] = set(int(w) for w in g.neighbors(u))
    k = 1
    while adj:
        changed = True
        while changed:
            changed = False
            for u in list(adj):
                if len(adj[u]) < k:
                    for w in adj[u]:
                        adj[w].discard(u)
                    del adj[u]
                    changed = True
        for u in adj:
            core[u] = k
        k += 1
    return core


def compute_x(g: Graph, cores: CoreState, v: int) -> int:
    """Count of v's neighbors whose core number is >= v's own."""
    nbrs = g.neighbors(v)
    if len(nbrs) == 0:
        return 0
    return int(np.count_nonzero(cores[nbrs] >= cores[v]))


def compute_y(g: Graph, cores: CoreState, v: int) -> int:
    """Count of v's neighbors whose core number is strictly above v's own."""
    nbrs = g.neighbors(v)
    if len(nbrs) == 0:
        return 0
    return int(np.count_nonzero(cores[nbrs] > cores[v]))


def bounds_all(g: Graph, cores: CoreState,
               backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized compute_x/compute_y over all node ids."""
    k = _kernels.get_kernels(backend)
    start, deg, adj = g.arrays()
    x = np.zeros(g.num_ids, dtype=np.int64)
    y = np.zeros(g.num_ids, dtype=np.int64)
    k.bounds_all(g.num_ids, start, deg, adj, cores, x, y)
    return x, y


def dump_cores(g: Graph, cores: CoreState) -> str:
    """'label core' per live node, sorted by label."""
    rows = sorted((int(g.labels[u]), int(cores[u])) for u in g.live_nodes())
    return "".join(f"{lab} {c}\n" for lab, c in rows)
