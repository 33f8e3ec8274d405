"""Incremental core-number maintenance after one edge insertion or deletion.

Four variants share the same three-stage structure: a coloring DFS collects
the candidate set (the connected region of nodes at the pivot level, the only
nodes whose core number can move), a recoloring fixpoint demotes candidates
that cannot sustain the shifted level, and an apply pass writes the +-1 core
changes.  Variants:

    N   plain coloring
    X   coloring cut at nodes whose at-or-above neighbor count rules out a
        raise (for deletions: an endpoint short-circuit that can skip the
        whole update)
    Y   coloring that stops expanding at nodes whose strictly-above neighbor
        count saturates their level
    XY  both cuts combined

The workspace's visited/color flags are epoch-stamped, so per-update
initialization is an O(1) epoch bump instead of an O(n) sweep, and the
mid-update visited-only reset needed by equal-level deletions is a second
bump that leaves color stamps alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph

VARIANTS = ("N", "X", "Y", "XY")


class UpdateWorkspace:
    """Reusable scratch state for one update at a time."""

    def __init__(self, num_ids: int = 0, backend: str | None = None):
        self.kernels = _kernels.get_kernels(backend)
        self.visit_epoch = 0
        self.color_epoch = 0
        self.cand_n = 0
        self.pruned = 0
        self.rounds = 0
        self._alloc(max(1, int(num_ids)))

    def _alloc(self, n: int) -> None:
        self.vstamp = np.zeros(n, dtype=np.int64)
        self.cstamp = np.zeros(n, dtype=np.int64)
        self.cbit = np.zeros(n, dtype=np.int8)
        self.cand = np.empty(n, dtype=np.int64)
        self.stack = np.empty(n, dtype=np.int64)
        self.out = np.empty(n, dtype=np.int64)

    def ensure(self, num_ids: int) -> None:
        if num_ids > len(self.vstamp):
            old_v, old_c, old_b = self.vstamp, self.cstamp, self.cbit
            self._alloc(max(num_ids, 2 * len(old_v)))
            self.vstamp[:len(old_v)] = old_v
            self.cstamp[:len(old_c)] = old_c
            self.cbit[:len(old_b)] = old_b

    def begin(self, num_ids: int) -> None:
        """Start a fresh update: clears visited, color and the candidate list."""
        self.ensure(num_ids)
        self.visit_epoch += 1
        self.color_epoch += 1
        self.cand_n = 0
        self.pruned = 0
        self.rounds = 0

    def reset_visited(self) -> None:
        """Clear visited flags only; color stamps and candidates survive."""
        self.visit_epoch += 1

    def is_colored(self, u: int) -> bool:
        return (self.cstamp[u] == self.color_epoch
                and self.cbit[u] == 1)

    def candidates(self) -> np.ndarray:
        """Candidate node ids in discovery order (copy)."""
        return self.cand[:self.cand_n].copy()


@dataclass
class UpdateReport:
    """Outcome of one maintenance call."""

    kind: str                         # "insert" | "delete"
    u: int
    v: int
    c: int                            # pivot: min of the endpoint cores
    variant: str
    candidate_count: int = 0
    recolor_rounds: int = 0
    changed: list[tuple[int, int, int]] = field(default_factory=list)
    pruned_nodes: int = 0
    micros: float = 0.0

    def to_record(self, labels: np.ndarray | None = None) -> dict:
        """JSON-lines record; optional label array maps dense ids out."""
        def lab(i: int) -> int:
            return int(labels[i]) if labels is not None else int(i)

        return {
            "kind": self.kind,
            "u": lab(self.u),
            "v": lab(self.v),
            "c": self.c,
            "variant": self.variant,
            "candidates": self.candidate_count,
            "rounds": self.recolor_rounds,
            "pruned": self.pruned_nodes,
            "changed": [[lab(n), o, nw] for n, o, nw in self.changed],
            "micros": self.micros,
        }


# ---------------------------------------------------------------------------
# low-level operations (one per algorithm stage)


def color(g: Graph, cores, ws: UpdateWorkspace, seed: int, c: int) -> None:
    """DFS from seed over nodes at level c; reached nodes become candidates."""
    start, deg, adj = g.arrays()
    ws.cand_n = ws.kernels.color_plain(
        start, deg, adj, cores, ws.vstamp, ws.visit_epoch, ws.cstamp,
        ws.cbit, ws.color_epoch, ws.cand, ws.cand_n, ws.stack, seed, c)


def x_prune_color(g: Graph, cores, ws: UpdateWorkspace, seed: int,
                  c: int) -> None:
    """Coloring DFS with the upper-bound cut: a node whose at-or-above count
    is <= c is neither colored nor expanded."""
    start, deg, adj = g.arrays()
    ws.cand_n, pruned = ws.kernels.color_upper_cut(
        start, deg, adj, cores, ws.vstamp, ws.visit_epoch, ws.cstamp,
        ws.cbit, ws.color_epoch, ws.cand, ws.cand_n, ws.stack, seed, c)
    ws.pruned += pruned


def y_prune_color(g: Graph, cores, ws: UpdateWorkspace, seed: int,
                  c: int) -> None:
    """Coloring DFS with the lower-bound cut: a saturated node (strictly-above
    count == c) stays a candidate but stops the walk.  c == 0 keeps expanding."""
    start, deg, adj = g.arrays()
    ws.cand_n, pruned = ws.kernels.color_lower_cut(
        start, deg, adj, cores, ws.vstamp, ws.visit_epoch, ws.cstamp,
        ws.cbit, ws.color_epoch, ws.cand, ws.cand_n, ws.stack, seed, c)
    ws.pruned += pruned


def xy_prune_color(g: Graph, cores, ws: UpdateWorkspace, seed: int,
                   origin_seed: int | None, c: int) -> None:
    """Coloring DFS with both cuts; the strictly-above count skips the
    origin seed (pass None for no exception)."""
    start, deg, adj = g.arrays()
    origin = -1 if origin_seed is None else int(origin_seed)
    ws.cand_n, pruned = ws.kernels.color_both_cut(
        start, deg, adj, cores, ws.vstamp, ws.visit_epoch, ws.cstamp,
        ws.cbit, ws.color_epoch, ws.cand, ws.cand_n, ws.stack, seed,
        origin, c)
    ws.pruned += pruned


def recolor_insert(g: Graph, cores, ws: UpdateWorkspace, c: int) -> None:
    """Demote candidates whose support count is <= c until a fixpoint."""
    start, deg, adj = g.arrays()
    ws.rounds = ws.kernels.recolor(
        start, deg, adj, cores, ws.cstamp, ws.cbit, ws.color_epoch,
        ws.cand, ws.cand_n, c, c + 1)


def recolor_delete(g: Graph, cores, ws: UpdateWorkspace, c: int) -> None:
    """Demote candidates whose support count drops below c until a fixpoint."""
    start, deg, adj = g.arrays()
    ws.rounds = ws.kernels.recolor(
        start, deg, adj, cores, ws.cstamp, ws.cbit, ws.color_epoch,
        ws.cand, ws.cand_n, c, c)


def update_insert(cores, ws: UpdateWorkspace, c: int) -> list[int]:
    """Raise every still-colored candidate to c + 1; returns the node ids."""
    k = ws.kernels.apply_shift(ws.cand, ws.cand_n, ws.cstamp, ws.cbit,
                               ws.color_epoch, cores, 1, c + 1, ws.out)
    return [int(u) for u in ws.out[:k]]


def update_delete(cores, ws: UpdateWorkspace, c: int) -> list[int]:
    """Drop every demoted candidate to c - 1; returns the node ids."""
    k = ws.kernels.apply_shift(ws.cand, ws.cand_n, ws.cstamp, ws.cbit,
                               ws.color_epoch, cores, 0, c - 1, ws.out)
    return [int(u) for u in ws.out[:k]]


# ---------------------------------------------------------------------------
# drivers


def _count_ge(g: Graph, cores, ws: UpdateWorkspace, v: int, c: int) -> int:
    start, deg, adj = g.arrays()
    return int(ws.kernels.count_ge(start, deg, adj, cores, v, c))


def _count_gt(g: Graph, cores, ws: UpdateWorkspace, v: int, c: int) -> int:
    start, deg, adj = g.arrays()
    return int(ws.kernels.count_gt(start, deg, adj, cores, v, c))


def insert_and_maintain(g: Graph, cores, ws: UpdateWorkspace, u: int, v: int,
                        variant: str = "XY") -> UpdateReport:
    """Insert edge (u, v) and repair core numbers in place.

    The pivot is the smaller endpoint core; coloring seeds from the smaller
    endpoint (u on ties).  Variants Y/XY handle the equal-level special
    cases: a saturated endpoint cannot expand across the new edge, so the
    walk starts from the other endpoint, or from both when both saturate.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    t0 = time.perf_counter_ns()
    g.insert_edge(u, v)
    cu, cv = int(cores[u]), int(cores[v])
    c = min(cu, cv)
    ws.begin(g.num_ids)

    if variant == "N":
        color(g, cores, ws, v if cu > cv else u, c)
    elif variant == "X":
        x_prune_color(g, cores, ws, v if cu > cv else u, c)
    else:
        if cu == cv:
            sat_u = _count_gt(g, cores, ws, u, c) == c
            sat_v = _count_gt(g, cores, ws, v, c) == c
            if sat_u and sat_v:
                seeds = [u, v]
            elif sat_u:
                seeds = [v]
            else:
                seeds = [u]  # covers sat_v and the no-saturation case
        else:
            seeds = [v if cu > cv else u]
        if variant == "Y":
            for s in seeds:
                y_prune_color(g, cores, ws, s, c)
        else:  # XY
            # Equal-level endpoint short-circuit: if either endpoint's
            # at-or-above count cannot reach c + 1, neither endpoint can
            # move, hence nobody can.
            skip = (cu == cv and (_count_ge(g, cores, ws, u, c) <= c
                                  or _count_ge(g, cores, ws, v, c) <= c))
            if not skip:
                for s in seeds:
                    xy_prune_color(g, cores, ws, s, None, c)

    recolor_insert(g, cores, ws, c)
    raised = update_insert(cores, ws, c)
    micros = (time.perf_counter_ns() - t0) / 1000.0
    return UpdateReport(
        kind="insert", u=int(u), v=int(v), c=c, variant=variant,
        candidate_count=ws.cand_n, recolor_rounds=ws.rounds,
        changed=[(n, c, c + 1) for n in raised],
        pruned_nodes=ws.pruned, micros=micros)


def delete_and_maintain(g: Graph, cores, ws: UpdateWorkspace, u: int, v: int,
                        variant: str = "XY") -> UpdateReport:
    """Delete edge (u, v) and repair core numbers in place.

    The edge is removed before anything is evaluated, so endpoint counts are
    taken over the already-shrunk adjacency against the stale core numbers.
    Equal-level deletions color from u and, when v was not reached, reset
    visited flags and color from v as well.  Variants X/XY short-circuit on
    endpoints whose at-or-above count already sustains the level.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    t0 = time.perf_counter_ns()
    g.delete_edge(u, v)
    cu, cv = int(cores[u]), int(cores[v])
    c = min(cu, cv)
    ws.begin(g.num_ids)

    colorer = y_prune_color if variant in ("Y", "XY") else color
    ran = False
    if variant in ("X", "XY"):
        if cu != cv:
            s = v if cu > cv else u
            if _count_ge(g, cores, ws, s, c) < c:
                colorer(g, cores, ws, s, c)
                ran = True
        else:
            xu = _count_ge(g, cores, ws, u, c)
            xv = _count_ge(g, cores, ws, v, c)
            if xu < c and xv < c:
                colorer(g, cores, ws, u, c)
                if not ws.is_colored(v):
                    ws.reset_visited()
                    colorer(g, cores, ws, v, c)
                ran = True
            elif xu < c:
                colorer(g, cores, ws, u, c)
                ran = True
            elif xv < c:
                colorer(g, cores, ws, v, c)
                ran = True
    else:
        if cu != cv:
            colorer(g, cores, ws, v if cu > cv else u, c)
        else:
            colorer(g, cores, ws, u, c)
            if not ws.is_colored(v):
                ws.reset_visited()
                colorer(g, cores, ws, v, c)
        ran = True

    dropped: list[int] = []
    if ran:
        recolor_delete(g, cores, ws, c)
        dropped = update_delete(cores, ws, c)
    micros = (time.perf_counter_ns() - t0) / 1000.0
    return UpdateReport(
        kind="delete", u=int(u), v=int(v), c=c, variant=variant,
        candidate_count=ws.cand_n, recolor_rounds=ws.rounds,
        changed=[(n, c, c - 1) for n in dropped],
        pruned_nodes=ws.pruned, micros=micros)


def remove_node_and_maintain(g: Graph, cores, ws: UpdateWorkspace, u: int,
                             variant: str = "XY") -> list[UpdateReport]:
    """Remove a node as a sequence of maintained edge deletions, then tombstone."""
    reports = []
    for w in g.neighbors(u).copy():
        reports.append(delete_and_maintain(g, cores, ws, u, int(w), variant))
    g.remove_node(u)
    return reports
