"""Hot inner loops for core decomposition and incremental maintenance.

Every kernel here is nopython-compatible Python over flat int64/int8 arrays:
the adjacency arena (``start``/``deg``/``adj``), the core-number array, and
the epoch-stamped visited/color scratch arrays owned by the update workspace.

Two backends are built from the same source functions: a numba ``@njit``
backend (used by default when numba imports) and the plain interpreted
backend.  ``DYNCORE_JIT=0`` in the environment forces the interpreted path;
``get_kernels()`` hands out either one explicitly so the two can be compared
in-process (see benchmarks/jit_vs_python.py and tests/test_kernels.py).
"""

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False


def _env_wants_jit() -> bool:
    flag = os.environ.get("DYNCORE_JIT", "").strip().lower()
    return flag not in ("0", "false", "off", "no")


JIT_ENABLED = HAS_NUMBA and _env_wants_jit()


# ---------------------------------------------------------------------------
# static decomposition


def _peel_cores(n, start, deg, adj, core):
    # Bucket-sorted minimum-degree peeling, O(n + m).  Nodes are kept in
    # `vert` ordered by current degree; `bins[d]` is the first index of the
    # degree-d block.  Decrementing a neighbor swaps it to the front of its
    # block and advances the block boundary.
    if n == 0:
        return
    d = deg.copy()
    md = 0
    for v in range(n):
        if d[v] > md:
            md = d[v]
    bins = np.zeros(md + 2, dtype=np.int64)
    for v in range(n):
        bins[d[v]] += 1
    total = 0
    for i in range(md + 1):
        cnt = bins[i]
        bins[i] = total
        total += cnt
    pos = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    for v in range(n):
        pos[v] = bins[d[v]]
        vert[pos[v]] = v
        bins[d[v]] += 1
    for i in range(md, 0, -1):
        bins[i] = bins[i - 1]
    bins[0] = 0
    for i in range(n):
        v = vert[i]
        core[v] = d[v]
        for j in range(start[v], start[v] + deg[v]):
            w = adj[j]
            if d[w] > d[v]:
                dw = d[w]
                pw = pos[w]
                ps = bins[dw]
                s = vert[ps]
                if s != w:
                    vert[ps] = w
                    vert[pw] = s
                    pos[w] = ps
                    pos[s] = pw
                bins[dw] += 1
                d[w] = dw - 1


# ---------------------------------------------------------------------------
# neighbor counts against a threshold core level


def _count_ge(start, deg, adj, core, v, c):
    x = 0
    for j in range(start[v], start[v] + deg[v]):
        if core[adj[j]] >= c:
            x += 1
    return x


def _count_gt(start, deg, adj, core, v, c):
    y = 0
    for j in range(start[v], start[v] + deg[v]):
        if core[adj[j]] > c:
            y += 1
    return y


def _bounds_all(n, start, deg, adj, core, x_out, y_out):
    # Per-node counts of neighbors at/above the node's own level.
    for v in range(n):
        cv = core[v]
        x = 0
        y = 0
        for j in range(start[v], start[v] + deg[v]):
            cw = core[adj[j]]
            if cw >= cv:
                x += 1
                if cw > cv:
                    y += 1
        x_out[v] = x
        y_out[v] = y


# ---------------------------------------------------------------------------
# coloring DFS variants (explicit stack; nodes are marked visited when
# pushed so each is processed exactly once)


def _color_plain(start, deg, adj, core, vstamp, vepoch, cstamp, cbit, cepoch,
                 cand, cand_n, stack, seed, c):
    top = 0
    stack[top] = seed
    top += 1
    vstamp[seed] = vepoch
    while top > 0:
        top -= 1
        u = stack[top]
        if not (cstamp[u] == cepoch and cbit[u] == 1):
            cstamp[u] = cepoch
            cbit[u] = 1
            cand[cand_n] = u
            cand_n += 1
        for j in range(start[u], start[u] + deg[u]):
            w = adj[j]
            if core[w] == c and vstamp[w] != vepoch:
                vstamp[w] = vepoch
                stack[top] = w
                top += 1
    return cand_n


def _color_upper_cut(start, deg, adj, core, vstamp, vepoch, cstamp, cbit,
                     cepoch, cand, cand_n, stack, seed, c):
    # Cut the walk at nodes whose at-or-above neighbor count cannot support
    # a raise past c; cut nodes are neither colored nor expanded.
    pruned = 0
    top = 0
    stack[top] = seed
    top += 1
    vstamp[seed] = vepoch
    while top > 0:
        top -= 1
        u = stack[top]
        x = 0
        for j in range(start[u], start[u] + deg[u]):
            if core[adj[j]] >= c:
                x += 1
        if x <= c:
            pruned += 1
            continue
        if not (cstamp[u] == cepoch and cbit[u] == 1):
            cstamp[u] = cepoch
            cbit[u] = 1
            cand[cand_n] = u
            cand_n += 1
        for j in range(start[u], start[u] + deg[u]):
            w = adj[j]
            if core[w] == c and vstamp[w] != vepoch:
                vstamp[w] = vepoch
                stack[top] = w
                top += 1
    return cand_n, pruned


def _color_lower_cut(start, deg, adj, core, vstamp, vepoch, cstamp, cbit,
                     cepoch, cand, cand_n, stack, seed, c):
    # A node whose strictly-above neighbor count saturates its level stays
    # in the candidate set but stops the walk (nothing beyond it can move).
    # c == 0 must keep expanding or an update between level-0 nodes would
    # never cross the touched edge.
    pruned = 0
    top = 0
    stack[top] = seed
    top += 1
    vstamp[seed] = vepoch
    while top > 0:
        top -= 1
        u = stack[top]
        if not (cstamp[u] == cepoch and cbit[u] == 1):
            cstamp[u] = cepoch
            cbit[u] = 1
            cand[cand_n] = u
            cand_n += 1
        y = 0
        for j in range(start[u], start[u] + deg[u]):
            if core[adj[j]] > c:
                y += 1
        if y < c or c == 0:
            for j in range(start[u], start[u] + deg[u]):
                w = adj[j]
                if core[w] == c and vstamp[w] != vepoch:
                    vstamp[w] = vepoch
                    stack[top] = w
                    top += 1
        else:
            pruned += 1
    return cand_n, pruned


def _color_both_cut(start, deg, adj, core, vstamp, vepoch, cstamp, cbit,
                    cepoch, cand, cand_n, stack, seed, origin, c):
    # Combined cuts: the upper-bound count gates coloring and expansion, the
    # lower-bound count additionally gates expansion.  The strictly-above
    # count skips accumulation at `origin` (pass -1 for no exception).
    pruned = 0
    top = 0
    stack[top] = seed
    top += 1
    vstamp[seed] = vepoch
    while top > 0:
        top -= 1
        u = stack[top]
        x = 0
        y = 0
        for j in range(start[u], start[u] + deg[u]):
            cw = core[adj[j]]
            if cw >= c:
                x += 1
                if u != origin and cw > c:
                    y += 1
        if x <= c:
            pruned += 1
            continue
        if not (cstamp[u] == cepoch and cbit[u] == 1):
            cstamp[u] = cepoch
            cbit[u] = 1
            cand[cand_n] = u
            cand_n += 1
        if y < c or c == 0:
            for j in range(start[u], start[u] + deg[u]):
                w = adj[j]
                if core[w] == c and vstamp[w] != vepoch:
                    vstamp[w] = vepoch
                    stack[top] = w
                    top += 1
        else:
            pruned += 1
    return cand_n, pruned


# ---------------------------------------------------------------------------
# recoloring fixpoint and core application


def _recolor(start, deg, adj, core, cstamp, cbit, cepoch, cand, cand_n, c,
             demote_below):
    # Whole-set passes until no demotion.  A candidate's support counts
    # neighbors that are either still colored this update or already above
    # level c; demoted candidates deliberately stop contributing even though
    # their stored core is still c - that is what makes the fixpoint sound.
    rounds = 0
    while True:
        rounds += 1
        changed = False
        for i in range(cand_n):
            u = cand[i]
            if cbit[u] == 1 and cstamp[u] == cepoch:
                x = 0
                for j in range(start[u], start[u] + deg[u]):
                    w = adj[j]
                    if core[w] > c or (cstamp[w] == cepoch and cbit[w] == 1):
                        x += 1
                if x < demote_below:
                    cbit[u] = 0
                    changed = True
        if not changed:
            break
    return rounds


def _apply_shift(cand, cand_n, cstamp, cbit, cepoch, core, want_bit,
                 new_core, out):
    k = 0
    for i in range(cand_n):
        u = cand[i]
        bit = 0
        if cstamp[u] == cepoch and cbit[u] == 1:
            bit = 1
        if bit == want_bit:
            core[u] = new_core
            out[k] = u
            k += 1
    return k


# ---------------------------------------------------------------------------
# backend assembly

_SOURCES = {
    "peel_cores": _peel_cores,
    "count_ge": _count_ge,
    "count_gt": _count_gt,
    "bounds_all": _bounds_all,
    "color_plain": _color_plain,
    "color_upper_cut": _color_upper_cut,
    "color_lower_cut": _color_lower_cut,
    "color_both_cut": _color_both_cut,
    "recolor": _recolor,
    "apply_shift": _apply_shift,
}

python = SimpleNamespace(name="python", **_SOURCES)

if HAS_NUMBA:
    jit = SimpleNamespace(
        name="jit",
        **{k: numba.njit(cache=True)(f) for k, f in _SOURCES.items()},
    )
else:  # pragma: no cover
    jit = None

active = jit if JIT_ENABLED else python


def get_kernels(backend=None):
    """Return a kernel namespace: None for the default, 'jit' or 'python'."""
    if backend is None or backend == "auto":
        return active
    if backend == "python":
        return python
    if backend == "jit":
        if jit is None:
            raise RuntimeError("numba is not available; jit backend missing")
        return jit
    raise ValueError(f"unknown kernel backend: {backend!r}")
