"""Benchmark harness: random update streams, per-variant timing, speedups.

A trial deletes a batch of uniformly random existing edges and then inserts
uniformly random absent pairs (fresh pairs, sampled against the evolving
edge set - an earlier deletion can be re-drawn only by chance).  Each
requested variant replays the identical stream on its own copy of the graph;
variant B times a full static decomposition per update, the incremental
variants time the maintenance call.  After the trial every variant's final
core state must agree, and must agree with a fresh decomposition - a
divergence raises, it is never swallowed.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, InvariantError
from .maintenance import UpdateReport, UpdateWorkspace, VARIANTS
from .maintenance import delete_and_maintain, insert_and_maintain
from .static_core import decompose

ALL_VARIANTS = ("B",) + VARIANTS

STREAM_NOTE = ("deletions are uniform over existing edges; insertions are "
               "fresh uniform absent pairs, not replays of the deletions")


@dataclass(frozen=True)
class TrialConfig:
    num_deletions: int
    num_insertions: int
    variants: tuple[str, ...] = ALL_VARIANTS
    rng_seed: int = 0
    warmup: int = 0

    def __post_init__(self):
        if self.num_deletions < 0 or self.num_insertions < 0:
            raise ValueError("update counts must be >= 0")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        for v in self.variants:
            if v not in ALL_VARIANTS:
                raise ValueError(f"unknown variant {v!r}")


@dataclass
class VariantStats:
    variant: str
    avg_del_s: float
    avg_ins_s: float
    avg_upd_s: float
    mom_del_s: float                  # median of chunk means, jitter-resistant
    mom_ins_s: float
    speedup: float | None             # avg_upd(B) / avg_upd(self)
    candidate_sizes: dict[str, float]
    reports: list[UpdateReport] = field(default_factory=list)


@dataclass
class BenchReport:
    dataset: str
    config: TrialConfig
    stream: list[tuple[str, int, int]]
    stats: dict[str, VariantStats]
    final_cores: np.ndarray
    note: str = STREAM_NOTE


def _median_of_means(samples: np.ndarray, chunks: int = 10) -> float:
    if len(samples) == 0:
        return 0.0
    parts = np.array_split(samples, min(chunks, len(samples)))
    return float(np.median([p.mean() for p in parts]))


def _size_summary(sizes: list[int]) -> dict[str, float]:
    if not sizes:
        return {"min": 0.0, "mean": 0.0, "p50": 0.0, "p90": 0.0, "max": 0.0}
    arr = np.asarray(sizes, dtype=np.float64)
    return {
        "min": float(arr.min()),
        "mean": float(arr.mean()),
        "p50": float(np.percentile(arr, 50)),
        "p90": float(np.percentile(arr, 90)),
        "max": float(arr.max()),
    }


def build_stream(g: Graph, cfg: TrialConfig) -> list[tuple[str, int, int]]:
    """Deterministic update stream for (graph, seed): deletions then insertions."""
    if cfg.num_deletions > g.num_edges:
        raise ValueError(
            f"cannot delete {cfg.num_deletions} edges from a graph with "
            f"{g.num_edges}")
    rng = np.random.default_rng(cfg.rng_seed)
    stream: list[tuple[str, int, int]] = []
    packed = g.edges_packed()
    scratch = set(packed.tolist())
    if cfg.num_deletions:
        idx = rng.choice(len(packed), size=cfg.num_deletions, replace=False)
        for p in packed[np.sort(idx)]:
            p = int(p)
            u, v = p >> 32, p & 0xFFFFFFFF
            stream.append(("d", u, v))
            scratch.remove(p)
    live = g.live_nodes()
    if cfg.num_insertions and len(live) < 2:
        raise ValueError("need at least two live nodes to insert edges")
    for _ in range(cfg.num_insertions):
        while True:
            a, b = (int(live[i]) for i in rng.integers(0, len(live), size=2))
            if a == b:
                continue
            key = (min(a, b) << 32) | max(a, b)
            if key in scratch:
                continue
            scratch.add(key)
            stream.append(("i", a, b))
            break
    return stream


def _replay(g0: Graph, stream, variant: str, warmup: int, backend):
    g = g0.copy()
    cores = decompose(g, backend=backend)
    ws = UpdateWorkspace(g.num_ids, backend=backend)
    del_times: list[float] = []
    ins_times: list[float] = []
    reports: list[UpdateReport] = []
    seen = {"d": 0, "i": 0}
    for op, u, v in stream:
        seen[op] += 1
        timed = seen[op] > warmup
        if variant == "B":
            before = cores
            if op == "d":
                g.delete_edge(u, v)
            else:
                g.insert_edge(u, v)
            t0 = time.perf_counter_ns()
            cores = decompose(g, backend=backend)
            dt = (time.perf_counter_ns() - t0) / 1e9
            diff = np.flatnonzero(cores != before)
            rep = UpdateReport(
                kind="delete" if op == "d" else "insert", u=u, v=v,
                c=int(min(before[u], before[v])), variant="B",
                changed=[(int(n), int(before[n]), int(cores[n]))
                         for n in diff],
                micros=dt * 1e6)
        else:
            if op == "d":
                rep = delete_and_maintain(g, cores, ws, u, v, variant)
            else:
                rep = insert_and_maintain(g, cores, ws, u, v, variant)
            dt = rep.micros / 1e6
        reports.append(rep)
        if timed:
            (del_times if op == "d" else ins_times).append(dt)
    return g, cores, del_times, ins_times, reports


def run_trial(g: Graph, cfg: TrialConfig, dataset: str = "",
              backend: str | None = None) -> BenchReport:
    """Time every requested variant over one random update stream."""
    stream = build_stream(g, cfg)
    finals: dict[str, np.ndarray] = {}
    stats: dict[str, VariantStats] = {}
    final_graph: Graph | None = None
    for variant in cfg.variants:
        g2, cores, dels, inss, reports = _replay(
            g, stream, variant, cfg.warmup, backend)
        finals[variant] = cores
        final_graph = g2
        d = np.asarray(dels)
        i = np.asarray(inss)
        avg_d = float(d.mean()) if len(d) else 0.0
        avg_i = float(i.mean()) if len(i) else 0.0
        stats[variant] = VariantStats(
            variant=variant,
            avg_del_s=avg_d,
            avg_ins_s=avg_i,
            avg_upd_s=(avg_d + avg_i) / 2 if (len(d) and len(i))
            else (avg_d or avg_i),
            mom_del_s=_median_of_means(d),
            mom_ins_s=_median_of_means(i),
            speedup=None,
            candidate_sizes=_size_summary(
                [r.candidate_count for r in reports if r.variant != "B"]),
            reports=reports,
        )
    names = list(cfg.variants)
    ref = finals[names[0]]
    for name in names[1:]:
        if not np.array_equal(finals[name], ref):
            raise InvariantError(
                f"variant {name} diverged from {names[0]} after the trial")
    assert final_graph is not None
    oracle = decompose(final_graph, backend=backend)
    if not np.array_equal(ref, oracle):
        raise InvariantError("final cores disagree with a fresh decomposition")
    if "B" in stats:
        base = stats["B"].avg_upd_s
        for s in stats.values():
            s.speedup = base / s.avg_upd_s if s.avg_upd_s > 0 else None
    return BenchReport(dataset=dataset, config=cfg, stream=stream,
                       stats=stats, final_cores=ref)


def generate_power_law(n: int, m_per_node: int = 5,
                       rng_seed: int = 0) -> Graph:
    """Preferential-attachment graph with roughly n * m_per_node edges.

    Starts from a clique on m_per_node + 1 nodes; each later node attaches
    to a random number of distinct targets drawn uniformly from
    [1, 2 * m_per_node - 1] (mean m_per_node), chosen proportionally to
    current degree.  The spread of attachment counts keeps the core-number
    profile heterogeneous like the real networks this models, while the
    node:edge ratio stays 1:m_per_node in expectation.
    """
    n = int(n)
    m = int(m_per_node)
    if m < 1 or n <= m:
        raise ValueError("need n > m_per_node >= 1")
    rng = np.random.default_rng(rng_seed)
    m0 = m + 1
    counts = rng.integers(1, 2 * m, size=max(0, n - m0))
    counts = np.minimum(counts, np.arange(m0, n))
    total = m0 * (m0 - 1) // 2 + int(counts.sum())
    eu = np.empty(total, dtype=np.int64)
    ev = np.empty(total, dtype=np.int64)
    rep = np.empty(2 * total, dtype=np.int64)
    e = 0
    k = 0
    for i in range(m0):
        for j in range(i + 1, m0):
            eu[e] = i
            ev[e] = j
            e += 1
            rep[k] = i
            rep[k + 1] = j
            k += 2
    for t, v in enumerate(range(m0, n)):
        d = int(counts[t])
        picks = rep[rng.integers(0, k, size=2 * d)]
        targets: list[int] = []
        seen: set[int] = set()
        for p in picks:
            p = int(p)
            if p not in seen:
                seen.add(p)
                targets.append(p)
                if len(targets) == d:
                    break
        while len(targets) < d:
            p = int(rep[rng.integers(0, k)])
            if p not in seen:
                seen.add(p)
                targets.append(p)
        for tgt in targets:
            eu[e] = v
            ev[e] = tgt
            e += 1
            rep[k] = v
            rep[k + 1] = tgt
            k += 2
    return Graph.from_edges(n, eu, ev)


def breakeven(g: Graph, cfg: TrialConfig, r_values: list[int],
              report: BenchReport | None = None) -> list[dict]:
    """Batch break-even table: r incremental updates vs one recomputation.

    Uses an existing trial report when given (it must cover B and XY),
    otherwise runs the trial first.
    """
    if report is None:
        report = run_trial(g, cfg)
    for need in ("B", "XY"):
        if need not in report.stats:
            raise ValueError(f"trial must include variant {need}")
    t_full = report.stats["B"].avg_upd_s
    t_inc = report.stats["XY"].avg_upd_s
    rows = []
    for r in r_values:
        incremental = r * t_inc
        rows.append({
            "r": int(r),
            "incremental_s": incremental,
            "recompute_s": t_full,
            "winner": "XY" if incremental <= t_full else "B",
        })
    return rows


def report_to_csv(reports: list[BenchReport]) -> str:
    """CSV rows: dataset, variant, avg_del_ms, avg_ins_ms, avg_upd_ms, speedup."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["dataset", "variant", "avg_del_ms", "avg_ins_ms",
                "avg_upd_ms", "speedup"])
    for rep in reports:
        for name in rep.config.variants:
            s = rep.stats[name]
            w.writerow([
                rep.dataset, name,
                f"{s.avg_del_s * 1e3:.6f}",
                f"{s.avg_ins_s * 1e3:.6f}",
                f"{s.avg_upd_s * 1e3:.6f}",
                f"{s.speedup:.3f}" if s.speedup is not None else "",
            ])
    return buf.getvalue()
