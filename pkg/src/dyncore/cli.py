"""Command-line front end.

Commands:
    cores     decompose a graph and dump 'label core' lines
    update    apply an update file ("i u v" / "d u v") with one variant,
              emitting a JSON-lines record per update and a final core dump
    bench     run a timed trial and emit CSV
    gen       write a synthetic power-law edge list
    validate  structural + oracle invariant sweep

Exit codes: 0 ok, 1 usage error, 2 input error, 3 invariant violation.
All diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness, maintenance, static_core
from .graph import Graph, GraphError, InvariantError, dump_edge_list
from .graph import load_edge_list, validate as validate_graph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh)


def _write_out(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_cores(args) -> int:
    g = _load_graph(args.graph)
    cores = static_core.decompose(g, backend=args.backend)
    _write_out(static_core.dump_cores(g, cores), args.out)
    return EXIT_OK


def _label_index(g: Graph) -> dict[int, int]:
    return {int(lab): i for i, lab in enumerate(g.labels)}


def _cmd_update(args) -> int:
    g = _load_graph(args.graph)
    ids = _label_index(g)
    cores = static_core.decompose(g, backend=args.backend)
    ws = maintenance.UpdateWorkspace(g.num_ids, backend=args.backend)
    with open(args.updates, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("i", "d"):
            raise GraphError(f"{args.updates}:{lineno}: bad update line {line!r}")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphError(
                f"{args.updates}:{lineno}: non-integer node in {line!r}") from None
        if a not in ids or b not in ids:
            raise GraphError(
                f"{args.updates}:{lineno}: unknown node label in {line!r}")
        u, v = ids[a], ids[b]
        if args.variant == "B":
            before = cores
            if parts[0] == "i":
                g.insert_edge(u, v)
            else:
                g.delete_edge(u, v)
            cores = static_core.decompose(g, backend=args.backend)
            diff = np.flatnonzero(cores != before)
            rep = maintenance.UpdateReport(
                kind="insert" if parts[0] == "i" else "delete", u=u, v=v,
                c=int(min(before[u], before[v])), variant="B",
                changed=[(int(n), int(before[n]), int(cores[n])) for n in diff])
        elif parts[0] == "i":
            rep = maintenance.insert_and_maintain(g, cores, ws, u, v,
                                                  args.variant)
        else:
            rep = maintenance.delete_and_maintain(g, cores, ws, u, v,
                                                  args.variant)
        sys.stdout.write(json.dumps(rep.to_record(g.labels)) + "\n")
    _write_out(static_core.dump_cores(g, cores), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if bool(args.graph) == bool(args.gen_nodes):
        raise GraphError("bench needs exactly one of --graph / --gen-nodes")
    if args.graph:
        g = _load_graph(args.graph)
        dataset = args.graph
    else:
        g = harness.generate_power_law(args.gen_nodes, args.gen_mdeg,
                                       rng_seed=args.seed)
        dataset = f"pl-{args.gen_nodes}-{args.gen_mdeg}"
    variants = tuple(v.strip() for v in args.variants.split(",") if v.strip())
    cfg = harness.TrialConfig(
        num_deletions=args.dels, num_insertions=args.inss,
        variants=variants, rng_seed=args.seed, warmup=args.warmup)
    report = harness.run_trial(g, cfg, dataset=dataset, backend=args.backend)
    print(f"# {report.note}", file=sys.stderr)
    _write_out(harness.report_to_csv([report]), args.out)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            for name in variants:
                for rep in report.stats[name].reports:
                    fh.write(json.dumps(rep.to_record(g.labels)) + "\n")
    return EXIT_OK


def _cmd_gen(args) -> int:
    g = harness.generate_power_law(args.nodes, args.mdeg, rng_seed=args.seed)
    _write_out(dump_edge_list(g), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    validate_graph(g)
    cores = static_core.decompose(g, backend=args.backend)
    x, y = static_core.bounds_all(g, cores, backend=args.backend)
    live = g.live_nodes()
    deg = np.array([g.degree(int(u)) for u in live])
    chain = ((y[live] <= cores[live]) & (cores[live] <= x[live])
             & (x[live] <= deg))
    if not np.all(chain):
        raise InvariantError("bound chain violated on the loaded graph")
    if g.num_nodes <= 2000:
        if not np.array_equal(cores, static_core.brute_force_core(g)):
            raise InvariantError("decomposition disagrees with brute force")
    rng = np.random.default_rng(args.seed)
    for step in range(args.checks):
        op = "i" if step % 2 == 0 else "d"
        variants = ("N", "X", "Y", "XY")
        pick = _random_update(g, rng, op)
        if pick is None:
            continue
        u, v = pick
        states = []
        for variant in variants:
            g2 = g.copy()
            cs = cores.copy()
            ws = maintenance.UpdateWorkspace(g2.num_ids, backend=args.backend)
            if op == "i":
                maintenance.insert_and_maintain(g2, cs, ws, u, v, variant)
            else:
                maintenance.delete_and_maintain(g2, cs, ws, u, v, variant)
            oracle = static_core.decompose(g2, backend=args.backend)
            if not np.array_equal(cs, oracle):
                raise InvariantError(
                    f"variant {variant} wrong after {op} ({u}, {v})")
            states.append(cs)
        # advance the shared state with the checked update
        if op == "i":
            g.insert_edge(u, v)
        else:
            g.delete_edge(u, v)
        cores = states[0]
    print(f"validate: ok ({args.checks} randomized checks)", file=sys.stderr)
    return EXIT_OK


def _random_update(g: Graph, rng, op: str):
    live = g.live_nodes()
    if op == "d":
        packed = g.edges_packed()
        if len(packed) == 0:
            return None
        p = int(packed[rng.integers(0, len(packed))])
        return p >> 32, p & 0xFFFFFFFF
    if len(live) < 2:
        return None
    for _ in range(1000):
        a, b = (int(live[i]) for i in rng.integers(0, len(live), size=2))
        if a != b and not g.has_edge(a, b):
            return a, b
    return None


def build_parser() -> _Parser:
    parser = _Parser(prog="dyncore",
                     description="dynamic k-core maintenance toolkit")
    parser.add_argument("--backend", choices=("auto", "jit", "python"),
                        default=None, help="kernel backend override")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("cores", help="decompose a graph and dump core numbers")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_cores)

    p = sub.add_parser("update", help="apply an update file with one variant")
    p.add_argument("--graph", required=True)
    p.add_argument("--updates", required=True)
    p.add_argument("--variant", choices=harness.ALL_VARIANTS, default="XY")
    p.add_argument("--out", help="final core dump file (default stdout)")
    p.set_defaults(fn=_cmd_update)

    p = sub.add_parser("bench", help="run a timed random-update trial")
    p.add_argument("--graph")
    p.add_argument("--gen-nodes", type=int)
    p.add_argument("--gen-mdeg", type=int, default=5)
    p.add_argument("--dels", type=int, default=100)
    p.add_argument("--inss", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variants", default="B,N,X,Y,XY")
    p.add_argument("--warmup", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--jsonl", help="also write per-update JSON-lines records")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("gen", help="generate a power-law edge list")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--mdeg", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("validate", help="invariant sweep over a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--checks", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
