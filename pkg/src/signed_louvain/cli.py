"""Command-line harness: community detection, recovery sweeps, benchmarks, stats.

All CSV files start with a ``# schema=1`` comment line; rows parse back and
re-serialize byte-identically. Randomized commands are bit-reproducible for a
fixed ``--seed`` (benchmark wall-clock columns excepted, they are
measurements). ``--jobs`` (default from ``SIGNED_LOUVAIN_JOBS``) runs sweep
cells and benchmark runs in a process pool; rows are buffered and emitted in
task order regardless of completion order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import struct
import sys
from concurrent.futures import ProcessPoolExecutor
from hashlib import blake2b
from pathlib import Path
from statistics import mean

from .engines import EmptyNetworkError, EngineConfig, optimize
from .graph import EdgeListError, load_edge_list
from .metrics import graph_stats, nmi
from .modularity import Resolution
from .ssbm import SsbmSpec, generate

SCHEMA_VERSION = 1
SWEEP_HEADER = ["p_in", "p_out", "engine", "nmi_mean", "note"]
BENCH_HEADER = ["network", "engine", "run", "q", "wall_time_seconds"]
STATS_HEADER = ["network", "nodes", "edges", "pos_share", "density", "avg_distance", "diameter"]
PARTITION_HEADER = ["node", "community"]
REPORT_HEADER = ["engine", "runs", "q_mean", "q_best", "wall_time_mean_seconds", "levels"]

EMPTY_NETWORK_NOTE = "empty network"

# (strategy, d_pos, d_neg); the bare "hop" engine takes its radii from flags
ENGINE_ALIASES = {
    "classic": ("classic", 1, 1),
    "l": ("classic", 1, 1),
    "relaxed": ("relaxed", 1, 1),
    "rl": ("relaxed", 1, 1),
    "signed": ("hop", 1, 2),
    "sld": ("hop", 1, 2),
    "signed-ext": ("hop", 2, 2),
    "sle": ("hop", 2, 2),
}


class CliError(Exception):
    """Usage-level failure; reported on stderr with exit status 2."""


def derive_seed(base: int, *parts: int) -> int:
    """Stable 64-bit sub-seed for a task, independent of execution order."""
    packed = struct.pack(f"<{len(parts) + 1}Q", base, *parts)
    return int.from_bytes(blake2b(packed, digest_size=8).digest(), "little")


def format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def parse_csv(text: str):
    """Inverse of serialize_csv: returns (schema_version, header, string rows)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# schema="):
        raise ValueError("missing '# schema=' comment line")
    version = int(lines[0].split("=", 1)[1])
    reader = csv.reader(lines[1:])
    table = list(reader)
    if not table:
        raise ValueError("missing header row")
    return version, table[0], table[1:]


def resolve_engine(name: str, d_pos=None, d_neg=None):
    """Map an engine name or alias to (strategy, d_pos, d_neg, display name)."""
    key = name.strip().lower()
    if key == "hop":
        if d_pos is None or d_neg is None:
            raise CliError("--engine hop requires --dpos and --dneg")
        if d_pos < 1 or d_neg < 1:
            raise CliError("--dpos and --dneg must be at least 1")
        return "hop", d_pos, d_neg, name.strip()
    if key not in ENGINE_ALIASES:
        raise CliError(f"unknown engine {name!r}")
    if d_pos is not None or d_neg is not None:
        raise CliError("--dpos/--dneg are only valid with --engine hop")
    strategy, dp, dn = ENGINE_ALIASES[key]
    return strategy, dp, dn, name.strip()


def _load_graph(path: str):
    try:
        with open(path, "r", encoding="utf-8") as stream:
            return load_edge_list(stream)
    except OSError as exc:
        raise CliError(f"cannot read input file {path}: {exc.strerror or exc}") from exc


def _jobs_default() -> int:
    raw = os.environ.get("SIGNED_LOUVAIN_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_tasks(worker, tasks, jobs):
    """Evaluate tasks, in a process pool when jobs > 1; results in task order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks, chunksize=1))


# ---------------------------------------------------------------------------
# detect


def cmd_detect(args) -> int:
    strategy, d_pos, d_neg, display = resolve_engine(args.engine, args.dpos, args.dneg)
    if args.runs < 1:
        raise CliError("--runs must be at least 1")
    graph, labels = _load_graph(args.input)
    resolution = Resolution(gamma_pos=args.gamma_pos, gamma_neg=args.gamma_neg)
    reports = []
    for r in range(args.runs):
        config = EngineConfig(strategy=strategy, d_pos=d_pos, d_neg=d_neg,
                              resolution=resolution, seed=args.seed + r)
        reports.append(optimize(graph, config))
    best = max(reports, key=lambda rep: rep.q)
    _write_partition(args.out, args.format, labels, best.assignment)
    report_row = [display, args.runs, mean(r.q for r in reports), best.q,
                  mean(r.wall_time for r in reports), best.levels]
    if args.format == "json":
        payload = {"schema": SCHEMA_VERSION}
        payload.update(zip(REPORT_HEADER, report_row))
        sys.stdout.write(json.dumps(payload) + "\n")
    else:
        sys.stdout.write(serialize_csv(REPORT_HEADER, [report_row]))
    return 0


def _write_partition(path, fmt, labels, assignment):
    if fmt == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "assignment": {labels.label_of(i): c for i, c in enumerate(assignment)},
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = [(labels.label_of(i), c) for i, c in enumerate(assignment)]
        text = serialize_csv(PARTITION_HEADER, rows)
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# sweep


def _sweep_cell(task):
    (sizes, p_in, p_out, base_seed, i_in, i_out,
     strategy, d_pos, d_neg, seeds_per_cell) = task
    values = []
    empties = 0
    for k in range(seeds_per_cell):
        spec = SsbmSpec(sizes, p_in, p_out, derive_seed(base_seed, i_in, i_out, k))
        graph, planted = generate(spec)
        if graph.m_total == 0:
            values.append(0.0)
            empties += 1
            continue
        config = EngineConfig(strategy=strategy, d_pos=d_pos, d_neg=d_neg,
                              seed=derive_seed(base_seed, i_in, i_out, k, 1))
        report = optimize(graph, config)
        values.append(nmi(report.assignment, planted))
    return mean(values), empties


def cmd_sweep(args) -> int:
    engines = _parse_engine_list(args.engines)
    sizes = _parse_sizes(args.sizes)
    if args.grid_step <= 0:
        raise CliError("--grid-step must be positive")
    if not 0 <= args.grid_max <= 1:
        raise CliError("--grid-max must be in [0, 1]")
    if args.seeds_per_cell < 1:
        raise CliError("--seeds-per-cell must be at least 1")
    steps = int(args.grid_max / args.grid_step + 1e-9)
    grid = [round(i * args.grid_step, 10) for i in range(steps + 1)]
    tasks = []
    keys = []
    for i_in, p_in in enumerate(grid):
        for i_out, p_out in enumerate(grid):
            for strategy, d_pos, d_neg, display in engines:
                tasks.append((sizes, p_in, p_out, args.seed, i_in, i_out,
                              strategy, d_pos, d_neg, args.seeds_per_cell))
                keys.append((p_in, p_out, display))
    results = _run_tasks(_sweep_cell, tasks, args.jobs)
    rows = []
    for (p_in, p_out, display), (value, empties) in zip(keys, results):
        note = EMPTY_NETWORK_NOTE if empties > 0 else ""
        rows.append((p_in, p_out, display, value, note))
    Path(args.out).write_text(serialize_csv(SWEEP_HEADER, rows), encoding="utf-8")
    return 0


def _parse_engine_list(raw: str):
    names = [n for n in (part.strip() for part in raw.split(",")) if n]
    if not names:
        raise CliError("engine list is empty")
    return [resolve_engine(name) for name in names]


def _parse_sizes(raw: str):
    try:
        sizes = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise CliError(f"bad --sizes value {raw!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise CliError("--sizes must be positive integers")
    return sizes


# ---------------------------------------------------------------------------
# bench


def _bench_run(task):
    path, strategy, d_pos, d_neg, seed = task
    with open(path, "r", encoding="utf-8") as stream:
        graph, _ = load_edge_list(stream)
    config = EngineConfig(strategy=strategy, d_pos=d_pos, d_neg=d_neg, seed=seed)
    report = optimize(graph, config)
    return report.q, report.wall_time


def cmd_bench(args) -> int:
    engines = _parse_engine_list(args.engines)
    if args.runs < 1:
        raise CliError("--runs must be at least 1")
    networks = []
    failed = False
    for path in args.inputs:
        try:
            graph, _ = _load_graph(path)
            if graph.m_total == 0:
                raise CliError(f"input file {path} holds an empty network")
            networks.append((Path(path).stem, path))
        except (CliError, EdgeListError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            failed = True
    tasks = []
    for net_idx, (_, path) in enumerate(networks):
        for strategy, d_pos, d_neg, _ in engines:
            for run in range(args.runs):
                tasks.append((path, strategy, d_pos, d_neg,
                              derive_seed(args.seed, net_idx, run)))
    results = _run_tasks(_bench_run, tasks, args.jobs)
    rows = []
    cursor = 0
    for name, _ in networks:
        for _, _, _, display in engines:
            chunk = results[cursor:cursor + args.runs]
            cursor += args.runs
            for run, (q, wall) in enumerate(chunk):
                rows.append((name, display, run, q, wall))
            best_q, best_wall = max(chunk, key=lambda pair: pair[0])
            rows.append((name, display, "mean", mean(q for q, _ in chunk),
                         mean(w for _, w in chunk)))
            rows.append((name, display, "best", best_q, best_wall))
    Path(args.out).write_text(serialize_csv(BENCH_HEADER, rows), encoding="utf-8")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args) -> int:
    rows = []
    failed = False
    for path in args.inputs:
        try:
            graph, _ = _load_graph(path)
        except (CliError, EdgeListError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            failed = True
            continue
        s = graph_stats(graph)
        rows.append((Path(path).stem, s.nodes, s.edges, s.pos_share,
                     s.density, s.avg_distance, s.diameter))
    if args.format == "csv":
        sys.stdout.write(serialize_csv(STATS_HEADER, rows))
    elif args.format == "json":
        payload = [dict(zip(STATS_HEADER, row)) for row in rows]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        table = [STATS_HEADER] + [[format_value(v) for v in row] for row in rows]
        widths = [max(len(line[col]) for line in table) for col in range(len(STATS_HEADER))]
        for line in table:
            sys.stdout.write("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() + "\n")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signed-louvain",
        description="Community detection on signed networks via signed-modularity optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="detect communities in one edge-list file")
    detect.add_argument("--input", required=True, help="edge-list file (u v w lines)")
    detect.add_argument("--engine", required=True,
                        help="classic | relaxed | signed | signed-ext | hop")
    detect.add_argument("--dpos", type=int, default=None, help="positive-layer hop radius (hop engine)")
    detect.add_argument("--dneg", type=int, default=None, help="negative-layer hop radius (hop engine)")
    detect.add_argument("--gamma-pos", type=float, default=1.0)
    detect.add_argument("--gamma-neg", type=float, default=1.0)
    detect.add_argument("--seed", type=int, default=0)
    detect.add_argument("--runs", type=int, default=1, help="independent seeded runs; best-Q partition is written")
    detect.add_argument("--out", required=True, help="partition output file")
    detect.add_argument("--format", choices=["csv", "json"], default="csv")
    detect.set_defaults(func=cmd_detect)

    sweep = sub.add_parser("sweep", help="planted-partition recovery sweep over a probability grid")
    sweep.add_argument("--sizes", default="30,20,10", help="comma-separated block sizes")
    sweep.add_argument("--grid-max", type=float, default=0.8)
    sweep.add_argument("--grid-step", type=float, default=0.1)
    sweep.add_argument("--seeds-per-cell", type=int, default=10)
    sweep.add_argument("--engines", default="classic,relaxed,signed", help="comma-separated engine names")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.add_argument("--jobs", type=int, default=_jobs_default())
    sweep.set_defaults(func=cmd_sweep)

    bench = sub.add_parser("bench", help="timed repeated runs per network and engine")
    bench.add_argument("--inputs", nargs="+", required=True, help="edge-list files")
    bench.add_argument("--engines", default="L,RL,SLd,SLe", help="comma-separated engine names")
    bench.add_argument("--runs", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", required=True, help="CSV output path")
    bench.add_argument("--jobs", type=int, default=_jobs_default())
    bench.set_defaults(func=cmd_bench)

    stats = sub.add_parser("stats", help="structural summary per network")
    stats.add_argument("--inputs", nargs="+", required=True, help="edge-list files")
    stats.add_argument("--format", choices=["csv", "json", "text"], default="text")
    stats.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EdgeListError, EmptyNetworkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
