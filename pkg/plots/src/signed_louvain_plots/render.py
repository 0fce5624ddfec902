"""Render recovery heatmaps and quality-vs-time scatters from harness CSVs.

This package is coupled to the harness only through its versioned CSV
schemas. Rendering is pure: the same CSV yields a byte-identical PNG under a
pinned matplotlib version (the Agg backend is forced and rc defaults are
reset before every figure).
"""

import csv
import math

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt  # noqa: E402  (backend must be fixed first)

EXPECTED_SCHEMA = 1
SWEEP_HEADER = ["p_in", "p_out", "engine", "nmi_mean", "note"]
BENCH_HEADER = ["network", "engine", "run", "q", "wall_time_seconds"]

MARKERS = ["o", "s", "^", "D", "v", "P", "X", "*"]


class SchemaError(ValueError):
    """The CSV is not the schema this renderer understands."""


def read_schema_csv(path, expected_header, kind):
    with open(path, "r", encoding="utf-8", newline="") as stream:
        first = stream.readline().rstrip("\n")
        if first != f"# schema={EXPECTED_SCHEMA}":
            raise SchemaError(f"{path}: expected a {kind} CSV with schema={EXPECTED_SCHEMA}")
        rows = list(csv.reader(stream))
    if not rows or rows[0] != expected_header:
        raise SchemaError(f"{path}: expected a {kind} CSV with schema={EXPECTED_SCHEMA} "
                          f"and header {','.join(expected_header)}")
    body = rows[1:]
    if not body:
        raise SchemaError(f"{path}: no data rows")
    return body


def _fresh_figure():
    matplotlib.rcdefaults()
    plt.close("all")


def plot_sweep(csv_path, out_image_path):
    """One NMI heatmap per engine, side by side, color scale fixed to [0, 1].

    Returns the figure (also written to out_image_path as PNG).
    """
    rows = read_schema_csv(csv_path, SWEEP_HEADER, "sweep")
    cells = {}
    engines = []
    p_in_values = []
    p_out_values = []
    for p_in_raw, p_out_raw, engine, value_raw, _note in rows:
        p_in, p_out, value = float(p_in_raw), float(p_out_raw), float(value_raw)
        if math.isnan(value) or not 0.0 <= value <= 1.0:
            raise ValueError(f"{csv_path}: NMI value {value_raw} outside [0, 1]")
        key = (engine, p_in, p_out)
        if key in cells:
            raise ValueError(f"{csv_path}: duplicate cell {key}")
        cells[key] = value
        if engine not in engines:
            engines.append(engine)
        if p_in not in p_in_values:
            p_in_values.append(p_in)
        if p_out not in p_out_values:
            p_out_values.append(p_out)
    p_in_values.sort()
    p_out_values.sort()

    _fresh_figure()
    fig, axes = plt.subplots(
        1, len(engines), figsize=(3.4 * len(engines) + 1.2, 3.4),
        squeeze=False, constrained_layout=True)
    image = None
    for ax, engine in zip(axes[0], engines):
        matrix = [
            [cells.get((engine, p_in, p_out), float("nan")) for p_in in p_in_values]
            for p_out in p_out_values
        ]
        image = ax.imshow(matrix, origin="lower", vmin=0.0, vmax=1.0,
                          cmap="viridis", aspect="auto")
        ax.set_title(engine)
        ax.set_xticks(range(len(p_in_values)), [f"{p:g}" for p in p_in_values])
        ax.set_yticks(range(len(p_out_values)), [f"{p:g}" for p in p_out_values])
        ax.set_xlabel("p_in")
        ax.set_ylabel("p_out")
    fig.colorbar(image, ax=axes[0].tolist(), label="mean NMI")
    fig.savefig(out_image_path, dpi=100, format="png")
    return fig


def plot_bench(csv_path, out_image_path):
    """Per-network scatter of (mean duration, mean Q), one marker per engine.

    Consumes the summary rows (run column equal to "mean"); the duration axis
    is log-scaled. Returns the figure (also written to out_image_path).
    """
    rows = read_schema_csv(csv_path, BENCH_HEADER, "bench")
    means = {}
    networks = []
    engines = []
    for network, engine, run, q_raw, wall_raw in rows:
        if run != "mean":
            continue
        key = (network, engine)
        if key in means:
            raise ValueError(f"{csv_path}: duplicate summary row for {key}")
        means[key] = (float(wall_raw), float(q_raw))
        if network not in networks:
            networks.append(network)
        if engine not in engines:
            engines.append(engine)
    if not means:
        raise ValueError(f"{csv_path}: no summary (run=mean) rows")

    _fresh_figure()
    fig, axes = plt.subplots(
        1, len(networks), figsize=(3.6 * len(networks) + 0.8, 3.4),
        squeeze=False, constrained_layout=True)
    for ax, network in zip(axes[0], networks):
        for idx, engine in enumerate(engines):
            if (network, engine) not in means:
                continue
            wall, q = means[(network, engine)]
            ax.plot([wall], [q], marker=MARKERS[idx % len(MARKERS)],
                    linestyle="none", label=engine)
        ax.set_xscale("log")
        ax.set_title(network)
        ax.set_xlabel("mean duration (s)")
        ax.set_ylabel("mean Q")
    axes[0][-1].legend(loc="best")
    fig.savefig(out_image_path, dpi=100, format="png")
    return fig
