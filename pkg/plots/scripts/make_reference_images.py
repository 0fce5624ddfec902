#!/usr/bin/env python3
"""Regenerate the committed reference images from the fixture CSVs.

Run from the plots/ directory after a deliberate rendering change:

    python3 scripts/make_reference_images.py
"""

from pathlib import Path

from signed_louvain_plots import plot_bench, plot_sweep

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

plot_sweep(DATA / "sweep_fixture.csv", DATA / "ref_sweep.png")
plot_bench(DATA / "bench_fixture.csv", DATA / "ref_bench.png")
print("wrote", DATA / "ref_sweep.png")
print("wrote", DATA / "ref_bench.png")
