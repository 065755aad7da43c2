"""Randomized benchmark harness: CSV to stdout, optional figures on disk.

Deterministic given (--seed, --lengths, --sigma). Reports, per instance,
the structural sizes, build time, digit count of |MCS|, the analytic
enumeration frame ratio, and the per-(l,m) node multiplicity (which must
stay below 2n). When a plot directory is given, node growth and build
time are also rendered to PNG files alongside the CSV stream.
"""

from __future__ import annotations

import csv
import random
import string
import sys
import time

from .builder import build_mdag, compact_mdag, stats
from .query import annotate_counts, expected_frames

CSV_COLUMNS = [
    "n",
    "sigma",
    "seed",
    "nodes",
    "edges",
    "build_ms",
    "mcs_count_digits",
    "frames_per_solution",
    "max_lm_multiplicity",
]


def bench_alphabet(sigma: int) -> bytes:
    if not 1 <= sigma <= 26:
        raise ValueError(f"sigma must be in [1, 26], got {sigma}")
    if sigma == 4:
        return b"ACGT"
    return string.ascii_uppercase[:sigma].encode("ascii")


def random_pair(n: int, sigma: int, seed: int) -> tuple[bytes, bytes]:
    """Deterministic random instance for a given (n, sigma, seed)."""
    rng = random.Random(f"mcsdag-bench:{seed}:{n}:{sigma}")
    alphabet = bench_alphabet(sigma)
    x = bytes(rng.choice(alphabet) for _ in range(n))
    y = bytes(rng.choice(alphabet) for _ in range(n))
    return x, y


def bench_instance(n: int, sigma: int, seed: int) -> dict:
    x, y = random_pair(n, sigma, seed)
    t0 = time.perf_counter()
    g = build_mdag(x, y)
    pre_stats = stats(g)
    compact_mdag(g)
    build_ms = (time.perf_counter() - t0) * 1000.0
    ann = annotate_counts(g)
    frames = expected_frames(g)
    return {
        "n": n,
        "sigma": sigma,
        "seed": seed,
        "nodes": pre_stats["nodes"],
        "edges": pre_stats["edges"],
        "build_ms": round(build_ms, 3),
        "mcs_count_digits": len(str(ann.total)),
        "frames_per_solution": round(frames / ann.total, 4),
        "max_lm_multiplicity": pre_stats["max_lm_multiplicity"],
        "_antichain_violations": pre_stats["antichain_violations"],
    }


def run_bench(
    lengths: list[int],
    sigma: int,
    seed: int,
    plot_dir: str | None = None,
    out=None,
) -> list[dict]:
    out = out or sys.stdout
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    rows = []
    for n in lengths:
        row = bench_instance(n, sigma, seed)
        if row["max_lm_multiplicity"] >= 2 * n:
            raise AssertionError(
                f"per-(l,m) multiplicity {row['max_lm_multiplicity']} >= 2n at n={n}"
            )
        if row["_antichain_violations"]:
            raise AssertionError(f"swing antichain violated at n={n}")
        writer.writerow([row[c] for c in CSV_COLUMNS])
        rows.append(row)
    fitted_c = max(row["nodes"] / row["n"] ** 3 for row in rows)
    print(f"# fitted_C (nodes <= C * n^3): {fitted_c:.6g}", file=sys.stderr)
    if plot_dir is not None:
        render_figures(rows, fitted_c, plot_dir)
    return rows


def render_figures(rows: list[dict], fitted_c: float, plot_dir) -> None:
    """Render node-growth and build-time figures next to the CSV output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from pathlib import Path

    out = Path(plot_dir)
    out.mkdir(parents=True, exist_ok=True)
    ns = [r["n"] for r in rows]
    nodes = [r["nodes"] for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, nodes, "o-", label="measured nodes")
    ax.plot(ns, [fitted_c * n**3 for n in ns], "--", label=f"C·n³ (C={fitted_c:.3g})")
    ax.set_xlabel("n")
    ax.set_ylabel("nodes")
    ax.set_yscale("log")
    ax.legend()
    ax.set_title("MDAG node growth")
    fig.tight_layout()
    fig.savefig(out / "nodes_vs_n.png", dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r["build_ms"] for r in rows], "o-")
    ax.set_xlabel("n")
    ax.set_ylabel("build time (ms)")
    ax.set_title("MDAG build time")
    fig.tight_layout()
    fig.savefig(out / "build_ms_vs_n.png", dpi=120)
    plt.close(fig)
