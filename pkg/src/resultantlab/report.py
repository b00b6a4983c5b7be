"""Delimited output, JSON reports, run manifests, and the optional figure
rendering that accompanies them.

Everything written here is byte-deterministic for a fixed (command, seed,
precision) triple: JSON is dumped with sorted keys, CSV rows follow the
deterministic iteration order of the library, and figures carry pinned
metadata so the PNG bytes do not depend on the wall clock.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

APPROX_CSV_FIELDS = ["theta_spec", "d", "H", "coeffs", "abs_value_lo",
                     "abs_value_hi", "exponent_lo", "exponent_hi", "ties",
                     "zero_excluded"]


def write_csv(path: Path, rows: list[dict], fieldnames: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, quoting=csv.QUOTE_MINIMAL)
        writer.writeheader()
        for row in rows:
            out = dict(row)
            for k, v in out.items():
                if isinstance(v, (list, tuple)):
                    out[k] = json.dumps(list(v))
            writer.writerow(out)


def write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_jsonify)
        fh.write("\n")


def _jsonify(obj):
    from .bigreal import Interval
    from .polycore import IntPoly
    if isinstance(obj, Interval):
        lo, hi = obj.as_decimal_pair()
        return {"lo": lo, "hi": hi}
    if isinstance(obj, IntPoly):
        return list(obj.coeffs)
    if hasattr(obj, "__dataclass_fields__"):
        return {k: getattr(obj, k) for k in obj.__dataclass_fields__}
    from fractions import Fraction
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    return str(obj)


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: list[str]
    config: dict
    precision_cap: int
    seed: int | None
    version: str
    wall_clock_s: float = 0.0
    outputs: dict = field(default_factory=dict)

    def record(self, *paths: Path) -> None:
        for p in paths:
            self.outputs[p.name] = sha256_file(p)

    def write(self, path: Path) -> None:
        write_json(path, {
            "command": self.command,
            "config": self.config,
            "precision_cap": self.precision_cap,
            "seed": self.seed,
            "version": self.version,
            "wall_clock_s": round(self.wall_clock_s, 3),
            "outputs": self.outputs,
        })


def figure_backend():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


_PNG_META = {"metadata": {"Software": "resultantlab"}}


def plot_search(rows: list[dict], path: Path) -> None:
    """Exponent against height budget, one line per degree."""
    plt = figure_backend()
    fig, ax = plt.subplots(figsize=(6, 4))
    by_d = {}
    for r in rows:
        if r["exponent_lo"] != "":
            by_d.setdefault(r["d"], []).append(
                (r["H"], (float(r["exponent_lo"]) + float(r["exponent_hi"])) / 2))
    for d, pts in sorted(by_d.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label=f"degree {d}")
    ax.set_xscale("log")
    ax.set_xlabel("height budget H")
    ax.set_ylabel("exponent")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_PNG_META)
    plt.close(fig)


def plot_spectra(rows: list[dict], path: Path) -> None:
    """Attainability heatmap over the (growth, decay) exponent grid."""
    plt = figure_backend()
    xs = sorted({r["a"] for r in rows})
    ys = sorted({r["b"] for r in rows})
    grid = [[0.0] * len(xs) for _ in ys]
    lookup = {(r["a"], r["b"]): r["attainable"] for r in rows}
    for j, b in enumerate(ys):
        for i, a in enumerate(xs):
            grid[j][i] = 1.0 if lookup.get((a, b)) else 0.0
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(grid, origin="lower", aspect="auto", cmap="Greys",
                   extent=(min(xs), max(xs), min(ys), max(ys)))
    ax.plot([min(xs), max(xs)], [min(xs), max(xs)], "r--", lw=1, label="b = a")
    ax.set_xlabel("growth exponent a")
    ax.set_ylabel("decay exponent b")
    ax.legend(loc="upper left")
    fig.colorbar(im, ax=ax, label="attainable")
    fig.tight_layout()
    fig.savefig(path, **_PNG_META)
    plt.close(fig)


def plot_classify(e_of_d: dict, path: Path) -> None:
    """Per-degree exponent estimates."""
    plt = figure_backend()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ds = sorted(int(d) for d in e_of_d)
    vals = [float(e_of_d[d]["estimate"].mid(64)) for d in ds]
    ax.bar([str(d) for d in ds], vals)
    ax.set_xlabel("degree")
    ax.set_ylabel("exponent estimate")
    fig.tight_layout()
    fig.savefig(path, **_PNG_META)
    plt.close(fig)
