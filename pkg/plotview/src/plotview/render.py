"""Render solver CSV outputs into PNG figures.

Pure file-to-file transforms: any CSV matching the documented schema renders,
anything else raises SchemaMismatch. No solver logic lives here.

Schemas (header rows are exact):
  line snapshots   x,rho,u,p,E
  field snapshots  x,y,rho,u,v,p,E
  convergence      mesh,error_l1,rate_l1,error_linf,rate_linf,wall_time
  efficiency       order,mesh,l2_error,wall_seconds
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaMismatch(Exception):
    """Input CSV does not match the schema the plot kind expects."""


_SCHEMAS = {
    "line": ["x", "rho", "u", "p", "E"],
    "field": ["x", "y", "rho", "u", "v", "p", "E"],
    "convergence": ["mesh", "error_l1", "rate_l1", "error_linf", "rate_linf", "wall_time"],
    "efficiency": ["order", "mesh", "l2_error", "wall_seconds"],
}


@dataclass
class PlotJob:
    kind: str  # line | field | convergence | efficiency
    inputs: Sequence[str]
    output: str
    labels: Sequence[str] = field(default_factory=list)
    zoom: Optional[tuple[float, float]] = None
    title: str = ""

    def __post_init__(self) -> None:
        if self.kind not in _SCHEMAS:
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def _read_csv(path: str, kind: str) -> dict[str, list[str]]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise SchemaMismatch(f"{path}: cannot read ({exc})") from exc
    expect = _SCHEMAS[kind]
    if header != expect:
        raise SchemaMismatch(
            f"{path}: header {header} does not match the {kind} schema {expect}"
        )
    for r in rows:
        if len(r) != len(expect):
            raise SchemaMismatch(f"{path}: row with {len(r)} fields, expected {len(expect)}")
    return {name: [r[i] for r in rows] for i, name in enumerate(expect)}


def _floats(col: list[str], path: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in col])
    except ValueError as exc:
        raise SchemaMismatch(f"{path}: non-numeric value ({exc})") from exc


def _labels_for(job: PlotJob) -> list[str]:
    labels = list(job.labels)
    while len(labels) < len(job.inputs):
        labels.append(f"series {len(labels) + 1}")
    return labels


def plot_line(job: PlotJob) -> str:
    """Overlaid density curves, with an optional zoom panel."""
    panels = 2 if job.zoom else 1
    fig, axes = plt.subplots(1, panels, figsize=(6 * panels, 4.5))
    axes = np.atleast_1d(axes)
    labels = _labels_for(job)
    for path, label in zip(job.inputs, labels):
        data = _read_csv(path, "line")
        x = _floats(data["x"], path)
        rho = _floats(data["rho"], path)
        for ax in axes:
            ax.plot(x, rho, lw=1.2, label=label)
    for ax in axes:
        ax.set_xlabel("x")
        ax.set_ylabel("density")
        ax.legend(fontsize=8)
    if job.zoom:
        axes[1].set_xlim(*job.zoom)
        axes[1].set_title(f"zoom [{job.zoom[0]:g}, {job.zoom[1]:g}]")
    if job.title:
        axes[0].set_title(job.title)
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)
    return job.output


def plot_field(job: PlotJob) -> str:
    """Pseudocolor density map of a 2-D snapshot."""
    path = job.inputs[0]
    data = _read_csv(path, "field")
    x = _floats(data["x"], path)
    y = _floats(data["y"], path)
    rho = _floats(data["rho"], path)
    xs = np.unique(x)
    ys = np.unique(y)
    if xs.size * ys.size != rho.size:
        raise SchemaMismatch(f"{path}: cells do not form a full rectangular grid")
    grid = rho.reshape(xs.size, ys.size)
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(xs, ys, grid.T, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="density")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    if job.title:
        ax.set_title(job.title)
    elif job.labels:
        ax.set_title(job.labels[0])
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)
    return job.output


def _mesh_cells(raw: str) -> float:
    # "400" or "400x400" -> cells per axis
    return float(raw.split("x")[0])


def plot_convergence(job: PlotJob) -> str:
    """Log-log L1 error against mesh size with slope guide lines."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    labels = _labels_for(job)
    slopes = []
    for path, label in zip(job.inputs, labels):
        data = _read_csv(path, "convergence")
        n = np.array([_mesh_cells(m) for m in data["mesh"]])
        err = _floats(data["error_l1"], path)
        rates = [float(r) for r in data["rate_l1"] if r.strip()]  # blank first row skipped
        ax.loglog(n, err, "o-", label=label)
        if rates:
            slopes.append((n, err, rates[-1]))
    for n, err, rate in slopes:
        guide = err[0] * (n / n[0]) ** (-rate)
        ax.loglog(n, guide, "k--", lw=0.7, alpha=0.6)
        ax.annotate(f"slope {rate:.2f}", (n[-1], guide[-1]), fontsize=7)
    ax.set_xlabel("cells per axis")
    ax.set_ylabel("L1 error")
    ax.legend(fontsize=8)
    if job.title:
        ax.set_title(job.title)
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)
    return job.output


def plot_efficiency(job: PlotJob) -> str:
    """Wall-time bars per scheme order at a fixed target error."""
    path = job.inputs[0]
    data = _read_csv(path, "efficiency")
    orders = [int(float(v)) for v in data["order"]]
    walls = _floats(data["wall_seconds"], path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.bar([str(o) for o in orders], walls, color="tab:blue")
    ax.set_yscale("log")
    ax.set_xlabel("scheme order")
    ax.set_ylabel("wall time [s]")
    if job.title:
        ax.set_title(job.title)
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)
    return job.output


RENDERERS = {
    "line": plot_line,
    "field": plot_field,
    "convergence": plot_convergence,
    "efficiency": plot_efficiency,
}
