"""Figure rendering: count heatmaps with an overlay curve, and approach
comparison line plots.

Rendering is a pure function of the input files. Colors encode
log10(1 + count); the optional Gaussian smoothing is cosmetic (it imitates
the interpolated look of large-sample figures) and is off by default.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg

from .errors import GeometryMismatch, PlotInputError
from .io import CurveTable, HistogramGrid, read_curves, read_histogram

MODE_LABEL = {
    "eta": r"$\eta$",
    "expense": r"$E_{exp}$ / $2\,\max\sigma(H_0)$",
}


@dataclass(frozen=True)
class FigureSpec:
    """Inputs and styling of one heatmap figure."""

    inputs: tuple[str, ...]
    output: str
    overlay: str | None = None
    mode: str = "expense"  # which overlay column family to draw
    xlabel: str = r"$S$ / $\ln N_A$"
    ylabel: str | None = None
    title: str | None = None
    smooth: float = 0.0  # Gaussian sigma in bins; 0 disables
    dpi: int = 150

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("at least one input histogram is required")
        if self.mode not in MODE_LABEL:
            raise ValueError(f"mode must be one of {sorted(MODE_LABEL)}, got {self.mode!r}")


@dataclass
class RenderResult:
    """Written path plus the deterministic layers for comparison."""

    path: str
    data: np.ndarray  # the color-mapped grid actually drawn
    rgba: np.ndarray  # rendered canvas buffer
    overlay_xy: list = field(default_factory=list)


def merge_histograms(grids: list[HistogramGrid]) -> HistogramGrid:
    first = grids[0]
    for g in grids[1:]:
        if g.geometry() != first.geometry():
            raise GeometryMismatch(
                f"layer geometry {g.geometry()} differs from {first.geometry()}"
            )
    counts = sum(g.counts for g in grids)
    return HistogramGrid(
        counts=counts, x_centers=first.x_centers, y_centers=first.y_centers,
        sidecar=first.sidecar,
    )


def gaussian_smooth(grid: np.ndarray, sigma: float) -> np.ndarray:
    """Separable truncated-Gaussian convolution with edge padding."""
    if sigma <= 0:
        return grid
    radius = max(1, int(np.ceil(3 * sigma)))
    t = np.arange(-radius, radius + 1)
    kernel = np.exp(-0.5 * (t / sigma) ** 2)
    kernel /= kernel.sum()
    out = np.apply_along_axis(
        lambda row: np.convolve(np.pad(row, radius, mode="edge"), kernel, mode="valid"),
        0, grid,
    )
    out = np.apply_along_axis(
        lambda row: np.convolve(np.pad(row, radius, mode="edge"), kernel, mode="valid"),
        1, out,
    )
    return out


def overlay_series(table: CurveTable, mode: str) -> list[tuple[str, np.ndarray, np.ndarray]]:
    cols = table.expense if mode == "expense" else table.eta
    if not cols:
        raise PlotInputError(f"overlay file has no {mode} columns")
    return [(name, table.e_norm, y) for name, y in sorted(cols.items())]


def render_heatmap(spec: FigureSpec) -> RenderResult:
    """Draw log10(1 + count) colors with the overlay curve(s) on top."""
    grids = [read_histogram(p) for p in spec.inputs]
    grid = merge_histograms(grids)
    data = np.log10(1.0 + gaussian_smooth(grid.counts, spec.smooth))

    fig = plt.figure(figsize=(6.4, 4.8))
    canvas = FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    x, y = grid.x_centers, grid.y_centers
    dx = (x[-1] - x[0]) / (x.size - 1) / 2 if x.size > 1 else 0.5
    dy = (y[-1] - y[0]) / (y.size - 1) / 2 if y.size > 1 else 0.5
    im = ax.imshow(
        data.T,
        origin="lower",
        aspect="auto",
        extent=(x[0] - dx, x[-1] + dx, y[0] - dy, y[-1] + dy),
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label=r"$\log_{10}(1 + c)$")

    overlay_xy = []
    if spec.overlay is not None:
        table = read_curves(spec.overlay)
        for name, cx, cy in overlay_series(table, spec.mode):
            ax.plot(cx, cy, color="tab:blue", lw=1.5, label=name)
            overlay_xy.append((name, cx, cy))
        ax.legend(loc="upper left", fontsize=8)
        ax.set_xlim(x[0] - dx, x[-1] + dx)
        ax.set_ylim(y[0] - dy, y[-1] + dy)

    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel if spec.ylabel is not None else MODE_LABEL[spec.mode])
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=spec.dpi, metadata=_clean_metadata(spec.output))
    canvas.draw()
    rgba = np.asarray(canvas.buffer_rgba()).copy()
    plt.close(fig)
    return RenderResult(path=spec.output, data=data, rgba=rgba, overlay_xy=overlay_xy)


def render_curves(input_path: str, output: str, dpi: int = 150) -> RenderResult:
    """Two-panel comparison: efficiency on top, expended energy below.

    Panels with no matching columns are dropped, so a curve file holding
    only one family still renders.
    """
    table = read_curves(input_path)
    panels = [(name, cols) for name, cols in (("eta", table.eta), ("expense", table.expense)) if cols]
    fig = plt.figure(figsize=(6.4, 3.2 * len(panels)))
    canvas = FigureCanvasAgg(fig)
    stacked = []
    for k, (mode, cols) in enumerate(panels):
        ax = fig.add_subplot(len(panels), 1, k + 1)
        for name in sorted(cols):
            ax.plot(table.e_norm, cols[name], lw=1.2, label=name)
            stacked.append(cols[name])
        ax.set_ylabel(MODE_LABEL[mode])
        ax.legend(fontsize=7)
    fig.axes[-1].set_xlabel(r"$S$ / $\ln N_A$")
    fig.tight_layout()
    fig.savefig(output, dpi=dpi, metadata=_clean_metadata(output))
    canvas.draw()
    rgba = np.asarray(canvas.buffer_rgba()).copy()
    plt.close(fig)
    return RenderResult(path=output, data=np.vstack([table.e_norm] + stacked), rgba=rgba)


def _clean_metadata(path: str) -> dict | None:
    """Strip writer metadata so identical inputs give identical files."""
    if path.endswith(".png"):
        return {"Software": None}
    if path.endswith(".svg"):
        return {"Date": None}
    return None
