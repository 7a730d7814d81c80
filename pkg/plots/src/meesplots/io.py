"""Readers for the generator CLI's file formats.

Two schemas are consumed, both defined by the meesgen command line tool:

* histogram CSV: a ``# x_norm,y_norm,count`` comment header followed by one
  row per grid cell in row-major (x outer, y inner) order, with an optional
  JSON sidecar of the same stem carrying geometry and tallies;
* curve CSV: an ``e_norm`` column followed by ``<approach>_eta`` /
  ``<approach>_e_exp_norm`` column pairs.
"""

from __future__ import annotations

import csv
import json
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, SchemaError


@dataclass(frozen=True)
class HistogramGrid:
    """Counts on a regular 2D grid plus the axis geometry."""

    counts: np.ndarray  # (bins_x, bins_y)
    x_centers: np.ndarray
    y_centers: np.ndarray
    sidecar: dict = field(default_factory=dict)

    @property
    def bins_x(self) -> int:
        return self.counts.shape[0]

    @property
    def bins_y(self) -> int:
        return self.counts.shape[1]

    def geometry(self):
        return (
            self.bins_x,
            self.bins_y,
            tuple(np.round(self.x_centers[[0, -1]], 12)),
            tuple(np.round(self.y_centers[[0, -1]], 12)),
        )


def sidecar_path(csv_path: str) -> str:
    stem, _ = os.path.splitext(csv_path)
    return stem + ".json"


def read_histogram(path: str) -> HistogramGrid:
    """Parse one histogram CSV (and its sidecar, when present)."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)  # loadtxt's empty-file chatter
            data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError as exc:
        raise SchemaError(f"{path}: not a numeric CSV ({exc})") from exc
    if data.size == 0:
        raise EmptyInput(f"{path}: no data rows")
    if data.shape[1] != 3:
        raise SchemaError(f"{path}: expected 3 columns (x, y, count), got {data.shape[1]}")
    x, y, c = data.T
    x_centers = np.unique(x)
    y_centers = np.unique(y)
    bx, by = x_centers.size, y_centers.size
    if bx * by != c.size:
        raise SchemaError(f"{path}: {c.size} rows do not fill a {bx} x {by} grid")
    counts = np.zeros((bx, by))
    ix = np.searchsorted(x_centers, x)
    iy = np.searchsorted(y_centers, y)
    counts[ix, iy] = c
    if np.any(counts < 0) or np.any(counts != np.round(counts)):
        raise SchemaError(f"{path}: counts must be nonnegative integers")
    sidecar = {}
    sc = sidecar_path(path)
    if os.path.exists(sc):
        with open(sc) as fh:
            sidecar = json.load(fh)
        if sidecar.get("bins_x") not in (None, bx) or sidecar.get("bins_y") not in (None, by):
            raise SchemaError(
                f"{path}: sidecar geometry {sidecar.get('bins_x')}x{sidecar.get('bins_y')} "
                f"disagrees with the CSV grid {bx}x{by}"
            )
    return HistogramGrid(counts=counts, x_centers=x_centers, y_centers=y_centers, sidecar=sidecar)


@dataclass(frozen=True)
class CurveTable:
    """Entanglement grid plus named (eta, expense) column pairs."""

    e_norm: np.ndarray
    eta: dict  # approach name -> array
    expense: dict  # approach name -> array


def read_curves(path: str) -> CurveTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: empty file") from None
        rows = [row for row in reader if row]
    if not header or header[0] != "e_norm":
        raise SchemaError(f"{path}: first column must be e_norm, got {header[:1]}")
    if not rows:
        raise EmptyInput(f"{path}: header only, no data rows")
    try:
        data = np.array(rows, dtype=float)
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric row ({exc})") from exc
    if data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    eta, expense = {}, {}
    for k, name in enumerate(header[1:], start=1):
        if name.endswith("_eta"):
            eta[name[: -len("_eta")]] = data[:, k]
        elif name.endswith("_e_exp_norm"):
            expense[name[: -len("_e_exp_norm")]] = data[:, k]
        else:
            raise SchemaError(f"{path}: unrecognized column {name!r}")
    if not eta and not expense:
        raise SchemaError(f"{path}: no approach columns found")
    return CurveTable(e_norm=data[:, 0], eta=eta, expense=expense)
