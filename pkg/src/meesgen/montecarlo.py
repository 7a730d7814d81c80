"""Seeded random-state sampling and scatter statistics for the five
thermalization approaches.

Sampling is chunked: chunk c draws from an independent substream derived
from (seed, c), and per-chunk histograms are merged by addition, so the
result is identical for any worker count and any scheduling order.
Normalizations follow the figure conventions: entanglement by ln(N_A),
expended energy by 2 max sigma(H_0).
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import MeasureMismatch
from .system import (
    BipartiteSystem,
    DensePureState,
    SchmidtState,
    solve_beta_g,
)
from .thermalization import (
    ApproachKind,
    CouplingStrength,
    report_global_unitary,
    report_mssg,
    report_simple,
    v_strength,
)

CHUNK = 1 << 14

Measure = Literal["haar-full", "haar-schmidt"]

SCHMIDT_ONLY = (ApproachKind.ModifiedSimple, ApproachKind.MssgA, ApproachKind.MssgB)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int
    measure: Measure
    workers: int = 1

    def __post_init__(self):
        if self.count < 1 or self.workers < 1:
            raise ValueError("count and workers must be >= 1")


def default_measure(approach: ApproachKind) -> Measure:
    return "haar-schmidt" if approach in SCHMIDT_ONLY else "haar-full"


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))


# ---------------------------------------------------------------------------
# samplers


def _batch_full(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_haar_full(system: BipartiteSystem, rng: np.random.Generator) -> DensePureState:
    """One Haar-random pure state of the full bipartite space."""
    return DensePureState(_batch_full(system.n_s, 1, rng)[0])


def sample_schmidt(system: BipartiteSystem, rng: np.random.Generator) -> SchmidtState:
    """One Haar-random state of the diagonal (Schmidt-form) subspace."""
    z = _batch_full(system.n_a, 1, rng)[0]
    return SchmidtState(tuple(np.abs(z) ** 2), tuple(np.angle(z)))


# ---------------------------------------------------------------------------
# vectorized per-sample evaluation


def _entropy_rows(w: np.ndarray) -> np.ndarray:
    w = np.clip(w, 0.0, None)
    logw = np.where(w > 1e-300, np.log(np.where(w > 1e-300, w, 1.0)), 0.0)
    return -(w * logw).sum(axis=1)


def _entanglement_full(system: BipartiteSystem, amps: np.ndarray) -> np.ndarray:
    mats = amps.reshape(-1, system.n_a, system.n_b)
    rho = mats @ mats.conj().transpose(0, 2, 1)
    return _entropy_rows(np.linalg.eigvalsh(rho))


def _global_unitary_expense(energies: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Vectorized general-offset expense of the global unitary approach.

    Equals the first-principles value for any target with lambda_0 > 0;
    energies[0] must be the ground level.
    """
    e0 = energies[0]
    gam = np.concatenate(
        [np.ones((lam.shape[0], 1)), np.maximum(1.0 - np.cumsum(lam[:, 1:], axis=1), 0.0)],
        axis=1,
    )
    gg = np.maximum(gam[:, 1:] * gam[:, :-1], 1e-300)
    lam0 = lam[:, :1]
    body = (lam[:, 1:] * energies[1:] * (1.0 + lam0 / gg)).sum(axis=1)
    return body - 2.0 * e0 * (1.0 - lam[:, 0])


def _mssg_expense(system: BipartiteSystem, lam: np.ndarray, kind: str) -> np.ndarray:
    e = system.diag_energies
    local = system.spectrum_a.as_array()[: system.n_a]
    if kind == "B":
        local = system.spectrum_b.as_array()[: system.n_a]
    gam = np.concatenate(
        [np.ones((lam.shape[0], 1)), np.maximum(1.0 - np.cumsum(lam[:, 1:], axis=1), 0.0)],
        axis=1,
    )
    gg = np.maximum(gam[:, 1:] * gam[:, :-1], 1e-300)
    body = (lam[:, 1:] * (e[1:] + lam[:, :1] * local[1:] / gg)).sum(axis=1)
    return body - (local[0] + e[0]) * (1.0 - lam[:, 0])


def evaluate_chunk(
    system: BipartiteSystem,
    approach: ApproachKind,
    measure: Measure,
    count: int,
    rng: np.random.Generator,
    v: CouplingStrength | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw `count` samples and return (entanglement, eta, e_exp) arrays.

    Samples with vanishing expense (zero-entanglement 0/0 cases) are
    dropped here; callers compare lengths to tally skips.
    """
    if measure == "haar-full":
        if approach in SCHMIDT_ONLY:
            raise MeasureMismatch(f"{approach.value} cannot realize arbitrary full-space states")
        amps = _batch_full(system.n_s, count, rng)
        ent = _entanglement_full(system, amps)
        lam_full = np.abs(amps) ** 2
        energy = lam_full @ system.h0_diagonal
        gain = energy - system.e0
        if approach is ApproachKind.Simple:
            e_exp = gain + v.value * (1.0 - lam_full[:, 0])
        elif approach is ApproachKind.GlobalUnitary:
            e_exp = _global_unitary_expense(system.h0_diagonal, lam_full)
        else:
            raise MeasureMismatch(f"unsupported approach {approach.value} for haar-full")
    elif measure == "haar-schmidt":
        z = _batch_full(system.n_a, count, rng)
        lam = np.abs(z) ** 2
        ent = _entropy_rows(lam)
        gain = lam @ system.diag_energies - system.e0
        if approach in (ApproachKind.Simple, ApproachKind.ModifiedSimple):
            e_exp = gain + v.value * (1.0 - lam[:, 0])
        elif approach is ApproachKind.GlobalUnitary:
            e_exp = _global_unitary_expense(system.diag_energies, lam)
        elif approach is ApproachKind.MssgA:
            e_exp = _mssg_expense(system, lam, "A")
        elif approach is ApproachKind.MssgB:
            e_exp = _mssg_expense(system, lam, "B")
        else:
            raise MeasureMismatch(f"unsupported approach {approach.value}")
    else:
        raise MeasureMismatch(f"unknown measure {measure!r}")
    keep = e_exp > 1e-14
    ent, gain, e_exp = ent[keep], gain[keep], e_exp[keep]
    return ent, gain / e_exp, e_exp


# ---------------------------------------------------------------------------
# histograms


@dataclass
class Histogram2D:
    bins_x: int
    bins_y: int
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    x_norm: float
    y_norm: float
    counts: np.ndarray = field(default=None)
    clamped: int = 0

    def __post_init__(self):
        if self.counts is None:
            self.counts = np.zeros((self.bins_x, self.bins_y), dtype=np.int64)

    def geometry(self):
        return (self.bins_x, self.bins_y, self.x_range, self.y_range, self.x_norm, self.y_norm)

    def add_samples(self, x: np.ndarray, y: np.ndarray) -> None:
        """Bin half-open [lo, hi) cells; out-of-range values are clamped
        into the edge bins and tallied."""
        (x0, x1), (y0, y1) = self.x_range, self.y_range
        ix = np.clip(((x - x0) / (x1 - x0) * self.bins_x).astype(np.int64), 0, self.bins_x - 1)
        iy = np.clip(((y - y0) / (y1 - y0) * self.bins_y).astype(np.int64), 0, self.bins_y - 1)
        flat = np.bincount(ix * self.bins_y + iy, minlength=self.bins_x * self.bins_y)
        self.counts += flat.reshape(self.bins_x, self.bins_y)
        # top edge is inclusive in the last bin; only true outliers are tallied
        self.clamped += int(((x < x0) | (x > x1) | (y < y0) | (y > y1)).sum())

    def __add__(self, other: "Histogram2D") -> "Histogram2D":
        if self.geometry() != other.geometry():
            raise ValueError("histogram geometries differ")
        return Histogram2D(
            self.bins_x,
            self.bins_y,
            self.x_range,
            self.y_range,
            self.x_norm,
            self.y_norm,
            counts=self.counts + other.counts,
            clamped=self.clamped + other.clamped,
        )

    def bin_centers(self) -> tuple[np.ndarray, np.ndarray]:
        (x0, x1), (y0, y1) = self.x_range, self.y_range
        cx = x0 + (np.arange(self.bins_x) + 0.5) * (x1 - x0) / self.bins_x
        cy = y0 + (np.arange(self.bins_y) + 0.5) * (y1 - y0) / self.bins_y
        return cx, cy


@dataclass
class ScatterResult:
    hist_eta: Histogram2D
    hist_exp: Histogram2D
    skipped: int


def expense_norm(system: BipartiteSystem) -> float:
    """2 max sigma(H_0), the figure normalization for expended energy."""
    return 2.0 * system.max_total_energy


def run_scatter(
    system: BipartiteSystem,
    approach: ApproachKind,
    config: SamplerConfig,
    bins: tuple[int, int] = (200, 200),
    leak: float = 1e-3,
) -> ScatterResult:
    """Sample, evaluate, and bin (entanglement, eta) and
    (entanglement, E_exp) distributions for one approach."""
    v = None
    if approach in (ApproachKind.Simple, ApproachKind.ModifiedSimple):
        v = v_strength(system, approach, leak)
    x_norm = np.log(system.n_a)
    y_norm = expense_norm(system)
    bx, by = bins

    def make_pair():
        return (
            Histogram2D(bx, by, (0.0, 1.0), (0.0, 1.0), x_norm, 1.0),
            Histogram2D(bx, by, (0.0, 1.0), (0.0, 1.0), x_norm, y_norm),
        )

    n_chunks = (config.count + CHUNK - 1) // CHUNK

    def work(c: int):
        n = min(CHUNK, config.count - c * CHUNK)
        ent, eta, e_exp = evaluate_chunk(
            system, approach, config.measure, n, chunk_rng(config.seed, c), v
        )
        h_eta, h_exp = make_pair()
        x = ent / x_norm
        h_eta.add_samples(x, eta)
        h_exp.add_samples(x, e_exp / y_norm)
        return h_eta, h_exp, n - ent.size

    h_eta, h_exp = make_pair()
    skipped = 0
    if config.workers == 1:
        results = map(work, range(n_chunks))
        for part_eta, part_exp, part_skip in results:
            h_eta += part_eta
            h_exp += part_exp
            skipped += part_skip
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            for part_eta, part_exp, part_skip in pool.map(work, range(n_chunks)):
                h_eta += part_eta
                h_exp += part_exp
                skipped += part_skip
    return ScatterResult(hist_eta=h_eta, hist_exp=h_exp, skipped=skipped)


def scatter_samples(
    system: BipartiteSystem,
    approach: ApproachKind,
    config: SamplerConfig,
    leak: float = 1e-3,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Raw (entanglement, eta, e_exp) arrays, same substreams as run_scatter."""
    v = None
    if approach in (ApproachKind.Simple, ApproachKind.ModifiedSimple):
        v = v_strength(system, approach, leak)
    parts = []
    n_chunks = (config.count + CHUNK - 1) // CHUNK
    for c in range(n_chunks):
        n = min(CHUNK, config.count - c * CHUNK)
        parts.append(
            evaluate_chunk(system, approach, config.measure, n, chunk_rng(config.seed, c), v)
        )
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))


# ---------------------------------------------------------------------------
# MEES curve scan


@dataclass
class CurveScan:
    e_norm: np.ndarray  # entanglement grid normalized by ln N_A
    curves: dict  # ApproachKind -> (eta array, e_exp_norm array)
    errors: list = field(default_factory=list)


def scan_mees_curve(
    system: BipartiteSystem,
    approaches,
    e_grid,
    leak: float = 1e-3,
) -> CurveScan:
    """Closed-form (eta, E_exp) of the minimum-energy state along an
    entanglement grid, for each requested approach."""
    approaches = list(approaches)
    if not approaches:
        raise ValueError("need at least one approach")
    e_grid = np.asarray(e_grid, dtype=float)
    s_max = np.log(system.n_a)
    if np.any(e_grid <= 0) or np.any(e_grid >= s_max):
        raise ValueError("grid values must lie strictly inside (0, ln N_A)")
    y_norm = expense_norm(system)
    vs = {
        ApproachKind.Simple: v_strength(system, ApproachKind.Simple, leak),
        ApproachKind.ModifiedSimple: v_strength(system, ApproachKind.ModifiedSimple, leak),
    }
    curves = {ap: (np.full(e_grid.size, np.nan), np.full(e_grid.size, np.nan)) for ap in approaches}
    errors = []
    for k, e in enumerate(e_grid):
        try:
            target = solve_beta_g(system, float(e)).state
        except Exception as exc:  # solver failure recorded, not fatal
            errors.append((k, repr(exc)))
            continue
        for ap in approaches:
            try:
                if ap in (ApproachKind.Simple, ApproachKind.ModifiedSimple):
                    rep = report_simple(system, target, vs[ap])
                elif ap is ApproachKind.GlobalUnitary:
                    rep = report_global_unitary(system, target)
                elif ap is ApproachKind.MssgA:
                    rep = report_mssg("A", system, target)
                elif ap is ApproachKind.MssgB:
                    rep = report_mssg("B", system, target)
                else:
                    raise ValueError(f"unknown approach {ap!r}")
            except Exception as exc:
                errors.append((k, repr(exc)))
                continue
            curves[ap][0][k] = rep.eta
            curves[ap][1][k] = rep.e_exp / y_norm
    return CurveScan(e_norm=e_grid / s_max, curves=curves, errors=errors)


# ---------------------------------------------------------------------------
# file output


def write_histogram_csv(hist: Histogram2D, path: str) -> None:
    cx, cy = hist.bin_centers()
    with open(path, "w", newline="") as fh:
        fh.write("# x_norm,y_norm,count\n")
        writer = csv.writer(fh)
        for i in range(hist.bins_x):
            for j in range(hist.bins_y):
                writer.writerow([f"{cx[i]:.17g}", f"{cy[j]:.17g}", int(hist.counts[i, j])])


def read_histogram_csv(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    data = np.loadtxt(path, delimiter=",", comments="#")
    return data[:, 0], data[:, 1], data[:, 2].astype(np.int64)


def write_histogram_sidecar(
    hist: Histogram2D,
    path: str,
    seed: int,
    count: int,
    approach: ApproachKind,
    skipped: int,
    extra: dict | None = None,
) -> None:
    doc = {
        "bins_x": hist.bins_x,
        "bins_y": hist.bins_y,
        "x_range": list(hist.x_range),
        "y_range": list(hist.y_range),
        "x_norm": hist.x_norm,
        "y_norm": hist.y_norm,
        "seed": seed,
        "count": count,
        "approach": approach.value,
        "skipped": skipped,
        "clamped": hist.clamped,
        "total_binned": int(hist.counts.sum()),
    }
    if extra:
        doc.update(extra)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def write_curve_csv(scan: CurveScan, path: str) -> None:
    aps = list(scan.curves)
    header = ["e_norm"]
    for ap in aps:
        header += [f"{ap.value}_eta", f"{ap.value}_e_exp_norm"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for k in range(scan.e_norm.size):
            row = [f"{scan.e_norm[k]:.17g}"]
            for ap in aps:
                row += [f"{scan.curves[ap][0][k]:.17g}", f"{scan.curves[ap][1][k]:.17g}"]
            writer.writerow(row)
