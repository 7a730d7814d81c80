"""Bipartite system model, entanglement entropy, and minimum-energy state solver.

Conventions: hbar = k_B = 1, natural logarithms everywhere, energies in
arbitrary consistent units.  The product basis |A_i B_j> is flattened as
index i * N_B + j.  The "diagonal" kets |E_i> = |A_i B_i| carry energies
E_i = A_i + B_i and span the subspace in which minimum-energy entangled
states live.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGround, EmptySpectrum, NonMonotone, OutOfRange

ZERO_WEIGHT = 1e-14


@dataclass(frozen=True)
class Spectrum:
    """Nondecreasing list of real energy levels of a subsystem Hamiltonian."""

    levels: tuple[float, ...]

    def __post_init__(self):
        if len(self.levels) < 2:
            raise EmptySpectrum(f"need at least 2 levels, got {len(self.levels)}")
        lv = np.asarray(self.levels, dtype=float)
        if np.any(np.diff(lv) < 0):
            raise EmptySpectrum("levels must be nondecreasing")
        object.__setattr__(self, "levels", tuple(float(x) for x in lv))

    def __len__(self):
        return len(self.levels)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=float)

    def shifted(self) -> tuple["Spectrum", float]:
        """Return (spectrum with ground level at 0, recorded offset)."""
        off = self.levels[0]
        return Spectrum(tuple(x - off for x in self.levels)), off


@dataclass(frozen=True)
class BipartiteSystem:
    """Two local spectra with N_A <= N_B and the derived diagonal energies."""

    spectrum_a: Spectrum
    spectrum_b: Spectrum
    swapped: bool = False  # True if the constructor exchanged the arguments

    def __post_init__(self):
        a, b = self.spectrum_a.levels, self.spectrum_b.levels
        if len(a) > len(b):
            raise ValueError("spectrum_a must not be longer than spectrum_b")
        if not (a[1] > a[0]) or not (b[1] > b[0]):
            raise DegenerateGround("local ground states must be nondegenerate")

    @property
    def n_a(self) -> int:
        return len(self.spectrum_a)

    @property
    def n_b(self) -> int:
        return len(self.spectrum_b)

    @property
    def n_s(self) -> int:
        return self.n_a * self.n_b

    @property
    def diag_energies(self) -> np.ndarray:
        """E_i = A_i + B_i for i < N_A."""
        a = self.spectrum_a.as_array()[: self.n_a]
        b = self.spectrum_b.as_array()[: self.n_a]
        return a + b

    @property
    def e0(self) -> float:
        return float(self.diag_energies[0])

    @property
    def h0_diagonal(self) -> np.ndarray:
        """All N_S product-basis energies A_i + B_j, flattened as i*N_B + j."""
        return np.add.outer(self.spectrum_a.as_array(), self.spectrum_b.as_array()).ravel()

    def diag_index(self, i: int) -> int:
        """Flat product-basis index of the diagonal ket |A_i B_i>."""
        return i * self.n_b + i

    @property
    def max_total_energy(self) -> float:
        return float(self.spectrum_a.levels[-1] + self.spectrum_b.levels[-1])


def build_system(spec_a: Spectrum, spec_b: Spectrum) -> BipartiteSystem:
    """Assemble a bipartite system, swapping roles so that N_A <= N_B."""
    if len(spec_a) > len(spec_b):
        return BipartiteSystem(spec_b, spec_a, swapped=True)
    return BipartiteSystem(spec_a, spec_b)


def load_system(path: str) -> BipartiteSystem:
    """Read {"spectrum_a": [...], "spectrum_b": [...]} from a JSON file."""
    with open(path) as fh:
        doc = json.load(fh)
    return build_system(Spectrum(tuple(doc["spectrum_a"])), Spectrum(tuple(doc["spectrum_b"])))


@dataclass(frozen=True)
class SchmidtState:
    """Weights and phases over the diagonal kets |E_i> (N_A components)."""

    weights: tuple[float, ...]
    phases: tuple[float, ...] = ()

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        ph = self.phases if self.phases else (0.0,) * len(self.weights)
        if len(ph) != len(w):
            raise ValueError("phases length must match weights length")
        object.__setattr__(self, "weights", tuple(max(float(x), 0.0) for x in w))
        object.__setattr__(self, "phases", tuple(float(x) for x in ph))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def amplitudes(self) -> np.ndarray:
        """Complex amplitudes e^{i theta_i} sqrt(lambda_i)."""
        lam = np.asarray(self.weights)
        return np.exp(1j * np.asarray(self.phases)) * np.sqrt(lam)


@dataclass(frozen=True)
class DensePureState:
    """Normalized complex amplitude vector over the flattened product basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm {nrm} deviates from 1 beyond 1e-10")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class MeesSolution:
    """Solution of the fixed-entanglement energy minimization."""

    beta_g: float
    z_g: float
    e_g: float
    state: SchmidtState
    entanglement: float = field(default=float("nan"))


def schmidt_entropy(state: SchmidtState) -> float:
    """-sum lambda_i ln lambda_i with the 0 ln 0 = 0 convention."""
    lam = np.asarray(state.weights)
    return _entropy_of_weights(lam)


def _entropy_of_weights(lam: np.ndarray) -> float:
    lam = lam[lam > ZERO_WEIGHT]
    return float(-(lam * np.log(lam)).sum())


def entanglement_entropy(state: DensePureState, system: BipartiteSystem) -> float:
    """Von Neumann entropy of the reduced state, from the singular values."""
    mat = state.amplitudes.reshape(system.n_a, system.n_b)
    sv = np.linalg.svd(mat, compute_uv=False)
    return _entropy_of_weights(sv**2)


def partition_function(system: BipartiteSystem, beta: float) -> float:
    """Z(beta) = sum_i exp(-beta E_i) over the N_A diagonal energies."""
    e = system.diag_energies
    # shift by E_0 for overflow safety, un-shift at the end
    return float(np.exp(-beta * (e - e[0])).sum() * math.exp(-beta * e[0]))


def _gibbs_weights(energies: np.ndarray, beta: float) -> np.ndarray:
    x = -beta * (energies - energies.min())
    w = np.exp(x - x.max())
    return w / w.sum()


def gibbs_entropy(energies: np.ndarray, beta: float) -> float:
    """Entropy of the thermal weight vector e^{-beta e_i}/Z."""
    return _entropy_of_weights(_gibbs_weights(energies, beta))


def solve_beta_for_entropy(
    energies: np.ndarray, entanglement: float, tol: float = 1e-10
) -> tuple[float, np.ndarray]:
    """Find beta >= 0 such that the Gibbs weights have the given entropy.

    The entropy is ln(N) at beta = 0 and strictly decreasing for
    nondegenerate energies, so bracketed bisection is unconditionally
    robust.  Returns (beta, weights).
    """
    energies = np.asarray(energies, dtype=float)
    n = energies.size
    s_max = math.log(n)
    if not (0.0 < entanglement < s_max):
        raise OutOfRange(
            f"entanglement must lie in (0, ln {n}) = (0, {s_max:.6g}), got {entanglement}"
        )
    if np.ptp(energies) < 1e-14:
        raise NonMonotone("all energies equal: entropy is constant in beta")

    lo, hi = 0.0, 1.0
    while gibbs_entropy(energies, hi) > entanglement:
        hi *= 2.0
        if hi > 1e18:
            raise OutOfRange("entanglement unreachable: below the large-beta limit")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gibbs_entropy(energies, mid) > entanglement:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * max(1.0, hi):
            break
    beta = 0.5 * (lo + hi)
    w = _gibbs_weights(energies, beta)
    if abs(_entropy_of_weights(w) - entanglement) > max(tol, 1e-9 * s_max):
        raise OutOfRange("bisection failed to meet entropy tolerance")
    return beta, w


def solve_beta_g(system: BipartiteSystem, entanglement: float) -> MeesSolution:
    """Minimum-energy entangled state at the requested entanglement.

    Weights are thermal, e^{-beta_g E_i}/Z_g, with beta_g fixed by the
    entropy constraint; phases default to zero.
    """
    e = system.diag_energies
    beta, w = solve_beta_for_entropy(e, entanglement)
    z_shift = float(np.exp(-beta * (e - e[0])).sum())
    z_g = z_shift * math.exp(-beta * e[0])
    e_g = float((w * e).sum())
    return MeesSolution(
        beta_g=beta,
        z_g=z_g,
        e_g=e_g,
        state=SchmidtState(tuple(w)),
        entanglement=entanglement,
    )


def mees_from_beta(system: BipartiteSystem, beta: float) -> MeesSolution:
    """Evaluate the thermal-form state directly at a given beta (no solve)."""
    e = system.diag_energies
    w = _gibbs_weights(e, beta)
    z_shift = float(np.exp(-beta * (e - e[0])).sum())
    return MeesSolution(
        beta_g=beta,
        z_g=z_shift * math.exp(-beta * e[0]),
        e_g=float((w * e).sum()),
        state=SchmidtState(tuple(w)),
        entanglement=_entropy_of_weights(w),
    )


def embed(state: SchmidtState, system: BipartiteSystem) -> DensePureState:
    """Lift a Schmidt-form state onto the full product basis."""
    if state.dim != system.n_a:
        raise ValueError(f"state dimension {state.dim} != N_A = {system.n_a}")
    amp = np.zeros(system.n_s, dtype=complex)
    c = state.amplitudes()
    for i in range(system.n_a):
        amp[system.diag_index(i)] = c[i]
    return DensePureState(amp)


def energy_expectation(state: DensePureState, system: BipartiteSystem) -> float:
    """<psi| H_0 |psi> = sum |c_ij|^2 (A_i + B_j)."""
    return float((np.abs(state.amplitudes) ** 2 * system.h0_diagonal).sum())


def schmidt_overlap_weight(state: DensePureState, system: BipartiteSystem) -> float:
    """Squared overlap with the ground ket |E_0> (lambda_0 for dense targets)."""
    return float(abs(state.amplitudes[0]) ** 2)
