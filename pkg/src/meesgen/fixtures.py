"""Closed-form two-qubit matrices used as executable oracles.

Basis order |00, 01, 10, 11> with sigma_z |1> = |1>, so the local spectra
are {-omega_X/2, +omega_X/2}; hbar = 1.  The target state is
sqrt(lambda)|00> + sqrt(1-lambda) e^{i(theta_1-theta_0)} ... i.e. weights
(lambda, 1-lambda) with phases (theta_0, theta_1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownFixture
from .system import BipartiteSystem, SchmidtState, Spectrum, build_system

FIXTURE_NAMES = ("US", "UA_tilde", "UB_tilde", "H_si", "H_sim", "H_S", "H_A", "H_B", "H_emp")


@dataclass(frozen=True)
class TwoQubitParams:
    omega_a: float
    omega_b: float
    lam: float
    theta_0: float = 0.0
    theta_1: float = 0.0

    @property
    def omega(self) -> float:
        return 0.5 * (self.omega_a + self.omega_b)

    @property
    def delta_a(self) -> float:
        return 0.5 * (self.omega_a - self.omega_b)

    @property
    def delta_b(self) -> float:
        return -self.delta_a

    def system(self) -> BipartiteSystem:
        """The symmetric +-omega/2 two-qubit system (no ground-level shift)."""
        return build_system(
            Spectrum((-self.omega_a / 2, self.omega_a / 2)),
            Spectrum((-self.omega_b / 2, self.omega_b / 2)),
        )

    def target(self) -> SchmidtState:
        return SchmidtState((self.lam, 1.0 - self.lam), (self.theta_0, self.theta_1))


def fixture(name: str, params: TwoQubitParams, coupling: float | None = None) -> np.ndarray:
    """Return the 4x4 closed-form matrix for the given construction.

    `coupling` is V_S for H_si, V_L for H_sim, and g for H_emp; it is
    ignored by the unitary and unitary-derived fixtures.
    """
    lam = params.lam
    w = params.omega
    p01 = np.exp(1j * (params.theta_0 - params.theta_1))
    sl, sm = np.sqrt(lam), np.sqrt(1.0 - lam)
    e0, e1 = np.exp(1j * params.theta_0), np.exp(1j * params.theta_1)
    if name == "US":
        return np.array(
            [
                [e0 * sl, 0, 0, -p01 * sm],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [e1 * sm, 0, 0, sl],
            ],
            dtype=complex,
        )
    if name == "UA_tilde":
        return np.array(
            [
                [e0 * sl, 0, -p01 * sm, 0],
                [0, e0 * sl, 0, -p01 * sm],
                [0, e1 * sm, 0, sl],
                [e1 * sm, 0, sl, 0],
            ],
            dtype=complex,
        )
    if name == "UB_tilde":
        return np.array(
            [
                [e0 * sl, -p01 * sm, 0, 0],
                [0, 0, e1 * sm, sl],
                [0, 0, e0 * sl, -p01 * sm],
                [e1 * sm, sl, 0, 0],
            ],
            dtype=complex,
        )
    cross = np.sqrt(lam * (1.0 - lam))
    if name == "H_si":
        if coupling is None:
            raise ValueError("H_si needs the coupling strength V_S")
        v = coupling
        return np.array(
            [
                [w - v * lam, 0, 0, -p01 * v * cross],
                [0, params.delta_a, 0, 0],
                [0, 0, params.delta_b, 0],
                [-np.conj(p01) * v * cross, 0, 0, -v * (1 - lam) - w],
            ],
            dtype=complex,
        )
    if name == "H_sim":
        if coupling is None:
            raise ValueError("H_sim needs the coupling strength V_L")
        v = coupling
        return np.array(
            [
                [w - v * lam, 0, 0, -p01 * v * cross],
                [0, 0, 0, 0],
                [0, 0, 0, 0],
                [-np.conj(p01) * v * cross, 0, 0, -v * (1 - lam) - w],
            ],
            dtype=complex,
        )
    if name == "H_S":
        return 2 * w * np.array(
            [
                [1 - lam, 0, 0, -p01 * cross],
                [0, 0, 0, 0],
                [0, 0, 0, 0],
                [-np.conj(p01) * cross, 0, 0, lam - 1],
            ],
            dtype=complex,
        )
    if name == "H_A":
        wa, wb = params.omega_a, params.omega_b
        return wa * np.array(
            [
                [1 - lam, 0, 0, -p01 * cross],
                [0, 1 - lam, -p01 * cross, 0],
                [0, -np.conj(p01) * cross, lam - 1 + wb / wa, 0],
                [-np.conj(p01) * cross, 0, 0, lam - 1 - wb / wa],
            ],
            dtype=complex,
        )
    if name == "H_B":
        wa, wb = params.omega_a, params.omega_b
        return wb * np.array(
            [
                [1 - lam, 0, 0, -p01 * cross],
                [0, lam - 1 + wa / wb, -np.conj(p01) * cross, 0],
                [0, -p01 * cross, 1 - lam, 0],
                [-np.conj(p01) * cross, 0, 0, lam - 1 - wa / wb],
            ],
            dtype=complex,
        )
    if name == "H_emp":
        if coupling is None:
            raise ValueError("H_emp needs the coupling strength g")
        m = np.zeros((4, 4), dtype=complex)
        m[0, 3] = m[3, 0] = coupling
        return m
    raise UnknownFixture(f"unknown fixture name {name!r}; known: {FIXTURE_NAMES}")
