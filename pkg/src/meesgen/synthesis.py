"""Construction of the generating unitaries and their gate decompositions.

Three operators map the product ground state |E_0> to a Schmidt-form
target: U_S acts on the whole bipartite space (identity outside the
diagonal sector), while the two "mostly single-system gates" operators
compose a local synthesis unitary with a single generalized CNOT,
u_tilde = CNOT . (local unitary).

All of them derive from the same Gram-Schmidt basis attached to the
target amplitudes; the factor ordering convention is U = U_N ... U_1
applied right-to-left to the ket (U_1 acts first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ZeroVector
from .system import ZERO_WEIGHT, BipartiteSystem, DensePureState, SchmidtState, embed


@dataclass(frozen=True)
class UnitaryReport:
    """Max-norm deviations of U from unitarity."""

    left_deviation: float  # || U^dag U - I ||_max
    right_deviation: float  # || U U^dag - I ||_max

    @property
    def deviation(self) -> float:
        return max(self.left_deviation, self.right_deviation)


def verify_unitary(u: np.ndarray) -> UnitaryReport:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("matrix must be square")
    eye = np.eye(u.shape[0])
    return UnitaryReport(
        left_deviation=float(np.abs(u.conj().T @ u - eye).max()),
        right_deviation=float(np.abs(u @ u.conj().T - eye).max()),
    )


@dataclass(frozen=True)
class GramSchmidtBasis:
    """Orthonormal basis with the target as its first vector.

    vectors[k] for k >= 1 follows the tail-weight construction with
    gamma_k = 1 - sum_{i<=k} lambda_i.  When the target has no component
    on e_0, the basis is built in a label-swapped frame (swap_index
    records the exchanged level) so that the composed operator still
    maps e_0 to the target.
    """

    vectors: np.ndarray  # (N, N), vectors[k] is |psi_k>
    gammas: np.ndarray  # (N,), gamma_0 = 1
    swap_index: int | None = None


def _gs_vectors(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gram-Schmidt vectors for amplitudes c with |c_0|^2 > 0."""
    n = c.size
    lam = np.abs(c) ** 2
    gam = np.concatenate(([1.0], np.maximum(1.0 - np.cumsum(lam[1:]), 0.0)))
    vecs = np.zeros((n, n), dtype=complex)
    vecs[0] = c
    for k in range(1, n):
        if lam[k] <= ZERO_WEIGHT:
            vecs[k, k] = 1.0
            continue
        v = np.zeros(n, dtype=complex)
        v[0] = -np.conj(c[k]) * c[0]
        v[k + 1 :] = -np.conj(c[k]) * c[k + 1 :]
        v[k] += gam[k]
        vecs[k] = v / np.sqrt(gam[k] * gam[k - 1])
    return vecs, gam


def gram_schmidt_basis(target: np.ndarray) -> GramSchmidtBasis:
    """Orthonormal basis whose first vector is the (normalized) target."""
    c = np.asarray(target, dtype=complex)
    nrm = np.linalg.norm(c)
    if nrm < 1e-12:
        raise ZeroVector("target vector has zero norm")
    c = c / nrm
    if abs(c[0]) ** 2 > ZERO_WEIGHT:
        vecs, gam = _gs_vectors(c)
        return GramSchmidtBasis(vectors=vecs, gammas=gam)
    # lambda_0 = 0: swap level 0 with the lowest populated level
    i_star = int(np.argmax(np.abs(c) ** 2 > ZERO_WEIGHT))
    perm = np.arange(c.size)
    perm[0], perm[i_star] = i_star, 0
    vecs, gam = _gs_vectors(c[perm])
    return GramSchmidtBasis(vectors=vecs[:, perm], gammas=gam, swap_index=i_star)


def unitary_from_basis(basis: GramSchmidtBasis) -> np.ndarray:
    """U = sum_k |psi_k><e_k|; the vectors already carry any level swap."""
    return basis.vectors.T.copy()


# ---------------------------------------------------------------------------
# gate plans


@dataclass(frozen=True)
class RotationFactor:
    """One elementary factor: a two-level rotation on levels (0, i), or the
    trailing phase gate on level 0."""

    kind: Literal["rotation", "final-phase"]
    index: int
    c: float  # sqrt(gamma_i / gamma_{i-1})
    s: float  # sqrt(lambda_i / gamma_{i-1})
    theta: float


@dataclass(frozen=True)
class GatePlan:
    """Ordered elementary factors; first listed acts first on the ket."""

    dim: int
    factors: tuple[RotationFactor, ...]
    cnot: Literal["on-A", "on-B", "none"] = "none"
    subsystem: Literal["whole-S", "A", "B"] = "A"


def decompose_rotations(
    weights, phases=None, subsystem: Literal["whole-S", "A", "B"] = "A"
) -> GatePlan:
    """Factor the synthesis unitary into two-level rotations plus a phase.

    Requires lambda_0 > 0 (the swap branch is handled by the callers).
    Each rotation has c^2 + s^2 = 1 and nonnegative real entries on the
    retained levels, so no factor ever lowers the energy of the state.
    """
    lam = np.asarray(weights, dtype=float)
    th = np.zeros_like(lam) if phases is None else np.asarray(phases, dtype=float)
    if lam[0] <= ZERO_WEIGHT:
        raise ZeroVector("rotation decomposition needs lambda_0 > 0")
    gam = np.concatenate(([1.0], np.maximum(1.0 - np.cumsum(lam[1:]), 0.0)))
    factors = []
    for i in range(1, lam.size):
        factors.append(
            RotationFactor(
                kind="rotation",
                index=i,
                c=float(np.sqrt(gam[i] / gam[i - 1])),
                s=float(np.sqrt(lam[i] / gam[i - 1])),
                theta=float(th[i]) if lam[i] > ZERO_WEIGHT else 0.0,
            )
        )
    factors.append(RotationFactor(kind="final-phase", index=0, c=1.0, s=0.0, theta=float(th[0])))
    return GatePlan(dim=lam.size, factors=tuple(factors), subsystem=subsystem)


def _factor_matrix(f: RotationFactor, dim: int, level_index) -> np.ndarray:
    """Dense matrix of one factor; level_index maps plan levels to rows."""
    u = np.eye(dim, dtype=complex)
    i0 = level_index(0)
    if f.kind == "final-phase":
        u[i0, i0] = np.exp(1j * f.theta)
        return u
    ii = level_index(f.index)
    u[i0, i0] = f.c
    u[ii, ii] = f.c
    u[ii, i0] = np.exp(1j * f.theta) * f.s
    u[i0, ii] = -np.exp(-1j * f.theta) * f.s
    return u


def plan_local_matrix(plan: GatePlan, dim: int | None = None, level_index=None) -> np.ndarray:
    """Product of the plan's factors (excluding any trailing CNOT)."""
    dim = plan.dim if dim is None else dim
    level_index = (lambda i: i) if level_index is None else level_index
    u = np.eye(dim, dtype=complex)
    for f in plan.factors:  # first factor acts first
        u = _factor_matrix(f, dim, level_index) @ u
    return u


def plan_matrix(plan: GatePlan, system: BipartiteSystem) -> np.ndarray:
    """Recompose the full N_S x N_S matrix a plan describes."""
    if plan.subsystem == "whole-S":
        u = plan_local_matrix(plan, dim=system.n_s, level_index=system.diag_index)
    elif plan.subsystem == "A":
        u = np.kron(plan_local_matrix(plan), np.eye(system.n_b))
    elif plan.subsystem == "B":
        u = np.kron(np.eye(system.n_a), plan_local_matrix(plan, dim=system.n_b))
    else:
        raise ValueError(f"unknown subsystem tag {plan.subsystem!r}")
    if plan.cnot == "on-A":
        u = cnot_a(system) @ u
    elif plan.cnot == "on-B":
        u = cnot_b(system) @ u
    return u


# ---------------------------------------------------------------------------
# the three generating unitaries


def build_us(system: BipartiteSystem, target: SchmidtState) -> np.ndarray:
    """Whole-space unitary with U|E_0> = target, identity off the diagonal
    sector."""
    basis = gram_schmidt_basis(target.amplitudes())
    small = unitary_from_basis(basis)  # N_A x N_A over the diagonal kets
    u = np.eye(system.n_s, dtype=complex)
    idx = [system.diag_index(i) for i in range(system.n_a)]
    u[np.ix_(idx, idx)] = small
    return u


def build_us_general(system: BipartiteSystem, target: DensePureState) -> np.ndarray:
    """Unitary with U|E_0> = target for an arbitrary normalized target.

    The basis set is ordered with the target first, then the product
    kets in flat order; targets orthogonal to |E_0> go through the
    level-swap branch automatically.
    """
    return unitary_from_basis(gram_schmidt_basis(target.amplitudes))


def build_local_a(system: BipartiteSystem, target: SchmidtState) -> np.ndarray:
    """The N_A x N_A synthesis unitary acting on subsystem A alone."""
    return unitary_from_basis(gram_schmidt_basis(target.amplitudes()))


def build_local_b(system: BipartiteSystem, target: SchmidtState) -> np.ndarray:
    """N_B x N_B unitary acting like the A-synthesis on the first N_A levels
    of B, identity on the rest."""
    u = np.eye(system.n_b, dtype=complex)
    u[: system.n_a, : system.n_a] = unitary_from_basis(gram_schmidt_basis(target.amplitudes()))
    return u


def build_ua(system: BipartiteSystem, target: SchmidtState) -> np.ndarray:
    """(U_A tensor I_B) as a full N_S x N_S matrix."""
    return np.kron(build_local_a(system, target), np.eye(system.n_b))


def build_ub(system: BipartiteSystem, target: SchmidtState) -> np.ndarray:
    """(I_A tensor U_B) as a full N_S x N_S matrix."""
    return np.kron(np.eye(system.n_a), build_local_b(system, target))


def cnot_a(system: BipartiteSystem) -> np.ndarray:
    """Controlled shift |A_i B_j> -> |A_i B_{(i+j) mod N_A}> for j < N_A."""
    na, nb = system.n_a, system.n_b
    u = np.zeros((system.n_s, system.n_s))
    for i in range(na):
        for j in range(nb):
            jj = (i + j) % na if j < na else j
            u[i * nb + jj, i * nb + j] = 1.0
    return u


def cnot_b(system: BipartiteSystem) -> np.ndarray:
    """Controlled shift |A_i B_j> -> |A_{(i+j) mod N_A} B_j> for j < N_A."""
    na, nb = system.n_a, system.n_b
    u = np.zeros((system.n_s, system.n_s))
    for i in range(na):
        for j in range(nb):
            ii = (i + j) % na if j < na else i
            u[ii * nb + j, i * nb + j] = 1.0
    return u


def compose_tilde(
    kind: Literal["A", "B"], system: BipartiteSystem, target: SchmidtState
) -> tuple[np.ndarray, GatePlan]:
    """CNOT . (local synthesis): the two mostly-single-system operators."""
    if kind == "A":
        u = cnot_a(system) @ build_ua(system, target)
        plan = decompose_rotations(target.weights, target.phases, subsystem="A")
        plan = GatePlan(dim=plan.dim, factors=plan.factors, cnot="on-A", subsystem="A")
    elif kind == "B":
        u = cnot_b(system) @ build_ub(system, target)
        plan = decompose_rotations(target.weights, target.phases, subsystem="B")
        plan = GatePlan(dim=plan.dim, factors=plan.factors, cnot="on-B", subsystem="B")
    else:
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    return u, plan


def target_fidelity(u: np.ndarray, system: BipartiteSystem, target) -> float:
    """|<target| U |E_0>|^2, phase-insensitive."""
    produced = u[:, 0]
    amp = target.amplitudes if isinstance(target, DensePureState) else embed(target, system).amplitudes
    return float(abs(np.vdot(amp, produced)) ** 2)
