"""Entanglement entropy, phase encoding and quantum Fisher information of the qubit."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplitude import amplitude_analytic
from .params import PhysicalParams
from .qubit import DensityMatrix2, density_matrices, state_from_amplitude

EIGEN_CLAMP_TOL = 1e-12
QFI_PAIR_CUTOFF = 1e-12


def _stack(rho) -> np.ndarray:
    return rho.matrix() if isinstance(rho, DensityMatrix2) else np.asarray(rho, dtype=complex)


def von_neumann_entropy(rho):
    """-Tr(rho ln rho) in nats, for a DensityMatrix2 or a stack of 2x2 matrices.

    Eigenvalues within 1e-12 outside [0, 1] are clamped; anything further out
    raises ValueError.
    """
    p = np.linalg.eigvalsh(_stack(rho))
    if np.any(p < -EIGEN_CLAMP_TOL) or np.any(p > 1 + EIGEN_CLAMP_TOL):
        raise ValueError(f"eigenvalues outside [0, 1]: min {p.min()}, max {p.max()}")
    p = np.clip(p, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log(p), 0.0)
    out = terms.sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def entropy_trajectory(theta: float, params: PhysicalParams, t_grid) -> np.ndarray:
    """Qubit entropy S(rho(t)) on ``t_grid`` (s).

    The qubit and the cavity field share a pure global state, so this is also
    their entanglement entropy.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    return von_neumann_entropy(density_matrices(amplitude_analytic(t_grid, params), theta))


@dataclass(frozen=True)
class PhaseProbe:
    """Phase phi imprinted by U = |b><b| + exp(i phi)|a><a| before the open evolution up to t."""

    theta: float
    phi: float
    t: float

    def __post_init__(self):
        if not 0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi}")
        if self.t < 0:
            raise ValueError("t must be >= 0")


def encode_phase(probe: PhaseProbe, params: PhysicalParams) -> DensityMatrix2:
    return state_from_amplitude(amplitude_analytic(probe.t, params), probe.theta, probe.phi)


def phase_derivative(probe: PhaseProbe, params: PhysicalParams) -> np.ndarray:
    """Analytic d rho_phi / d phi: zero diagonal, off-diagonal i e^{i phi} sin(theta) A / 2."""
    a = amplitude_analytic(probe.t, params)
    off = 0.5j * math.sin(probe.theta) * a * complex(math.cos(probe.phi), math.sin(probe.phi))
    return np.array([[0, off], [off.conjugate(), 0]], dtype=complex)


def spectral_qfi(rho, drho) -> float:
    """sum_{m,n} 2 / (p_m + p_n) |<m| d rho |n>|^2, skipping pairs with p_m + p_n < 1e-12."""
    p, vecs = np.linalg.eigh(np.asarray(rho, dtype=complex))
    elements = vecs.conj().T @ np.asarray(drho, dtype=complex) @ vecs
    total = 0.0
    for m in range(len(p)):
        for n in range(len(p)):
            s = p[m] + p[n]
            if s >= QFI_PAIR_CUTOFF:
                total += 2 * abs(elements[m, n]) ** 2 / s
    return total


def qfi_phase(probe: PhaseProbe, params: PhysicalParams) -> float:
    """Quantum Fisher information of rho_phi(t) with respect to phi."""
    rho = encode_phase(probe, params).matrix()
    return spectral_qfi(rho, phase_derivative(probe, params))


def qfi_trajectory(theta: float, params: PhysicalParams, t_grid, phi: float = 0.0) -> np.ndarray:
    return np.array([qfi_phase(PhaseProbe(theta, phi, float(t)), params) for t in np.asarray(t_grid)])


def cramer_rao_bound(fisher):
    """Smallest phase uncertainty 1/sqrt(F); inf marks unbounded uncertainty (F <= 0)."""
    f = np.asarray(fisher, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(f > 0, 1 / np.sqrt(np.where(f > 0, f, 1.0)), math.inf)
    return float(out) if out.ndim == 0 else out
