"""Reduced qubit state, its Pauli-basis propagator, purity and l1 coherence.

Basis ordering is (|a>, |b>) with |a> the excited state, so
<sigma_x> = 2 Re rho_ab, <sigma_y> = -2 Im rho_ab, <sigma_z> = rho_aa - rho_bb.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplitude import amplitude_analytic
from .params import PhysicalParams

POSITIVITY_TOL = 1e-12
BLOCH_TOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix2:
    """Qubit state stored by rho_aa (real) and rho_ab; the rest follows from Hermiticity and unit trace."""

    rho_aa: float
    rho_ab: complex

    def __post_init__(self):
        aa = complex(self.rho_aa)
        if abs(aa.imag) > POSITIVITY_TOL:
            raise ValueError(f"rho_aa must be real, got {self.rho_aa}")
        object.__setattr__(self, "rho_aa", aa.real)
        object.__setattr__(self, "rho_ab", complex(self.rho_ab))
        if self.bloch_length > 1 + BLOCH_TOL or self.eigenvalues[0] < -POSITIVITY_TOL:
            raise ValueError(
                f"not a positive state: rho_aa={self.rho_aa}, rho_ab={self.rho_ab}, "
                f"eigenvalues={self.eigenvalues}"
            )

    @property
    def rho_bb(self) -> float:
        return 1.0 - self.rho_aa

    @property
    def rho_ba(self) -> complex:
        return self.rho_ab.conjugate()

    @property
    def bloch(self) -> np.ndarray:
        return np.array([2 * self.rho_ab.real, -2 * self.rho_ab.imag, 2 * self.rho_aa - 1])

    @property
    def bloch_length(self) -> float:
        return math.hypot(2 * abs(self.rho_ab), 2 * self.rho_aa - 1)

    @property
    def eigenvalues(self) -> tuple[float, float]:
        r = self.bloch_length
        return ((1 - r) / 2, (1 + r) / 2)

    def matrix(self) -> np.ndarray:
        return np.array([[self.rho_aa, self.rho_ab], [self.rho_ba, self.rho_bb]], dtype=complex)

    @classmethod
    def from_bloch(cls, vec) -> "DensityMatrix2":
        x, y, z = (float(v) for v in vec)
        return cls((1 + z) / 2, complex(x, -y) / 2)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix2":
        m = np.asarray(m)
        if not np.allclose(m, m.conj().T, atol=1e-12):
            raise ValueError("matrix is not Hermitian")
        if abs(np.trace(m) - 1) > POSITIVITY_TOL:
            raise ValueError(f"trace {np.trace(m)} != 1")
        return cls(m[0, 0].real, m[0, 1])

    def csv_row(self) -> tuple[float, float, float]:
        """(re_rho_aa, re_rho_ab, im_rho_ab)."""
        return (self.rho_aa, self.rho_ab.real, self.rho_ab.imag)


@dataclass(frozen=True)
class PauliPropagator:
    """Omega(t, 0): maps (<sx>, <sy>, <sz>, 1) at time 0 to the same vector at time t."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4) or not np.array_equal(m[3], [0, 0, 0, 1]):
            raise ValueError("propagator must be 4x4 with bottom row (0, 0, 0, 1)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_amplitude(cls, a: complex) -> "PauliPropagator":
        a = complex(a)
        ac = a.conjugate()
        p = abs(a) ** 2
        return cls(np.array([
            [(a + ac) / 2, -1j * (a - ac) / 2, 0, 0],
            [1j * (a - ac) / 2, (a + ac) / 2, 0, 0],
            [0, 0, p, p - 1],
            [0, 0, 0, 1],
        ], dtype=complex))

    def apply(self, bloch) -> np.ndarray:
        vec = np.append(np.asarray(bloch, dtype=float), 1.0)
        return (self.matrix @ vec).real[:3]

    def evolve(self, rho: DensityMatrix2) -> DensityMatrix2:
        return DensityMatrix2.from_bloch(self.apply(rho.bloch))


def initial_state(theta: float) -> DensityMatrix2:
    """|psi0> = cos(theta/2)|a> + sin(theta/2)|b>."""
    return DensityMatrix2(math.cos(theta / 2) ** 2, 0.5 * math.sin(theta))


def state_from_amplitude(a: complex, theta: float, phi: float = 0.0) -> DensityMatrix2:
    a = complex(a)
    return DensityMatrix2(
        math.cos(theta / 2) ** 2 * abs(a) ** 2,
        0.5 * math.sin(theta) * a * complex(math.cos(phi), math.sin(phi)),
    )


def evolved_state(t: float, params: PhysicalParams) -> DensityMatrix2:
    """Reduced qubit state at time t (s) from the initial angle params.theta."""
    return state_from_amplitude(amplitude_analytic(float(t), params), params.theta)


def propagator(t: float, params: PhysicalParams) -> PauliPropagator:
    return PauliPropagator.from_amplitude(amplitude_analytic(float(t), params))


def density_matrices(amplitude, theta: float, phi: float = 0.0) -> np.ndarray:
    """Stacked 2x2 states for an array of amplitudes, shape (..., 2, 2)."""
    a = np.asarray(amplitude, dtype=complex)
    aa = math.cos(theta / 2) ** 2 * np.abs(a) ** 2
    ab = 0.5 * math.sin(theta) * a * np.exp(1j * phi)
    out = np.empty(a.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = aa
    out[..., 0, 1] = ab
    out[..., 1, 0] = ab.conj()
    out[..., 1, 1] = 1 - aa
    return out


def _as_matrix(rho):
    return rho.matrix() if isinstance(rho, DensityMatrix2) else np.asarray(rho)


def purity(rho):
    """Tr[rho^2] for a DensityMatrix2 or a stack of 2x2 matrices."""
    m = _as_matrix(rho)
    out = np.einsum("...ij,...ji->...", m, m).real
    return float(out) if out.ndim == 0 else out


def purity_closed(amplitude, theta: float):
    """2 cos^4(theta/2) |A|^2 (|A|^2 - 1) + 1."""
    p = np.abs(amplitude) ** 2
    return 2 * math.cos(theta / 2) ** 4 * p * (p - 1) + 1


def l1_coherence(rho):
    """Sum of off-diagonal magnitudes, 2|rho_ab| for a qubit."""
    if isinstance(rho, DensityMatrix2):
        return 2 * abs(rho.rho_ab)
    m = np.asarray(rho)
    return np.abs(m[..., 0, 1]) + np.abs(m[..., 1, 0])
