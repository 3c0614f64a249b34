"""Model constants for a two-level atom moving through a leaky cavity."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

from scipy.constants import c as SPEED_OF_LIGHT

# 85Rb Rydberg microwave qubit
REFERENCE_GAMMA = 33.3  # Hz
REFERENCE_OMEGA0 = 51.1e9  # Hz
REFERENCE_LAMBDA_OVER_GAMMA = 0.01


@dataclass(frozen=True)
class PhysicalParams:
    """Constants of the qubit/cavity model.

    All rates are in Hz; ``beta`` is v/c and ``theta`` is the mixing angle
    of the initial state cos(theta/2)|a> + sin(theta/2)|b>.
    """

    gamma: float = REFERENCE_GAMMA
    lambda_: float = REFERENCE_LAMBDA_OVER_GAMMA * REFERENCE_GAMMA
    delta: float = 0.0
    omega0: float = REFERENCE_OMEGA0
    beta: float = 0.0
    theta: float = math.pi / 2

    def __post_init__(self):
        problems = []
        for name in ("gamma", "lambda_", "delta", "omega0", "beta", "theta"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                problems.append(f"{name} must be a finite real number, got {value!r}")
        if problems:
            raise ValueError("; ".join(problems))
        if self.gamma <= 0:
            problems.append(f"gamma must be > 0, got {self.gamma}")
        if self.lambda_ <= 0:
            problems.append(f"lambda_ must be > 0, got {self.lambda_}")
        if self.omega0 <= 0:
            problems.append(f"omega0 must be > 0, got {self.omega0}")
        if not 0 <= self.beta < 1:
            problems.append(f"beta must lie in [0, 1), got {self.beta}")
        if not 0 <= self.theta <= math.pi:
            problems.append(f"theta must lie in [0, pi], got {self.theta}")
        if problems:
            raise ValueError("; ".join(problems))

    @classmethod
    def reference(cls, beta: float = 0.0, theta: float = math.pi / 2) -> "PhysicalParams":
        """Reference parameter set used by every figure (lambda = 0.01 gamma, Delta = 0)."""
        return cls(beta=beta, theta=theta)

    def with_(self, **changes) -> "PhysicalParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)

    # dimensionless groups, in units of gamma
    @property
    def y1(self) -> float:
        return self.lambda_ / self.gamma

    @property
    def y2(self) -> float:
        return self.omega0 / self.gamma

    @property
    def y3(self) -> float:
        return self.delta / self.gamma

    @property
    def u_plus(self) -> complex:
        b = self.beta
        return (1 + b) * self.y1 + 1j * b * self.y2 - 1j * (1 + b) * self.y3

    @property
    def u_minus(self) -> complex:
        b = self.beta
        return (1 - b) * self.y1 - 1j * b * self.y2 - 1j * (1 - b) * self.y3

    @property
    def lambda_bar(self) -> complex:
        """Complex kernel decay rate lambda - i Delta (Hz)."""
        return complex(self.lambda_, -self.delta)

    @property
    def theta_bar(self) -> complex:
        """Motional modulation rate beta (lambda_bar + i omega0) of the kernel (Hz)."""
        return self.beta * (self.lambda_bar + 1j * self.omega0)

    @property
    def omega_c(self) -> float:
        """Cavity centre frequency omega0 - Delta (Hz)."""
        return self.omega0 - self.delta

    @property
    def velocity(self) -> float:
        """Qubit speed in m/s."""
        return self.beta * SPEED_OF_LIGHT

