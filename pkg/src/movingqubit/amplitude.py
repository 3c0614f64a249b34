"""Analytic excited-state amplitude A(t) from the roots of the characteristic cubic."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cubic import polyval, solve_monic_cubic, sort_roots
from .params import PhysicalParams
from .volterra import MAX_PHASE_PER_STEP, solve_amplitude

DEGENERACY_RTOL = 1e-7  # double roots are only resolved to ~sqrt(machine eps)


class DegenerateRootsWarning(RuntimeWarning):
    """Emitted when the partial-fraction form is unusable and the Volterra solution is used."""


def cubic_coefficients(params: PhysicalParams) -> tuple[complex, complex, complex]:
    """(a, b, c) of x^3 + a x^2 + b x + c, x in units of gamma.

    a = 2(y1 - i y3), b = u+ u- + y1/4, c = y1 (y1 - i y3) / 4.
    """
    y1, y3 = params.y1, params.y3
    return (
        2 * (y1 - 1j * y3),
        params.u_plus * params.u_minus + y1 / 4,
        y1 * (y1 - 1j * y3) / 4,
    )


@dataclass(frozen=True)
class AmplitudeSolution:
    roots: tuple[complex, complex, complex]
    residues: tuple[complex, complex, complex]
    degenerate: bool = False

    def __call__(self, gamma_t):
        """A at dimensionless time gamma*t."""
        gamma_t = np.asarray(gamma_t, dtype=float)
        out = sum(c * np.exp(x * gamma_t) for x, c in zip(self.roots, self.residues))
        return out if np.ndim(out) else complex(out)

    def to_record(self) -> str:
        """Plain-text record, 17 significant digits."""
        lines = [f"degenerate {int(self.degenerate)}"]
        for tag, values in (("root", self.roots), ("residue", self.residues)):
            for i, z in enumerate(values, 1):
                lines.append(f"{tag}{i} {z.real:.17g} {z.imag:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_record(cls, text: str) -> "AmplitudeSolution":
        fields = {}
        for line in text.strip().splitlines():
            key, *vals = line.split()
            fields[key] = vals
        roots = tuple(complex(float(r), float(i)) for r, i in (fields[f"root{k}"] for k in (1, 2, 3)))
        residues = tuple(
            complex(float(r), float(i)) for r, i in (fields[f"residue{k}"] for k in (1, 2, 3))
        )
        return cls(roots, residues, bool(int(fields["degenerate"][0])))


def is_degenerate(roots, rtol: float = DEGENERACY_RTOL) -> bool:
    scale = max(abs(x) for x in roots)
    return any(
        abs(roots[i] - roots[j]) < rtol * scale for i in range(3) for j in range(i + 1, 3)
    )


def cubic_roots(params: PhysicalParams) -> tuple[complex, complex, complex]:
    """Sorted roots x1, x2, x3 of the characteristic cubic."""
    return tuple(sort_roots(solve_monic_cubic(*cubic_coefficients(params))))


def relative_residual(params: PhysicalParams, x: complex) -> float:
    coeffs = cubic_coefficients(params)
    return abs(polyval(coeffs, x)) / max(1.0, *(abs(c) for c in coeffs))


@lru_cache(maxsize=256)
def amplitude_solution(params: PhysicalParams) -> AmplitudeSolution:
    """Roots plus partial-fraction coefficients of A(t) = sum_i c_i exp(x_i gamma t)."""
    roots = cubic_roots(params)
    if is_degenerate(roots):
        return AmplitudeSolution(roots, (math.nan,) * 3, degenerate=True)
    up, um = params.u_plus, params.u_minus
    residues = []
    for i, x in enumerate(roots):
        denom = 1
        for j, other in enumerate(roots):
            if j != i:
                denom *= x - other
        residues.append((x + up) * (x + um) / denom)
    return AmplitudeSolution(roots, tuple(residues))


def _fallback_amplitude(t, params: PhysicalParams):
    t = np.asarray(t, dtype=float)
    t_max = float(np.max(t)) if t.size else 0.0
    bounds = [MAX_PHASE_PER_STEP / params.lambda_, 0.01 / params.gamma]
    if params.beta:
        bounds.append(MAX_PHASE_PER_STEP / (params.beta * params.omega0))
    dt = min(bounds)
    grid = solve_amplitude(params, t_max + dt, dt)
    return grid(t)


def amplitude_analytic(t, params: PhysicalParams):
    """Excited-state amplitude A(t) for t in seconds (scalar or array).

    Degenerate cubic roots make the partial fractions singular; in that case
    a DegenerateRootsWarning is issued and the Volterra solution is returned.
    """
    if np.any(np.asarray(t) < 0):
        raise ValueError("amplitude requires t >= 0")
    sol = amplitude_solution(params)
    if sol.degenerate:
        warnings.warn(
            f"degenerate cubic roots {sol.roots}; using Volterra solution",
            DegenerateRootsWarning,
            stacklevel=2,
        )
        return _fallback_amplitude(t, params)
    return sol(params.gamma * np.asarray(t, dtype=float))
