"""Quantum witness W = |p - p'| with an intermediate blind (nonselective) measurement.

The final measurement projects on |+> = (|a> + |b>)/sqrt(2).  The classical
probability p' is obtained by measuring blindly at ``fraction * tau`` and
then evolving the perturbed state for the remaining ``(1 - fraction) * tau``.

Two conventions for that second leg:

``"segment"`` (default)
    Reuse the 0 -> (1 - fraction) tau propagator built from A((1 - fraction) tau).
    This is the convention under which the x-basis witness takes its
    closed form  (1/2)|sin theta| |Re A(tau) - (Re A(tau/2))^2|.

``"reset"``
    Non-reference sensitivity mode: re-solve the Volterra equation starting
    at the measurement time with the memory integral restarted there, and
    build the propagator from that amplitude.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .amplitude import amplitude_analytic
from .kernel import kernel_closed
from .params import PhysicalParams
from .qubit import DensityMatrix2, PauliPropagator, state_from_amplitude
from .volterra import MAX_PHASE_PER_STEP, solve_volterra

log = logging.getLogger(__name__)

BEYOND_HORIZON = math.inf


class BlindMeasurement(enum.Enum):
    X = "x"  # projectors (1 +- sigma_x)/2
    Z = "z"  # projectors (1 +- sigma_z)/2, i.e. classicalization


@dataclass(frozen=True)
class WitnessPoint:
    tau: float
    p_quantum: float
    p_classical: float

    @property
    def w(self) -> float:
        return abs(self.p_quantum - self.p_classical)


def blind_measure(rho: DensityMatrix2, m: BlindMeasurement) -> DensityMatrix2:
    """Pi_+ rho Pi_+ + Pi_- rho Pi_- in the chosen basis."""
    m = BlindMeasurement(m)
    if m is BlindMeasurement.Z:
        return DensityMatrix2(rho.rho_aa, 0j)
    x = rho.bloch[0]
    return DensityMatrix2.from_bloch((x, 0.0, 0.0))


def _prob_plus(rho: DensityMatrix2) -> float:
    # Tr[rho (1 + sigma_x)/2]
    return 0.5 + rho.rho_ab.real


def _reset_amplitude(start: float, duration: float, params: PhysicalParams) -> complex:
    if duration == 0:
        return 1 + 0j

    def shifted(t, t_prime):
        return kernel_closed(np.asarray(t) + start, np.asarray(t_prime) + start, params)

    bounds = [MAX_PHASE_PER_STEP / params.lambda_, 0.01 / params.gamma]
    if params.beta:
        bounds.append(MAX_PHASE_PER_STEP / (params.beta * params.omega0))
    dt = min(bounds)
    steps = max(1, math.ceil(duration / dt))
    grid = solve_volterra(shifted, steps * (duration / steps), duration / steps)
    return complex(grid.values[-1])


def witness_generic(
    tau: float,
    theta: float,
    m: BlindMeasurement,
    params: PhysicalParams,
    fraction: float = 0.5,
    mode: str = "segment",
) -> WitnessPoint:
    """Witness from explicit states: evolve, measure blindly, evolve again, project on |+>."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if not 0 < fraction < 1:
        raise ValueError("fraction must lie in (0, 1)")
    t_mid = fraction * tau
    rest = tau - t_mid

    rho_tau = state_from_amplitude(amplitude_analytic(tau, params), theta)
    rho_mid = state_from_amplitude(amplitude_analytic(t_mid, params), theta)
    perturbed = blind_measure(rho_mid, m)

    if mode == "segment":
        a_leg = amplitude_analytic(rest, params)
    elif mode == "reset":
        a_leg = _reset_amplitude(t_mid, rest, params)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rho_classical = PauliPropagator.from_amplitude(a_leg).evolve(perturbed)

    if log.isEnabledFor(logging.DEBUG) and BlindMeasurement(m) is BlindMeasurement.Z:
        c2 = math.cos(theta / 2) ** 2
        log.debug(
            "tau=%g: perturbed rho_aa=%.17g (propagated), cos^2(theta/2)|A(tau)|^4=%.17g",
            tau, rho_classical.rho_aa, c2 * abs(amplitude_analytic(tau, params)) ** 4,
        )
    return WitnessPoint(tau, _prob_plus(rho_tau), _prob_plus(rho_classical))


def witness_x_closed(tau, theta: float, params: PhysicalParams):
    """(1/4)|sin theta (A + A* - (A(tau/2) + A*(tau/2))^2 / 2)| for scalar or array tau."""
    tau = np.asarray(tau, dtype=float)
    a = amplitude_analytic(tau, params)
    half = amplitude_analytic(tau / 2, params)
    out = 0.25 * np.abs(math.sin(theta) * (2 * np.real(a) - 0.5 * (2 * np.real(half)) ** 2))
    return float(out) if out.ndim == 0 else out


def witness_optimized(tau, theta: float, params: PhysicalParams):
    """(1/2)|sin theta Re A(tau)|, the z-basis (classicalizing) witness."""
    a = amplitude_analytic(np.asarray(tau, dtype=float), params)
    out = 0.5 * np.abs(math.sin(theta) * np.real(a))
    return float(out) if np.ndim(out) == 0 else out


def _envelope(values: np.ndarray, floor: float) -> np.ndarray:
    d = np.diff(values)
    peaks = np.nonzero((d[:-1] >= 0) & (d[1:] < 0))[0] + 1
    if values[0] >= values[1]:
        peaks = np.r_[0, peaks]
    # round-off wiggles far below the signal are not peaks
    peaks = peaks[values[peaks] > floor]
    env = values.copy()
    if len(peaks) >= 2:
        lo, hi = peaks[0], peaks[-1]
        bridge = np.interp(np.arange(lo, hi + 1), peaks, values[peaks])
        env[lo : hi + 1] = np.maximum(env[lo : hi + 1], bridge)
    return env


def survival_time(values, threshold: float, times=None, dt: float | None = None) -> float:
    """Time after which the upper envelope of ``values`` never exceeds ``threshold``.

    The envelope is the trajectory itself raised to the straight lines
    joining consecutive local maxima.  Returns the first grid time of the
    final sub-threshold stretch, or ``BEYOND_HORIZON`` (inf) if the envelope
    is still above threshold at the last sample.  Sample times come from
    ``times`` or from a uniform step ``dt`` starting at 0.
    """
    values = np.asarray(values, dtype=float)
    if times is None:
        times = (1.0 if dt is None else dt) * np.arange(len(values))
    times = np.asarray(times, dtype=float)
    if len(values) < 3:
        raise ValueError("need at least three samples")
    top = float(np.max(values))
    env = _envelope(values, 1e-9 * top if top > 0 else 0.0)
    above = np.nonzero(env > threshold)[0]
    if len(above) == 0:
        return float(times[0])
    if above[-1] == len(values) - 1:
        return BEYOND_HORIZON
    return float(times[above[-1] + 1])
