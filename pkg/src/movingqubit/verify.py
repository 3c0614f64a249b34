"""Cross-checks of the closed forms against independent constructions."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .amplitude import amplitude_analytic, cubic_roots
from .metrology import PhaseProbe, encode_phase, phase_derivative, spectral_qfi
from .params import PhysicalParams
from .sweep import SweepConfig
from .volterra import StepSizeError, solve_amplitude
from .witness import BlindMeasurement, witness_generic, witness_optimized, witness_x_closed

FIGURE_BETAS = (0.0, 0.01e-9, 0.05e-9, 0.1e-9, 0.5e-9, 0.7e-9, 1e-9)

AMPLITUDE_TOL = 1e-4
RESIDUAL_TOL = 1e-10
WITNESS_TOL = 1e-12
QFI_FD_TOL = 1e-6


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        self.passed = bool(self.passed)


def _independent_cubic(params: PhysicalParams):
    # built from the model constants directly, not from amplitude.cubic_coefficients
    y1 = params.lambda_ / params.gamma
    y2 = params.omega0 / params.gamma
    y3 = params.delta / params.gamma
    b = params.beta
    up = (1 + b) * y1 + 1j * b * y2 - 1j * (1 + b) * y3
    um = (1 - b) * y1 - 1j * b * y2 - 1j * (1 - b) * y3
    return np.array([1, 2 * (y1 - 1j * y3), up * um + y1 / 4, y1 * (y1 - 1j * y3) / 4])


def check_amplitude(params: PhysicalParams, gamma_t_max: float, gamma_dt: float) -> Check:
    name = f"amplitude vs Volterra (beta={params.beta:g})"
    try:
        grid = solve_amplitude(params, gamma_t_max / params.gamma, gamma_dt / params.gamma)
    except StepSizeError as exc:
        return Check(name, False, f"precondition rejected: {exc}")
    dev = float(np.max(np.abs(grid.values - amplitude_analytic(grid.times, params))))
    return Check(name, dev <= AMPLITUDE_TOL, f"max deviation {dev:.3e} (tol {AMPLITUDE_TOL:g})")


def check_residuals(params: PhysicalParams) -> Check:
    coeffs = _independent_cubic(params)
    scale = np.max(np.abs(coeffs))
    worst = max(abs(np.polyval(coeffs, x)) / scale for x in cubic_roots(params))
    return Check(
        f"cubic residual (beta={params.beta:g})",
        worst <= RESIDUAL_TOL,
        f"max relative residual {worst:.3e} (tol {RESIDUAL_TOL:g})",
    )


def check_witness(params: PhysicalParams, gamma_taus) -> Check:
    worst = 0.0
    for gt in gamma_taus:
        tau = gt / params.gamma
        wx = witness_generic(tau, params.theta, BlindMeasurement.X, params).w
        wz = witness_generic(tau, params.theta, BlindMeasurement.Z, params).w
        worst = max(
            worst,
            abs(wx - witness_x_closed(tau, params.theta, params)),
            abs(wz - witness_optimized(tau, params.theta, params)),
        )
    return Check(
        f"witness pipeline vs closed form (beta={params.beta:g})",
        worst <= WITNESS_TOL,
        f"max difference {worst:.3e} (tol {WITNESS_TOL:g})",
    )


def qfi_finite_difference(probe: PhaseProbe, params: PhysicalParams, eps: float = 1e-6) -> float:
    """QFI with the phase derivative replaced by a central difference of encoded states."""
    plus = PhaseProbe(probe.theta, (probe.phi + eps) % (2 * math.pi), probe.t)
    minus = PhaseProbe(probe.theta, (probe.phi - eps) % (2 * math.pi), probe.t)
    drho = (encode_phase(plus, params).matrix() - encode_phase(minus, params).matrix()) / (2 * eps)
    return spectral_qfi(encode_phase(probe, params).matrix(), drho)


def check_qfi(params: PhysicalParams, gamma_ts, phi: float = 0.7) -> Check:
    worst = 0.0
    for gt in gamma_ts:
        probe = PhaseProbe(params.theta, phi, gt / params.gamma)
        exact = spectral_qfi(encode_phase(probe, params).matrix(), phase_derivative(probe, params))
        worst = max(worst, abs(exact - qfi_finite_difference(probe, params)))
    return Check(
        f"QFI analytic vs finite difference (beta={params.beta:g})",
        worst <= QFI_FD_TOL,
        f"max difference {worst:.3e} (tol {QFI_FD_TOL:g})",
    )


def verify(config: SweepConfig | None = None) -> dict:
    """Run every check; the report's ``passed`` is True iff all sub-checks pass."""
    if config is None:
        config = SweepConfig(params=PhysicalParams.reference(), beta_list=FIGURE_BETAS)
    checks = []
    grid = np.linspace(0.0, config.gamma_t_max, 41)
    for beta in config.beta_list:
        params = config.params.with_(beta=beta)
        checks.append(check_amplitude(params, config.gamma_t_max, config.oracle_gamma_dt))
        checks.append(check_residuals(params))
        checks.append(check_witness(params, grid))
        checks.append(check_qfi(params, grid))
    return {
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
