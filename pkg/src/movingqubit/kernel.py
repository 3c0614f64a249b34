"""Lorentzian reservoir and the two-time memory kernel of the moving qubit."""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import simpson

from .params import PhysicalParams

DEFAULT_CUTOFF_LINEWIDTHS = 200.0
DEFAULT_KERNEL_POINTS = 20001


class ConvergenceError(RuntimeError):
    """Raised when a quadrature fails its refinement check."""


def spectral_density(omega, params: PhysicalParams):
    """Lorentzian density of cavity modes J(omega), in Hz.

    Peaks at omega0 - Delta with value gamma / (2 pi) and half width lambda.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0 only")
    lam = params.lambda_
    detuned = params.omega0 - omega - params.delta
    out = params.gamma * lam**2 / (2 * math.pi * (detuned**2 + lam**2))
    return out if out.ndim else float(out)


def _check_order(t, t_prime):
    if np.any(np.asarray(t) < np.asarray(t_prime)):
        raise ValueError("kernel requires t >= t_prime")


def kernel_closed(t, t_prime, params: PhysicalParams):
    """Continuum-limit kernel (gamma lambda / 4) cosh[theta_bar s] exp[-lambda_bar s], s = t - t'.

    Accepts scalars or broadcastable arrays (in seconds); returns Hz^2.
    """
    _check_order(t, t_prime)
    s = np.asarray(t, dtype=float) - np.asarray(t_prime, dtype=float)
    out = (
        0.25 * params.gamma * params.lambda_
        * np.cosh(params.theta_bar * s)
        * np.exp(-params.lambda_bar * s)
    )
    return out if out.ndim else complex(out)


def _kernel_quadrature(s, params, lo, hi, n_points):
    # offsets from the cavity centre keep (omega - omega0) free of cancellation
    x = np.linspace(lo, hi, n_points)
    omega = params.omega_c + x
    lam = params.lambda_
    density = params.gamma * lam**2 / (2 * math.pi * (x**2 + lam**2))
    # sin(a) sin(b) = [cos(a - b) - cos(a + b)] / 2; the (a + b) term carries the
    # cavity-length phase and averages out as that length goes to infinity
    motional = 0.5 * np.cos(omega * params.beta * s)
    phase = np.exp(-1j * (x - params.delta) * s)
    return simpson(density * motional * phase, x=x)


def kernel_integral(
    t: float,
    t_prime: float,
    params: PhysicalParams,
    cutoff: float | None = None,
    n_points: int = DEFAULT_KERNEL_POINTS,
    rtol: float = 1e-8,
) -> complex:
    """Memory kernel by direct frequency quadrature of the mode sum.

    Integrates J(omega) sin[omega(beta t - tau)] sin[omega(beta t' - tau)]
    exp[-i(omega - omega0)(t - t')] over a window symmetric about the cavity
    centre whose upper edge is ``cutoff`` (default omega0 + 200 lambda),
    clipped below at omega = 0.  The result at ``n_points`` is compared with
    a run on twice as many intervals; a relative change above ``rtol``
    (measured against max(|K|, gamma lambda / 4)) raises ConvergenceError.
    The finer estimate is returned.
    """
    if t < t_prime:
        raise ValueError("kernel requires t >= t_prime")
    if n_points < 1000:
        raise ValueError(f"n_points must be >= 1000, got {n_points}")
    if cutoff is None:
        cutoff = params.omega0 + DEFAULT_CUTOFF_LINEWIDTHS * params.lambda_
    if cutoff <= params.omega0:
        raise ValueError("cutoff must lie above omega0")
    n_points += 1 - n_points % 2  # Simpson wants an even number of intervals

    half_width = cutoff - params.omega_c
    lo = max(-half_width, -params.omega_c)
    s = float(t) - float(t_prime)

    coarse = _kernel_quadrature(s, params, lo, half_width, n_points)
    fine = _kernel_quadrature(s, params, lo, half_width, 2 * n_points - 1)
    scale = max(abs(fine), 0.25 * params.gamma * params.lambda_)
    if abs(fine - coarse) > rtol * scale:
        raise ConvergenceError(
            f"kernel quadrature not converged at s={s:g}: "
            f"|change| = {abs(fine - coarse):.3e} on doubling {n_points} points"
        )
    return complex(fine)
