"""Checks that the qubit's translational motion may be treated classically (z = v t)."""
from __future__ import annotations

from scipy.constants import atomic_mass, c, h, hbar

from .params import PhysicalParams

RB85_MASS = 84.911789738 * atomic_mass  # kg

# minimum speeds quoted for an 85Rb Rydberg microwave qubit and an optical qubit
MICROWAVE_MIN_SPEED = 1e-7  # m/s
OPTICAL_MIN_SPEED = 1e-3  # m/s
OPTICAL_OMEGA0 = 1e14  # Hz; transitions at or above this use the optical bound
MUCH_GREATER = 10.0  # "v >> v_min" read as v >= 10 v_min
MUCH_SMALLER = 0.1


def validate_regime(params: PhysicalParams, mass: float | None = None, optical: bool | None = None) -> list[str]:
    """Return human-readable warnings; an empty list means the regime is valid.

    The speed bound is chosen by ``optical`` (auto-detected from omega0 when
    None).  If ``mass`` (kg) is given, the de Broglie wavelength is also
    compared with the transition wavelength and the photon momentum with the
    atomic momentum.  A stationary qubit (beta = 0) is always valid.  Never
    raises.
    """
    if params.beta == 0:
        return []
    if optical is None:
        optical = params.omega0 >= OPTICAL_OMEGA0
    v = params.velocity
    v_min = OPTICAL_MIN_SPEED if optical else MICROWAVE_MIN_SPEED
    kind = "optical" if optical else "microwave"

    warnings = []
    if v < MUCH_GREATER * v_min:
        warnings.append(
            f"classical-motion condition violated: v = {v:.3g} m/s is not >> "
            f"{v_min:g} m/s required for a {kind} qubit"
        )
    if mass is not None:
        transition_wavelength = c / params.omega0
        de_broglie = h / (mass * v)
        if de_broglie / transition_wavelength > MUCH_SMALLER:
            warnings.append(
                f"de Broglie wavelength {de_broglie:.3g} m is not << transition "
                f"wavelength {transition_wavelength:.3g} m"
            )
        recoil = hbar * params.omega0 / c
        if recoil / (mass * v) > MUCH_SMALLER:
            warnings.append(
                f"photon recoil {recoil:.3g} kg m/s is not negligible against atomic "
                f"momentum {mass * v:.3g} kg m/s"
            )
    return warnings
