import logging
import math

import numpy as np
import pytest

from movingqubit.amplitude import amplitude_analytic
from movingqubit.params import PhysicalParams
from movingqubit.qubit import DensityMatrix2, density_matrices, l1_coherence
from movingqubit.witness import (
    BEYOND_HORIZON,
    BlindMeasurement,
    blind_measure,
    survival_time,
    witness_generic,
    witness_optimized,
    witness_x_closed,
)

REF = PhysicalParams.reference()
GRID = np.linspace(0, 50, 101)


def test_z_measurement_kills_coherence_only():
    rho = DensityMatrix2(0.3, 0.2 + 0.1j)
    out = blind_measure(rho, BlindMeasurement.Z)
    assert out.rho_ab == 0
    assert out.rho_aa == rho.rho_aa


def test_x_measurement_on_eigenstate():
    plus = DensityMatrix2(0.5, 0.5)
    assert np.allclose(blind_measure(plus, BlindMeasurement.X).matrix(), plus.matrix(), atol=1e-15)


def test_x_measurement_projects_bloch_vector():
    out = blind_measure(DensityMatrix2.from_bloch((0.3, 0.4, 0.5)), BlindMeasurement.X)
    assert np.allclose(out.bloch, [0.3, 0, 0], atol=1e-15)


def test_zero_delay_x_basis_gives_zero_witness():
    assert witness_generic(0.0, 1.0, BlindMeasurement.X, REF).w == pytest.approx(0, abs=1e-15)
    assert witness_x_closed(0.0, 1.0, REF) == pytest.approx(0, abs=1e-15)


def test_zero_delay_z_basis_removes_all_coherence():
    # a z measurement at tau = 0 already destroys the coherence, so w = |sin theta| / 2
    assert witness_generic(0.0, 1.0, BlindMeasurement.Z, REF).w == pytest.approx(0.5 * math.sin(1.0), abs=1e-15)


@pytest.mark.parametrize("beta", [0.0, 0.05e-9, 1e-9])
@pytest.mark.parametrize("theta", [math.pi / 2, 1.0])
def test_pipeline_matches_closed_forms(beta, theta):
    p = REF.with_(beta=beta)
    for gt in GRID:
        tau = gt / p.gamma
        assert abs(witness_generic(tau, theta, BlindMeasurement.X, p).w - witness_x_closed(tau, theta, p)) <= 1e-12
        assert abs(witness_generic(tau, theta, BlindMeasurement.Z, p).w - witness_optimized(tau, theta, p)) <= 1e-12


def test_classical_probability_is_half_for_z_measurement():
    # any diagonal state gives p' = 1/2 whatever the propagated populations
    point = witness_generic(7 / REF.gamma, math.pi / 2, BlindMeasurement.Z, REF.with_(beta=0.1e-9))
    assert point.p_classical == pytest.approx(0.5, abs=1e-15)


def test_closed_forms_vanish_for_incoherent_input():
    tau = GRID / REF.gamma
    assert np.all(witness_x_closed(tau, 0.0, REF) == 0)
    assert np.all(witness_optimized(tau, 0.0, REF) == 0)


def test_optimised_witness_starts_at_bound():
    assert witness_optimized(0.0, math.pi / 2, REF) == pytest.approx(0.5, abs=1e-12)


def test_rest_frame_optimised_witness_is_half_coherence():
    gt = np.linspace(0, 300, 601)
    a = amplitude_analytic(gt / REF.gamma, REF)
    half_c = l1_coherence(density_matrices(a, REF.theta)) / 2
    assert np.max(np.abs(witness_optimized(gt / REF.gamma, REF.theta, REF) - half_c)) <= 1e-9


@pytest.mark.parametrize("beta", [0.0, 0.01e-9, 0.05e-9, 0.1e-9, 1e-9])
def test_bounds(beta):
    p = REF.with_(beta=beta)
    tau = np.linspace(0, 500, 2001) / p.gamma
    wx = witness_x_closed(tau, p.theta, p)
    wo = witness_optimized(tau, p.theta, p)
    half_c = l1_coherence(density_matrices(amplitude_analytic(tau, p), p.theta)) / 2
    # |A(0)| can exceed 1 by an ulp, so the bound carries a round-off allowance
    assert np.all((wx >= 0) & (wx <= 0.5 + 1e-12))
    assert np.all((wo >= 0) & (wo <= 0.5 + 1e-12))
    assert np.all(wo <= half_c + 1e-12)


def test_reset_mode_equals_segment_mode_at_rest():
    # a stationary kernel makes the restarted memory identical to a fresh start
    for gt in (0.0, 4.0, 11.0):
        tau = gt / REF.gamma
        seg = witness_generic(tau, REF.theta, BlindMeasurement.X, REF)
        reset = witness_generic(tau, REF.theta, BlindMeasurement.X, REF, mode="reset")
        assert reset.w == pytest.approx(seg.w, abs=1e-6)


def test_reset_mode_differs_when_moving():
    p = REF.with_(beta=1e-9)
    tau = 6 / p.gamma
    seg = witness_generic(tau, p.theta, BlindMeasurement.X, p)
    reset = witness_generic(tau, p.theta, BlindMeasurement.X, p, mode="reset")
    assert 0 <= reset.w <= 0.5
    assert seg.p_quantum == reset.p_quantum


def test_argument_checks():
    with pytest.raises(ValueError):
        witness_generic(-1.0, 1.0, BlindMeasurement.X, REF)
    with pytest.raises(ValueError):
        witness_generic(1.0, 1.0, BlindMeasurement.X, REF, fraction=1.0)
    with pytest.raises(ValueError):
        witness_generic(1.0, 1.0, BlindMeasurement.X, REF, mode="other")


def test_debug_log_reports_diagonal(caplog):
    with caplog.at_level(logging.DEBUG, logger="movingqubit.witness"):
        witness_generic(3 / REF.gamma, REF.theta, BlindMeasurement.Z, REF)
    assert "perturbed rho_aa" in caplog.text


def test_survival_zero_trajectory():
    assert survival_time(np.zeros(10), 0.05) == 0


def test_survival_exponential():
    dt = 1e-3
    t = np.arange(0, 5, dt)
    assert survival_time(np.exp(-t), math.exp(-1), dt=dt) == pytest.approx(1, abs=dt)


def test_survival_uses_envelope_not_zero_crossings():
    t = np.linspace(0, 20, 20001)
    values = np.abs(np.exp(-t / 5) * np.cos(3 * t))
    # the oscillation dips under the threshold long before the envelope does
    expected = 5 * math.log(1 / 0.2)
    assert survival_time(values, 0.2, times=t) == pytest.approx(expected, abs=0.15)


def test_survival_beyond_horizon():
    assert survival_time(np.ones(5), 0.5) == BEYOND_HORIZON
    with pytest.raises(ValueError):
        survival_time([1, 0], 0.5)


def test_survival_increases_with_speed():
    gt = np.arange(0, 4e5, 0.5)
    times = []
    for beta in (0.0, 0.05e-9, 0.1e-9, 0.5e-9, 1e-9):
        p = REF.with_(beta=beta)
        times.append(survival_time(witness_optimized(gt / p.gamma, p.theta, p), 0.05, times=gt))
    assert all(b > a for a, b in zip(times, times[1:]))
    assert times[-1] / times[0] >= 10
