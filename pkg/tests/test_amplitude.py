import math
from pathlib import Path

import numpy as np
import pytest

from movingqubit.amplitude import (
    AmplitudeSolution,
    DegenerateRootsWarning,
    amplitude_analytic,
    amplitude_solution,
)
from movingqubit.params import PhysicalParams
from movingqubit.volterra import solve_amplitude

GOLDEN = Path(__file__).parent / "golden" / "amplitude_beta_1e-10.txt"
BETAS = (0.0, 0.01e-9, 0.05e-9, 0.1e-9, 0.5e-9, 1e-9)


@pytest.mark.parametrize("beta", BETAS)
def test_initial_value_and_residue_sum(beta):
    p = PhysicalParams.reference(beta=beta)
    assert abs(amplitude_analytic(0.0, p) - 1) <= 1e-9
    assert abs(sum(amplitude_solution(p).residues) - 1) <= 1e-9


@pytest.mark.parametrize("beta", BETAS)
def test_modulus_bounded(beta):
    p = PhysicalParams.reference(beta=beta)
    gt = np.linspace(0, 2000, 20001)
    assert np.max(np.abs(amplitude_analytic(gt / p.gamma, p))) <= 1 + 1e-9


def test_real_at_rest_on_resonance():
    p = PhysicalParams.reference()
    a = amplitude_analytic(np.linspace(0, 300, 301) / p.gamma, p)
    assert np.max(np.abs(a.imag)) <= 1e-12


def test_rest_frame_decay_at_long_times():
    p = PhysicalParams.reference()
    assert abs(amplitude_analytic(700 / p.gamma, p)) < 0.05


def test_weak_coupling_limit():
    # gamma = 1e-6 lambda: no visible decay while gamma t stays below 1e-3
    p = PhysicalParams(gamma=1e-6, lambda_=1.0, omega0=10.0)
    t = np.linspace(0, 1000, 101)
    assert np.max(np.abs(amplitude_analytic(t, p) - 1)) <= 1e-3


def test_markov_limit_decay_rate():
    # for lambda >> gamma the kernel integrates to gamma/4, so A -> exp(-gamma t / 4)
    p = PhysicalParams(gamma=1e-6, lambda_=1.0, omega0=10.0)
    gt = np.linspace(0, 5, 11)
    a = amplitude_analytic(gt / p.gamma, p)
    assert np.max(np.abs(a - np.exp(-gt / 4))) <= 1e-5


@pytest.mark.parametrize("p", [
    PhysicalParams(gamma=1.0, lambda_=0.2, delta=0.5, omega0=10.0, beta=0.01),
    PhysicalParams(gamma=2.0, lambda_=3.0, delta=-1.0, omega0=4.0, beta=0.3),
])
def test_matches_volterra_away_from_reference_point(p):
    grid = solve_amplitude(p, 30 / p.gamma, 0.005 / p.gamma)
    assert np.max(np.abs(grid.values - amplitude_analytic(grid.times, p))) <= 1e-4


def test_degenerate_roots_fall_back_to_volterra():
    # lambda = gamma, beta = 0: double root at -1/2 and A = exp(-gt/2)(1 + gt/2)
    p = PhysicalParams(gamma=1.0, lambda_=1.0, omega0=10.0)
    assert amplitude_solution(p).degenerate
    t = np.linspace(0, 20, 41)
    with pytest.warns(DegenerateRootsWarning):
        a = amplitude_analytic(t, p)
    assert np.max(np.abs(a - np.exp(-t / 2) * (1 + t / 2))) <= 1e-4


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        amplitude_analytic(-1.0, PhysicalParams.reference())


def test_record_round_trip():
    sol = amplitude_solution(PhysicalParams.reference(beta=0.5e-9))
    assert AmplitudeSolution.from_record(sol.to_record()) == sol


def test_golden_record():
    stored = AmplitudeSolution.from_record(GOLDEN.read_text())
    fresh = amplitude_solution(PhysicalParams.reference(beta=1e-10))
    for old, new in zip(stored.roots + stored.residues, fresh.roots + fresh.residues):
        assert abs(old - new) <= 1e-12 * max(1.0, abs(old))
    gt = np.linspace(0, 500, 51)
    assert np.allclose(stored(gt), fresh(gt), rtol=0, atol=1e-12)
