import math

import numpy as np
import pytest
from scipy.integrate import quad

from movingqubit.kernel import ConvergenceError, kernel_closed, kernel_integral, spectral_density
from movingqubit.params import PhysicalParams

REF = PhysicalParams.reference()
SMALL = PhysicalParams(gamma=1.0, lambda_=0.5, delta=0.2, omega0=40.0, beta=0.0)
# same linewidth as REF at a carrier where double precision still resolves omega0 - omega
MODERATE = PhysicalParams(gamma=33.3, lambda_=0.333, omega0=1.0e4)


def test_spectral_density_peak_and_half_width():
    for p in (MODERATE, SMALL):
        peak = p.omega0 - p.delta
        assert spectral_density(peak, p) == pytest.approx(p.gamma / (2 * math.pi), rel=1e-12)
        assert spectral_density(peak + p.lambda_, p) == pytest.approx(p.gamma / (4 * math.pi), rel=1e-9)
        assert spectral_density(peak - p.lambda_, p) == pytest.approx(p.gamma / (4 * math.pi), rel=1e-9)


def test_spectral_density_symmetric_about_peak():
    peak = SMALL.omega0 - SMALL.delta
    left = spectral_density(peak - 3 * SMALL.lambda_, SMALL)
    right = spectral_density(peak + 3 * SMALL.lambda_, SMALL)
    assert left == pytest.approx(right, rel=1e-13)


def test_spectral_density_rejects_negative_frequency():
    with pytest.raises(ValueError):
        spectral_density(-1.0, SMALL)


@pytest.mark.parametrize("p", [SMALL, MODERATE])
def test_spectral_density_integral_matches_arctan(p):
    lam, wc = p.lambda_, p.omega_c
    top = p.omega0 + 500 * lam
    exact = p.gamma * lam / (2 * math.pi) * (math.atan((top - wc) / lam) + math.atan(wc / lam))
    lo = max(0.0, wc - 500 * lam)
    inner, _ = quad(lambda w: spectral_density(w, p), lo, top, points=[wc], limit=500,
                    epsabs=0, epsrel=1e-12)
    outer = 0.0
    if lo > 0:
        outer, _ = quad(lambda w: spectral_density(w, p), 0, lo, limit=500, epsabs=0, epsrel=1e-12)
    assert inner + outer == pytest.approx(exact, rel=1e-6)


def test_kernel_closed_equal_times():
    for p in (REF, REF.with_(beta=1e-9), SMALL):
        assert kernel_closed(1.0, 1.0, p) == pytest.approx(p.gamma * p.lambda_ / 4, rel=1e-15)


def test_kernel_closed_one_correlation_time():
    p = PhysicalParams(gamma=3.0, lambda_=0.7, delta=0.0, beta=0.0)
    assert kernel_closed(1 / p.lambda_, 0.0, p) == pytest.approx(p.gamma * p.lambda_ / 4 / math.e, rel=1e-14)


def test_kernel_closed_rejects_reversed_times():
    with pytest.raises(ValueError):
        kernel_closed(0.0, 1.0, REF)
    with pytest.raises(ValueError):
        kernel_integral(0.0, 1.0, REF)


def test_kernel_stationary_at_rest():
    p = SMALL
    for s in (0.0, 0.3, 2.0):
        ref = kernel_closed(s, 0.0, p)
        for shift in (0.1, 1.7, 12.0):
            assert abs(kernel_closed(s + shift, shift, p) - ref) <= 1e-12 * abs(ref)


def test_kernel_closed_vectorised():
    t = np.linspace(0, 3, 7)
    out = kernel_closed(3.0, t, SMALL)
    assert out.shape == (7,)
    assert out[-1] == pytest.approx(SMALL.gamma * SMALL.lambda_ / 4)


@pytest.mark.parametrize("s_lambda", [0.0, 0.1, 0.5])
def test_kernel_integral_rest_limit_is_lorentzian_transform(s_lambda):
    # beta = 0: (1/2) int J(w) exp(-i (w - w0) s) dw over the real line = (gamma lambda / 4) exp(-lambda_bar s)
    p = REF.with_(delta=0.1 * REF.lambda_)
    s = s_lambda / p.lambda_
    expected = p.gamma * p.lambda_ / 4 * np.exp(-p.lambda_bar * s)
    got = kernel_integral(s, 0.0, p)
    assert abs(got - expected) <= 1e-3 * p.gamma * p.lambda_


def test_kernel_integral_equal_times_real_part():
    p = REF.with_(beta=1e-9)
    got = kernel_integral(0.4, 0.4, p)
    assert got.real == pytest.approx(p.gamma * p.lambda_ / 4, abs=1e-3 * p.gamma * p.lambda_)
    assert abs(got.imag) <= 1e-6 * p.gamma * p.lambda_


def test_kernel_integral_matches_closed_form_with_detuning():
    p = SMALL.with_(beta=0.01)
    for t, tp in [(0.5, 0.0), (2.0, 1.1), (4.0, 0.3)]:
        diff = abs(kernel_integral(t, tp, p, cutoff=p.omega0 + 200 * p.lambda_) - kernel_closed(t, tp, p))
        assert diff <= 1e-3 * p.gamma * p.lambda_


def test_kernel_integral_argument_checks():
    with pytest.raises(ValueError):
        kernel_integral(1.0, 0.0, REF, n_points=999)
    with pytest.raises(ValueError):
        kernel_integral(1.0, 0.0, REF, cutoff=REF.omega0)


def test_kernel_integral_reports_non_convergence():
    # a window of 2e5 linewidths sampled by ~1000 points cannot resolve a peak one linewidth wide
    with pytest.raises(ConvergenceError):
        kernel_integral(1.0, 0.0, SMALL.with_(omega0=1e6), cutoff=1e6 + 1e5, n_points=1001)
