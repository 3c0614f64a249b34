"""Direct time stepping of dA/dt + int_0^t K(t, t') A(t') dt' = 0 with A(0) = 1.

This is the independent reference for every closed form in the package; it
never touches the cubic roots.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kernel import kernel_closed
from .params import PhysicalParams

MAX_PHASE_PER_STEP = 0.05


class StepSizeError(ValueError):
    """The requested step does not resolve the kernel time scales."""


@dataclass(frozen=True)
class VolterraGrid:
    t_max: float
    dt: float
    values: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(len(self.values))

    def __call__(self, t):
        """Linear interpolation of the sampled amplitude."""
        t = np.asarray(t, dtype=float)
        grid = self.times
        out = np.interp(t, grid, self.values.real) + 1j * np.interp(t, grid, self.values.imag)
        return out if out.ndim else complex(out)

    def write_csv(self, path, gamma: float):
        """Export as columns gamma_t, re_A, im_A, abs_A."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["gamma_t", "re_A", "im_A", "abs_A"])
            for t, a in zip(self.times, self.values):
                writer.writerow([f"{x:.17g}" for x in (gamma * t, a.real, a.imag, abs(a))])


def check_step(params: PhysicalParams, dt: float):
    """Reject steps with lambda dt or beta omega0 dt above 0.05."""
    problems = []
    if params.lambda_ * dt > MAX_PHASE_PER_STEP:
        problems.append(f"lambda*dt = {params.lambda_ * dt:.3g} > {MAX_PHASE_PER_STEP}")
    if params.beta != 0 and params.beta * params.omega0 * dt > MAX_PHASE_PER_STEP:
        problems.append(
            f"beta*omega0*dt = {params.beta * params.omega0 * dt:.3g} > {MAX_PHASE_PER_STEP}"
        )
    if problems:
        raise StepSizeError("step too coarse: " + ", ".join(problems))


def solve_volterra(
    kernel: Callable,
    t_max: float,
    dt: float,
    *,
    params: PhysicalParams | None = None,
) -> VolterraGrid:
    """Second-order product integration of the amplitude equation.

    ``kernel(t, t_prime_array)`` must return the complex kernel row.  The
    memory integral uses the trapezoidal rule and the outer step is a Heun
    predictor-corrector, so the trajectory converges as dt^2.  Cost is
    O(N^2) kernel evaluations.  If ``params`` is given the step is checked
    against the kernel time scales first.
    """
    if dt <= 0 or t_max < 0:
        raise ValueError("need dt > 0 and t_max >= 0")
    if params is not None:
        check_step(params, dt)

    n = int(math.floor(t_max / dt + 1e-9)) + 1
    times = dt * np.arange(n)
    a = np.empty(n, dtype=complex)
    a[0] = 1.0
    if n == 1:
        return VolterraGrid(t_max, dt, a)

    # rate[n] = -int_0^{t_n} K(t_n, t') A(t') dt'; the integral is empty at t = 0
    rate = 0j
    for k in range(n - 1):
        row = np.asarray(kernel(times[k + 1], times[: k + 2]), dtype=complex)
        if row.shape == ():
            row = np.full(k + 2, complex(row))
        # all trapezoid terms except the unknown endpoint
        history = 0.5 * row[0] * a[0] + row[1 : k + 1] @ a[1 : k + 1]
        predicted = a[k] + dt * rate
        rate_pred = -dt * (history + 0.5 * row[k + 1] * predicted)
        a[k + 1] = a[k] + 0.5 * dt * (rate + rate_pred)
        rate = -dt * (history + 0.5 * row[k + 1] * a[k + 1])
        if not (np.isfinite(a[k + 1]) and np.isfinite(rate)):
            raise FloatingPointError(
                f"non-finite amplitude at step {k + 1} (t = {times[k + 1]:.6g} s): "
                f"A = {a[k + 1]}, dA/dt = {rate}"
            )
    return VolterraGrid(t_max, dt, a)


def model_kernel(params: PhysicalParams) -> Callable:
    """Closed-form kernel bound to ``params``, in the two-time signature."""

    def kernel(t, t_prime):
        return kernel_closed(t, t_prime, params)

    return kernel


def solve_amplitude(params: PhysicalParams, t_max: float, dt: float) -> VolterraGrid:
    """Volterra amplitude for the closed-form kernel, with the step check enforced."""
    return solve_volterra(model_kernel(params), t_max, dt, params=params)


@dataclass(frozen=True)
class ConvergenceReport:
    dts: tuple[float, ...]
    deviations: tuple[float, ...]  # max |A_dt - A_finest| on the coarsest grid
    successive: tuple[float, ...]  # max |A_dt - A_dt_next| on the coarsest grid
    order: float

    def __str__(self):
        lines = [f"{'dt':>14}  {'max dev from finest':>20}"]
        lines += [f"{dt:14.6g}  {dev:20.6e}" for dt, dev in zip(self.dts, self.deviations)]
        lines.append(f"estimated order: {self.order:.3f}")
        return "\n".join(lines)


def convergence_report(kernel: Callable, t_max: float, dt_list, **kwargs) -> ConvergenceReport:
    """Grid-refinement table for ``solve_volterra``.

    ``dt_list`` must be descending with at least three entries, each an
    integer multiple of the last so every run samples the coarsest grid.
    The order is estimated from the last two successive differences,
    log(e_{k-1} / e_k) / log(dt_{k-1} / dt_k).
    """
    dts = [float(d) for d in dt_list]
    if len(dts) < 3 or any(b >= a for a, b in zip(dts, dts[1:])):
        raise ValueError("dt_list must be strictly descending with >= 3 entries")
    runs = [solve_volterra(kernel, t_max, dt, **kwargs) for dt in dts]
    coarse_n = len(runs[0].values)
    samples = []
    for dt, run in zip(dts, runs):
        stride = round(dts[0] / dt)
        if not math.isclose(stride * dt, dts[0], rel_tol=1e-9):
            raise ValueError("every dt must divide the coarsest dt")
        samples.append(run.values[::stride][:coarse_n])
    finest = samples[-1]
    deviations = tuple(float(np.max(np.abs(s - finest))) for s in samples)
    successive = tuple(
        float(np.max(np.abs(s1 - s2))) for s1, s2 in zip(samples, samples[1:])
    )
    e1, e2 = successive[-2], successive[-1]
    if e1 == 0 or e2 == 0:
        order = math.nan
    else:
        order = math.log(e1 / e2) / math.log(dts[-3] / dts[-2])
    return ConvergenceReport(tuple(dts), deviations, successive, order)
