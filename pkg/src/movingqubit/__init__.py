"""Exact non-Markovian dynamics of a two-level atom moving through a leaky cavity."""

__version__ = "0.1.0"

from .amplitude import (  # noqa: E402
    AmplitudeSolution,
    DegenerateRootsWarning,
    amplitude_analytic,
    amplitude_solution,
    cubic_roots,
)
from .kernel import ConvergenceError, kernel_closed, kernel_integral, spectral_density  # noqa: E402
from .metrology import (  # noqa: E402
    PhaseProbe,
    cramer_rao_bound,
    encode_phase,
    entropy_trajectory,
    qfi_phase,
    von_neumann_entropy,
)
from .params import PhysicalParams  # noqa: E402
from .qubit import DensityMatrix2, PauliPropagator, evolved_state, l1_coherence, propagator, purity  # noqa: E402
from .regime import validate_regime  # noqa: E402
from .volterra import VolterraGrid, convergence_report, solve_amplitude, solve_volterra  # noqa: E402
from .witness import (  # noqa: E402
    BlindMeasurement,
    WitnessPoint,
    blind_measure,
    survival_time,
    witness_generic,
    witness_optimized,
    witness_x_closed,
)
