"""Configuration-driven velocity sweeps written as deterministic CSV tables."""
from __future__ import annotations

import configparser
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .amplitude import amplitude_analytic
from .csvio import write_table
from .metrology import qfi_trajectory, von_neumann_entropy
from .params import PhysicalParams
from .qubit import density_matrices, l1_coherence, purity
from .regime import validate_regime
from .volterra import StepSizeError, check_step, solve_amplitude
from .witness import witness_optimized, witness_x_closed

# observable name -> CSV column
OBSERVABLES = {
    "amplitude": "abs_A",
    "witness_x": "w_x",
    "witness_opt": "w_opt",
    "coherence": "c_l1",
    "entropy": "S",
    "purity": "P",
    "qfi": "F",
}

DEFAULT_GAMMA_T_MAX = 50.0
DEFAULT_N_POINTS = 2000
DEFAULT_ORACLE_GAMMA_DT = 0.02


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending fields."""


def worker_count() -> int:
    """Workers from MOVINGQUBIT_WORKERS, else the number of CPUs."""
    env = os.environ.get("MOVINGQUBIT_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SweepConfig:
    params: PhysicalParams = field(default_factory=PhysicalParams)
    beta_list: tuple[float, ...] = (0.0,)
    gamma_t_max: float = DEFAULT_GAMMA_T_MAX
    n_points: int = DEFAULT_N_POINTS
    observables: tuple[str, ...] = tuple(OBSERVABLES)
    output_dir: str = "sweep_out"
    oracle: bool = False
    oracle_gamma_dt: float = DEFAULT_ORACLE_GAMMA_DT

    def __post_init__(self):
        problems = []
        if not self.beta_list:
            problems.append("beta: list must be non-empty")
        for b in self.beta_list:
            if not 0 <= b < 1:
                problems.append(f"beta: {b} outside [0, 1)")
        if not self.gamma_t_max > 0:
            problems.append(f"gamma_t_max: must be > 0, got {self.gamma_t_max}")
        if self.n_points < 2:
            problems.append(f"n_points: must be >= 2, got {self.n_points}")
        unknown = [o for o in self.observables if o not in OBSERVABLES]
        if unknown:
            problems.append(f"observables: unknown {unknown}; choose from {sorted(OBSERVABLES)}")
        if not self.observables:
            problems.append("observables: list must be non-empty")
        if self.oracle:
            for b in self.beta_list:
                try:
                    check_step(self.params.with_(beta=b), self.oracle_gamma_dt / self.params.gamma)
                except StepSizeError as exc:
                    problems.append(f"oracle.gamma_dt: {exc} (beta={b:g})")
        if problems:
            raise ConfigError("; ".join(problems))

    def gamma_t(self) -> np.ndarray:
        return np.linspace(0.0, self.gamma_t_max, self.n_points)

    def describe(self) -> list[str]:
        p = self.params
        return [
            f"movingqubit {__version__}",
            f"gamma = {p.gamma!r} Hz",
            f"lambda = {p.lambda_!r} Hz",
            f"delta = {p.delta!r} Hz",
            f"omega0 = {p.omega0!r} Hz",
            f"theta = {p.theta!r}",
            f"beta_list = {', '.join(repr(b) for b in self.beta_list)}",
            f"gamma_t_max = {self.gamma_t_max!r}",
            f"n_points = {self.n_points}",
            f"observables = {', '.join(self.observables)}",
            f"oracle = {self.oracle}",
            f"oracle_gamma_dt = {self.oracle_gamma_dt!r}",
        ]


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(";", ",").split(",") if x.strip())


def load_config(path) -> SweepConfig:
    """Read an INI-style config: [params], [sweep] and optional [oracle] sections."""
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigError(f"config: cannot read {path}")
    return config_from_parser(parser, base_dir=Path(path).parent)


def config_from_parser(parser: configparser.ConfigParser, base_dir=Path(".")) -> SweepConfig:
    problems = []

    def number(section, key, default, kind=float):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key)
        try:
            return kind(raw)
        except ValueError:
            problems.append(f"{section}.{key}: not a number: {raw!r}")
            return default

    defaults = PhysicalParams()
    gamma = number("params", "gamma", defaults.gamma)
    lam = number("params", "lambda", None)
    if lam is None:
        lam = number("params", "lambda_over_gamma", defaults.y1) * gamma
    kwargs = dict(
        gamma=gamma,
        lambda_=lam,
        delta=number("params", "delta", defaults.delta),
        omega0=number("params", "omega0", defaults.omega0),
        theta=number("params", "theta", defaults.theta),
    )
    try:
        betas = _floats(parser.get("sweep", "beta", fallback="0"))
    except ValueError:
        problems.append("sweep.beta: not a list of numbers")
        betas = (0.0,)
    observables = tuple(
        o.strip() for o in parser.get("sweep", "observables", fallback=",".join(OBSERVABLES)).split(",")
        if o.strip()
    )
    out = parser.get("sweep", "output_dir", fallback="sweep_out")
    if not os.path.isabs(out):
        out = str(Path(base_dir) / out)
    gamma_t_max = number("sweep", "gamma_t_max", DEFAULT_GAMMA_T_MAX)
    n_points = number("sweep", "n_points", DEFAULT_N_POINTS, int)
    oracle = parser.getboolean("oracle", "enabled", fallback=False) if parser.has_section("oracle") else False
    oracle_dt = number("oracle", "gamma_dt", DEFAULT_ORACLE_GAMMA_DT)
    if problems:
        raise ConfigError("; ".join(problems))
    try:
        params = PhysicalParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from None
    return SweepConfig(
        params=params,
        beta_list=betas,
        gamma_t_max=gamma_t_max,
        n_points=n_points,
        observables=observables,
        output_dir=out,
        oracle=oracle,
        oracle_gamma_dt=oracle_dt,
    )


def observable_columns(params: PhysicalParams, gamma_t: np.ndarray, names) -> dict[str, np.ndarray]:
    """Closed-form observables on a grid of dimensionless times."""
    t = np.asarray(gamma_t, dtype=float) / params.gamma
    a = amplitude_analytic(t, params)
    states = density_matrices(a, params.theta)
    out = {}
    for name in names:
        if name == "amplitude":
            out[name] = np.abs(a)
        elif name == "witness_x":
            out[name] = witness_x_closed(t, params.theta, params)
        elif name == "witness_opt":
            out[name] = witness_optimized(t, params.theta, params)
        elif name == "coherence":
            out[name] = l1_coherence(states)
        elif name == "entropy":
            out[name] = von_neumann_entropy(states)
        elif name == "purity":
            out[name] = purity(states)
        elif name == "qfi":
            out[name] = qfi_trajectory(params.theta, params, t)
        else:
            raise KeyError(name)
    return out


@dataclass
class BetaTable:
    beta: float
    columns: list[str]
    data: np.ndarray
    comments: list[str]

    @property
    def filename(self) -> str:
        return f"sweep_beta_{self.beta:.6g}.csv"


@dataclass
class SweepResult:
    config: SweepConfig
    tables: list[BetaTable]

    def write(self, output_dir=None, force: bool = False) -> list[Path]:
        out = Path(output_dir or self.config.output_dir)
        targets = [out / t.filename for t in self.tables]
        clashes = [str(p) for p in targets if p.exists()]
        if clashes and not force:
            raise FileExistsError(f"refusing to overwrite {', '.join(clashes)} (use --force)")
        return [
            write_table(path, t.columns, t.data, t.comments, force=True)
            for path, t in zip(targets, self.tables)
        ]


def _sweep_one(config: SweepConfig, beta: float) -> BetaTable:
    params = config.params.with_(beta=beta)
    gamma_t = config.gamma_t()
    cols = observable_columns(params, gamma_t, config.observables)
    data = np.column_stack([gamma_t] + [cols[o] for o in config.observables])
    comments = config.describe() + [f"beta = {beta!r}"]
    comments += [f"warning: {w}" for w in validate_regime(params)]
    if config.oracle:
        dt = config.oracle_gamma_dt / params.gamma
        grid = solve_amplitude(params, config.gamma_t_max / params.gamma, dt)
        dev = float(np.max(np.abs(grid.values - amplitude_analytic(grid.times, params))))
        comments.append(f"oracle max|A_analytic - A_volterra| = {dev:.3e}")
    if not np.all(np.isfinite(data)):
        raise FloatingPointError(f"non-finite values in sweep for beta={beta!r}")
    return BetaTable(beta, ["gamma_t"] + [OBSERVABLES[o] for o in config.observables], data, comments)


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """One table per velocity; output order follows ``config.beta_list``."""
    workers = worker_count() if workers is None else workers
    workers = min(workers, len(config.beta_list))
    if workers <= 1:
        tables = [_sweep_one(config, b) for b in config.beta_list]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(_sweep_one, [config] * len(config.beta_list), config.beta_list))
    return SweepResult(config, tables)

