"""Regenerate the data behind the published figures as CSV plus gnuplot scripts.

Every figure uses lambda = 0.01 gamma, Delta = 0, theta = pi/2, omega0 = 51.1e9 Hz.
Each panel's time window is wide enough to show the full decay it illustrates.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .csvio import write_table
from .metrology import cramer_rao_bound
from .params import PhysicalParams
from .sweep import observable_columns

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6")


@dataclass(frozen=True)
class Panel:
    name: str
    betas: tuple[float, ...]
    gamma_t_max: float
    n_points: int
    kind: str  # "witness" (one file per beta), "metrology" (one per beta), "entropy"/"purity" (one column per beta)


FIGURES = {
    "fig2": [
        Panel("fig2_I", (0.0,), 300.0, 3001, "witness"),
        Panel("fig2_II", (0.05e-9,), 300.0, 3001, "witness"),
    ],
    "fig3": [Panel("fig3", (0.0, 0.1e-9), 300.0, 3001, "witness")],
    "fig4": [
        Panel("fig4_a", (0.0, 0.01e-9, 0.1e-9), 3000.0, 30001, "entropy"),
        Panel("fig4_b", (0.5e-9, 0.7e-9, 1e-9), 3.0e5, 30001, "entropy"),
    ],
    "fig5": [Panel("fig5", (0.0, 0.05e-9), 300.0, 3001, "purity")],
    "fig6": [Panel("fig6", (0.0, 0.05e-9, 0.1e-9, 1e-9), 500.0, 2501, "metrology")],
}


def _provenance(fig_id: str, panel: Panel, params: PhysicalParams) -> list[str]:
    return [
        f"movingqubit {__version__}",
        f"figure = {fig_id}, panel = {panel.name}",
        f"gamma = {params.gamma!r} Hz, lambda = {params.lambda_!r} Hz, delta = {params.delta!r} Hz",
        f"omega0 = {params.omega0!r} Hz, theta = {params.theta!r}",
        f"beta = {', '.join(repr(b) for b in panel.betas)}",
        f"gamma_t in [0, {panel.gamma_t_max!r}], {panel.n_points} points",
    ]


def _panel_files(fig_id: str, panel: Panel, base: PhysicalParams):
    """Yield (filename, columns, data, comments) for one panel."""
    gamma_t = np.linspace(0.0, panel.gamma_t_max, panel.n_points)
    if panel.kind in ("entropy", "purity"):
        columns, data = ["gamma_t"], [gamma_t]
        symbol = "S" if panel.kind == "entropy" else "P"
        for beta in panel.betas:
            params = base.with_(beta=beta)
            columns.append(f"{symbol}_beta_{beta:.3g}")
            data.append(observable_columns(params, gamma_t, [panel.kind])[panel.kind])
        yield f"{panel.name}.csv", columns, np.column_stack(data), _provenance(fig_id, panel, base)
        return

    for beta in panel.betas:
        params = base.with_(beta=beta)
        suffix = "" if len(panel.betas) == 1 else f"_beta_{beta:.3g}"
        comments = _provenance(fig_id, panel, base) + [f"this file: beta = {beta!r}"]
        if panel.kind == "witness":
            cols = observable_columns(params, gamma_t, ["witness_x", "witness_opt", "coherence"])
            data = np.column_stack([gamma_t, cols["witness_x"], cols["witness_opt"], cols["coherence"] / 2])
            yield f"{panel.name}{suffix}.csv", ["gamma_tau", "w_x", "w_opt", "c_half"], data, comments
        else:
            f = observable_columns(params, gamma_t, ["qfi"])["qfi"]
            data = np.column_stack([gamma_t, f, cramer_rao_bound(f)])
            yield f"{panel.name}{suffix}.csv", ["gamma_t", "F", "delta_phi_min"], data, comments


def _gnuplot(fig_id: str, files: list[tuple[str, list[str]]]) -> str:
    lines = [
        f"# gnuplot script for {fig_id}; run: gnuplot -p {fig_id}.gp",
        'set datafile separator ","',
        "set datafile commentschars '#'",
        f'set xlabel "{"gamma tau" if fig_id in ("fig2", "fig3") else "gamma t"}"',
        "set key autotitle columnhead",
    ]
    for name, columns in files:
        lines.append(f'set title "{name}"')
        plots = [f"'{name}' using 1:{i} with lines" for i in range(2, len(columns) + 1)]
        lines.append("plot " + ", \\\n     ".join(plots))
        lines.append("pause -1")
    return "\n".join(lines) + "\n"


def reproduce_figure(fig_id: str, out_dir=".", force: bool = False, params: PhysicalParams | None = None) -> list[Path]:
    """Write the panel CSVs and ``<fig_id>.gp`` into ``out_dir``; return the paths written."""
    if fig_id not in FIGURES:
        raise KeyError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    base = params or PhysicalParams.reference()
    out = Path(out_dir)
    tables = [item for panel in FIGURES[fig_id] for item in _panel_files(fig_id, panel, base)]
    script = out / f"{fig_id}.gp"
    clashes = [str(p) for p in [out / t[0] for t in tables] + [script] if p.exists()]
    if clashes and not force:
        raise FileExistsError(f"refusing to overwrite {', '.join(clashes)} (use --force)")
    paths = [write_table(out / name, cols, data, comments, force=True) for name, cols, data, comments in tables]
    script.write_text(_gnuplot(fig_id, [(name, cols) for name, cols, _, _ in tables]))
    return paths + [script]
