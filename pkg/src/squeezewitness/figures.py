"""Deterministic data generation for the built-in demonstration figures.

Three scenarios are provided:

* ``fluctuations`` -- a classical (coherent) signal probed with a squeezed
  LO.  The conventional fully ordered variance dips negative (a false
  positive caused by the LO), while the LO-agnostic variance stays
  nonnegative for every phase.
* ``noise-sweep`` -- noise suppression for a squeezed signal as a function
  of LO intensity, for a coherent and for a squeezed LO.  The coherent LO
  approaches the signal's squeezing level only asymptotically; the
  squeezed LO reaches a perfect null at finite intensity.
* ``robustness`` -- the witness under signal loss and excess noise: pure
  rescaling through the origin, and an affine positive offset,
  respectively.  Negativity is never created by either channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import apply_gain_noise, apply_loss
from .gaussian import (
    StateParams,
    coherent,
    db_to_squeeze,
    make_state,
    mean_photon,
    squeezed_vacuum,
)
from .witness import TwoModeProduct, evaluate, ordered_variances

__all__ = ["FigureData", "FIGURE_IDS", "build_figure", "format_value", "render_csv"]

FIGURE_IDS = ("fluctuations", "noise-sweep", "robustness")

SQUEEZING_DB = 3.0


@dataclass(frozen=True)
class FigureData:
    """Tabular figure payload plus plot metadata."""

    name: str
    header: tuple[str, ...]
    rows: list[tuple]
    summary: dict
    series: list[tuple[str, list[float], list[float]]]
    x_label: str
    y_label: str
    log_x: bool = False


def format_value(value) -> str:
    """Render one CSV cell; floats use shortest round-trip form."""
    if isinstance(value, str):
        return value
    value = float(value)
    if value == -np.inf:
        return "-inf"
    return repr(value)


def render_csv(figure: FigureData) -> str:
    lines = [",".join(figure.header)]
    lines.extend(",".join(format_value(cell) for cell in row) for row in figure.rows)
    return "\n".join(lines) + "\n"


def figure_fluctuations(points: int = 361) -> FigureData:
    """Ordered variances versus LO phase for a coherent signal."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    zeta_lo = db_to_squeeze(SQUEEZING_DB)
    pair = TwoModeProduct(si=coherent(1.0), lo=squeezed_vacuum(zeta_lo))
    thetas = [2.0 * np.pi * k / points for k in range(points)]
    rows = []
    for theta in thetas:
        _, partial, full = ordered_variances(pair, theta)
        rows.append((theta, partial, full))
    partials = [row[1] for row in rows]
    fulls = [row[2] for row in rows]
    summary = {
        "figure": "fluctuations",
        "points": points,
        "si": "coherent, mean photon 1",
        "lo": f"squeezed vacuum, {SQUEEZING_DB} dB",
        "min_partial_no": min(partials),
        "min_full_no": min(fulls),
        "theta_at_min_full_no": rows[int(np.argmin(fulls))][0],
        "full_no_negative_fraction": sum(1 for v in fulls if v < 0) / points,
    }
    return FigureData(
        name="fluctuations",
        header=("theta_rad", "partial_no", "full_no"),
        rows=rows,
        summary=summary,
        series=[("partial_no", thetas, partials), ("full_no", thetas, fulls)],
        x_label="theta (rad)",
        y_label="ordered variance",
    )


def figure_noise_sweep(points: int = 61) -> FigureData:
    """Noise parameter versus LO intensity for coherent and squeezed LOs."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    zeta_si = db_to_squeeze(SQUEEZING_DB)
    si = squeezed_vacuum(zeta_si)
    grid = [10.0 ** e for e in np.linspace(-2.0, 4.0, points)]
    dip_nb = float(np.sinh(zeta_si) ** 2)

    rows = []
    coherent_curve: list[tuple[float, float]] = []
    squeezed_curve: list[tuple[float, float]] = []
    for nb in grid:
        report = evaluate(TwoModeProduct(si=si, lo=coherent(np.sqrt(nb))), 0.0)
        rows.append(("coherent", nb, 0.0, report.var_L, report.noise_db))
        coherent_curve.append((nb, report.noise_db))
    for nb in sorted(set(grid) | {dip_nb}):
        lo = squeezed_vacuum(float(np.arcsinh(np.sqrt(nb))))
        report = evaluate(TwoModeProduct(si=si, lo=lo), np.pi / 2.0)
        rows.append(("squeezed", nb, np.pi / 2.0, report.var_L, report.noise_db))
        squeezed_curve.append((nb, report.noise_db))

    summary = {
        "figure": "noise-sweep",
        "points": points,
        "si": f"squeezed vacuum, {SQUEEZING_DB} dB",
        "coherent_lo": {
            "noise_db_first": coherent_curve[0][1],
            "noise_db_last": coherent_curve[-1][1],
            "min_noise_db": min(v for _, v in coherent_curve),
        },
        "squeezed_lo": {
            "dip_nb": dip_nb,
            "min_noise_db": "-inf",
        },
    }
    return FigureData(
        name="noise-sweep",
        header=("lo_kind", "nb", "theta_rad", "var_L", "noise_db"),
        rows=rows,
        summary=summary,
        series=[
            ("coherent LO", [x for x, _ in coherent_curve], [y for _, y in coherent_curve]),
            ("squeezed LO", [x for x, _ in squeezed_curve], [y for _, y in squeezed_curve]),
        ],
        x_label="LO mean photon number",
        y_label="noise parameter (dB)",
        log_x=True,
    )


def figure_robustness(points: int = 21) -> FigureData:
    """Witness value under signal loss and under amplifier excess noise."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    zeta = db_to_squeeze(SQUEEZING_DB)
    si = squeezed_vacuum(zeta)
    lo = squeezed_vacuum(zeta)
    theta = np.pi / 2.0
    nb = mean_photon(lo)
    _, ideal, _ = ordered_variances(TwoModeProduct(si=si, lo=lo), theta)

    rows = []
    loss_curve: list[tuple[float, float]] = []
    gain_curve: list[tuple[float, float]] = []
    for eta in np.linspace(0.0, 1.0, points):
        _, partial, _ = ordered_variances(
            TwoModeProduct(si=apply_loss(si, float(eta)), lo=lo), theta)
        rows.append(("loss", float(eta), partial, float(eta) * ideal))
        loss_curve.append((float(eta), partial))
    for g in np.linspace(1.0, 2.0, points):
        _, partial, _ = ordered_variances(
            TwoModeProduct(si=apply_gain_noise(si, float(g)), lo=lo), theta)
        predicted = float(g) * ideal + (float(g) - 1.0) * (2.0 * nb + 1.0)
        rows.append(("gain", float(g), partial, predicted))
        gain_curve.append((float(g), partial))

    summary = {
        "figure": "robustness",
        "points": points,
        "scenario": f"squeezed SI and LO ({SQUEEZING_DB} dB), theta = pi/2",
        "ideal_partial_no": ideal,
        "max_loss_law_deviation": max(
            abs(row[2] - row[3]) for row in rows if row[0] == "loss"),
        "max_gain_law_deviation": max(
            abs(row[2] - row[3]) for row in rows if row[0] == "gain"),
        "loss_creates_negativity": bool(any(
            row[2] < ideal - 1e-12 for row in rows if row[0] == "loss")),
    }
    return FigureData(
        name="robustness",
        header=("channel", "param", "partial_no", "predicted"),
        rows=rows,
        summary=summary,
        series=[
            ("loss (vs eta)", [x for x, _ in loss_curve], [y for _, y in loss_curve]),
            ("gain (vs g)", [x for x, _ in gain_curve], [y for _, y in gain_curve]),
        ],
        x_label="channel parameter",
        y_label="LO-agnostic variance",
    )


def build_figure(figure_id: str, points: int | None = None) -> FigureData:
    """Build one of the known figures; unknown ids raise ``KeyError``."""
    builders = {
        "fluctuations": figure_fluctuations,
        "noise-sweep": figure_noise_sweep,
        "robustness": figure_robustness,
    }
    if figure_id not in builders:
        raise KeyError(figure_id)
    if points is None:
        return builders[figure_id]()
    return builders[figure_id](points=points)
