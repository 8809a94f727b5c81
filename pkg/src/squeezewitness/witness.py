"""Homodyne-difference statistics and the LO-agnostic squeezing witness.

The measured observable is the photon-number difference behind a balanced
beam splitter with LO phase control.  Its variance on a product of two
Gaussian modes is evaluated in closed form from the covariance data; the
witness subtracts the LO shot-noise reference ``<b^dag b>`` so that a
negative value certifies nonclassicality of the signal mode alone,
independent of what the LO is.  Subtracting the signal intensity as well
yields the conventional two-mode criterion, which is reported alongside
but never drives the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gaussian import (
    SingleModeGaussian,
    StateParams,
    is_physical,
    make_state,
    mean_photon,
    rotation_matrix,
)

__all__ = [
    "TwoModeProduct",
    "WitnessReport",
    "NONCLASSICAL",
    "CLASSICAL",
    "DEFAULT_VERDICT_TOL",
    "homodyne_variance",
    "ordered_variances",
    "noise_parameter",
    "classify",
    "evaluate",
    "sweep",
    "optimize_lo",
]

NONCLASSICAL = "nonclassical_SI"
CLASSICAL = "classical_consistent"

DEFAULT_VERDICT_TOL = 1e-9

# Variances at or below this are treated as exactly zero when forming the
# logarithmic noise parameter.
ZERO_VARIANCE_TOL = 1e-15


@dataclass(frozen=True)
class TwoModeProduct:
    """An uncorrelated signal/local-oscillator pair of Gaussian modes."""

    si: SingleModeGaussian
    lo: SingleModeGaussian

    def __post_init__(self):
        for name, mode in (("si", self.si), ("lo", self.lo)):
            if not is_physical(mode):
                raise ValueError(f"{name} state violates the uncertainty bound")


@dataclass(frozen=True)
class WitnessReport:
    """Witness evaluation at one LO phase.

    ``partial_no`` is the LO-agnostic ordered variance
    (``var_L - shot_noise``), ``full_no`` additionally subtracts the signal
    intensity.  ``noise_db`` may be ``-inf`` when the variance vanishes.
    """

    theta: float
    var_L: float
    partial_no: float
    full_no: float
    shot_noise: float
    noise_db: float
    verdict: str

    def to_json_dict(self) -> dict:
        """JSON-ready mapping; ``-inf`` is serialized as the string "-inf"."""
        noise = self.noise_db
        return {
            "theta": self.theta,
            "var_L": self.var_L,
            "partial_no": self.partial_no,
            "full_no": self.full_no,
            "shot_noise": self.shot_noise,
            "noise_db": "-inf" if noise == -np.inf else noise,
            "verdict": self.verdict,
        }


def homodyne_variance(state: TwoModeProduct, theta: float) -> float:
    """Variance of the measured photon-number difference.

    Evaluates ``tr(C R^T C' R) - 1/2 + xi^T R^T C' R xi + xi'^T R C R^T xi'``
    with ``R = R_theta`` and primed quantities belonging to the LO.
    """
    r = rotation_matrix(theta)
    c_si, c_lo = state.si.cov, state.lo.cov
    xi_si, xi_lo = state.si.disp, state.lo.disp
    rot_lo = r.T @ c_lo @ r
    return float(
        np.trace(c_si @ rot_lo) - 0.5
        + xi_si @ rot_lo @ xi_si
        + xi_lo @ r @ c_si @ r.T @ xi_lo
    )


def ordered_variances(state: TwoModeProduct, theta: float) -> tuple[float, float, float]:
    """Raw, LO-agnostic, and fully ordered variances of the difference signal.

    Returns ``(var_L, partial_no, full_no)`` where
    ``partial_no = var_L - <b^dag b>`` and
    ``full_no = var_L - <a^dag a> - <b^dag b>``.
    """
    var = homodyne_variance(state, theta)
    partial = var - mean_photon(state.lo)
    return var, partial, partial - mean_photon(state.si)


def noise_parameter(state: TwoModeProduct, theta: float) -> float:
    """Noise level relative to shot noise, ``10 log10(var_L / <b^dag b>)``.

    Negative values certify signal nonclassicality; a vanishing variance
    returns ``-inf``.  An LO with zero mean photon number leaves the
    reference undefined and is rejected.
    """
    shot = mean_photon(state.lo)
    if shot <= 0.0:
        raise ValueError("shot-noise reference undefined: LO has zero mean photon number")
    var = homodyne_variance(state, theta)
    if var <= ZERO_VARIANCE_TOL:
        return -np.inf
    return float(10.0 * np.log10(var / shot))


def _verdict(partial_no: float, tol: float) -> str:
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    return NONCLASSICAL if partial_no < -tol else CLASSICAL


def classify(report: WitnessReport, tol: float = DEFAULT_VERDICT_TOL) -> str:
    """Verdict from the LO-agnostic variance alone.

    A negative ``full_no`` (the conventional criterion) never drives the
    verdict; it may be caused by the LO.
    """
    return _verdict(report.partial_no, tol)


def evaluate(state: TwoModeProduct, theta: float,
             tol: float = DEFAULT_VERDICT_TOL) -> WitnessReport:
    """Full witness report for one state at one LO phase."""
    var, partial, full = ordered_variances(state, theta)
    shot = mean_photon(state.lo)
    if shot <= 0.0:
        raise ValueError("shot-noise reference undefined: LO has zero mean photon number")
    noise_db = -np.inf if var <= ZERO_VARIANCE_TOL else float(10.0 * np.log10(var / shot))
    return WitnessReport(
        theta=float(theta), var_L=var, partial_no=partial, full_no=full,
        shot_noise=shot, noise_db=noise_db, verdict=_verdict(partial, tol),
    )


def sweep(states: Iterable[TwoModeProduct], theta_grid: Sequence[float],
          tol: float = DEFAULT_VERDICT_TOL) -> list[WitnessReport]:
    """One report per (state, theta) pair, states outermost, grid order kept."""
    thetas = list(theta_grid)
    if not thetas:
        raise ValueError("theta grid must be nonempty")
    return [evaluate(state, theta, tol) for state in states for theta in thetas]


def optimize_lo(si: SingleModeGaussian,
                candidates: Iterable[tuple[StateParams, float]],
                ) -> tuple[tuple[StateParams, float], float]:
    """Exhaustive search for the LO/phase pair with strongest noise suppression.

    ``candidates`` yields ``(lo_params, theta)`` pairs.  Returns the winner
    and its noise parameter; ties are broken by smaller squeezing, then
    smaller phase, then smaller orientation angle.
    """
    best_key = None
    best: tuple[tuple[StateParams, float], float] | None = None
    for params, theta in candidates:
        state = TwoModeProduct(si=si, lo=make_state(params))
        noise_db = noise_parameter(state, theta)
        key = (noise_db, params.zeta, theta, params.phi)
        if best_key is None or key < best_key:
            best_key = key
            best = ((params, theta), noise_db)
    if best is None:
        raise ValueError("candidate grid must be nonempty")
    return best
