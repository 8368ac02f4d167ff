"""Coupling sweeps, peak detection and finite-size scaling fits.

A scan walks a coupling grid at fixed particle number and tilt, computing
whichever observables are requested per node.  Peaks of the resulting
curves are refined parabolically and fed into log-log fits that extract
the convergence exponent of peak positions and the decay exponent of
correlation maxima.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import DegeneracyError, DoubleWellError, InvalidInputError
from .fock import ModelParams, classify_phase, ground_state, spectrum_weights
from .numerics import LinearFit, linear_fit, refine_peak
from .observables import (
    chi_finite_difference,
    chi_perturbative,
    correlations,
    rho1,
    rho2,
    von_neumann_entropy,
)

__all__ = [
    "ScanConfig",
    "ScanRow",
    "ScanResult",
    "PeakInfo",
    "ScalingFit",
    "scan",
    "find_peaks",
    "refined_chi_peaks",
    "correlation_peaks",
    "fit_position_exponent",
    "fit_value_scaling",
]

KNOWN_OBSERVABLES = ("chi", "chi_sum", "entropy", "correlations", "phase")

SCAN_COLUMNS = (
    "lambda",
    "chi_fd",
    "chi_fd_converged",
    "chi_sum",
    "e0",
    "gap",
    "s1",
    "s2",
    "mutual_info",
    "classical_corr",
    "discord",
    "theta_min",
    "phi_min",
    "mean_imbalance",
    "phase_label",
)


@dataclass(frozen=True)
class ScanConfig:
    n_particles: int
    tilt: float
    lambda_min: float
    lambda_max: float
    lambda_steps: int
    observables: tuple = ("chi",)
    delta_lambda: Optional[float] = None
    discord_grid: int = 100

    def __post_init__(self):
        if self.lambda_steps < 1:
            raise InvalidInputError("need at least one step")
        if self.lambda_steps > 1 and not self.lambda_min < self.lambda_max:
            raise InvalidInputError("need lambda_min < lambda_max")
        unknown = set(self.observables) - set(KNOWN_OBSERVABLES)
        if unknown:
            raise InvalidInputError(f"unknown observables: {sorted(unknown)}")

    def lambdas(self) -> np.ndarray:
        if self.lambda_steps == 1:
            return np.array([self.lambda_min])
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps)


@dataclass(frozen=True)
class ScanRow:
    lam: float
    chi_fd: float = math.nan
    chi_fd_converged: Optional[bool] = None
    chi_sum: float = math.nan
    e0: float = math.nan
    gap: float = math.nan
    s1: float = math.nan
    s2: float = math.nan
    mutual_info: float = math.nan
    classical_corr: float = math.nan
    discord: float = math.nan
    theta_min: float = math.nan
    phi_min: float = math.nan
    mean_imbalance: float = math.nan
    phase_label: str = ""
    error: str = ""


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    rows: tuple

    def column(self, name: str) -> np.ndarray:
        attr = {"lambda": "lam", "classical_corr": "classical_corr"}.get(name, name)
        return np.array([getattr(r, attr) for r in self.rows], dtype=float)

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([r.lam for r in self.rows])

    @property
    def warnings(self) -> int:
        return sum(1 for r in self.rows if r.error)


@dataclass(frozen=True)
class PeakInfo:
    lambda_max: float
    height: float
    grid_index: int


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    fit: LinearFit
    n_values: tuple
    model: str = "power"
    power_r_squared: float = math.nan
    exponential_r_squared: float = math.nan


def _scan_row(config: ScanConfig, lam: float) -> ScanRow:
    params = ModelParams(config.n_particles, lam, config.tilt)
    row = ScanRow(lam=lam)
    errors = []
    gs = ground_state(params)
    w = spectrum_weights(gs)
    n = config.n_particles
    imbalance = float(np.dot(w, 2 * np.arange(n + 1) / n - 1))
    row = replace(row, e0=gs.energy, gap=gs.gap, mean_imbalance=imbalance)

    if "chi" in config.observables:
        try:
            res = chi_finite_difference(params, config.delta_lambda)
            row = replace(row, chi_fd=res.chi, chi_fd_converged=res.converged)
        except DoubleWellError as exc:
            errors.append(f"chi: {exc}")
    if "chi_sum" in config.observables:
        try:
            row = replace(row, chi_sum=chi_perturbative(params))
        except DoubleWellError as exc:
            errors.append(f"chi_sum: {exc}")
    if "entropy" in config.observables and "correlations" not in config.observables:
        try:
            row = replace(
                row,
                s1=von_neumann_entropy(rho1(gs)),
                s2=von_neumann_entropy(rho2(gs)),
            )
        except DoubleWellError as exc:
            errors.append(f"entropy: {exc}")
    if "correlations" in config.observables:
        try:
            cs = correlations(gs, config.discord_grid)
            row = replace(
                row,
                s1=cs.s1,
                s2=cs.s2,
                mutual_info=cs.mutual_info,
                classical_corr=cs.classical,
                discord=cs.discord,
                theta_min=cs.argmin_basis.theta,
                phi_min=cs.argmin_basis.azimuth,
            )
        except DoubleWellError as exc:
            errors.append(f"correlations: {exc}")
    if "phase" in config.observables:
        try:
            row = replace(row, phase_label=classify_phase(w).phase.value)
        except DoubleWellError as exc:
            errors.append(f"phase: {exc}")
    if errors:
        row = replace(row, error="; ".join(errors))
    return row


def scan(config: ScanConfig, max_workers: Optional[int] = None) -> ScanResult:
    """Evaluate the requested observables on the coupling grid.

    Rows are independent pure computations; with ``max_workers`` > 1 they
    run on a thread pool but are always assembled in grid order, so the
    output is deterministic either way.
    """
    lams = [float(x) for x in config.lambdas()]
    if max_workers is None or max_workers <= 1:
        rows = [_scan_row(config, lam) for lam in lams]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(lambda lam: _scan_row(config, lam), lams))
    return ScanResult(config, tuple(rows))


def find_peaks(
    result: ScanResult, field_name: str, prominence: float = 0.05
) -> list[PeakInfo]:
    """Interior local maxima of one scan column, parabolically refined.

    Prominence of a peak is its height above the higher of the two
    flanking minima, divided by its height.
    """
    if len(result.rows) < 3:
        raise InvalidInputError("need at least 3 rows")
    ys = result.column(field_name)
    xs = result.lambdas
    peaks = []
    for i in range(1, len(ys) - 1):
        if not (ys[i] >= ys[i - 1] and ys[i] >= ys[i + 1] and ys[i] > 0):
            continue
        if ys[i] == ys[i - 1]:  # plateau: keep only its left edge
            continue
        left = ys[i]
        j = i - 1
        while j >= 0 and ys[j] <= ys[i]:
            left = min(left, ys[j])
            j -= 1
        right = ys[i]
        j = i + 1
        while j < len(ys) and ys[j] <= ys[i]:
            right = min(right, ys[j])
            j += 1
        prom = (ys[i] - max(left, right)) / ys[i]
        if not np.isfinite(prom) or prom < prominence:
            continue
        vertex = refine_peak(xs, ys, i)
        peaks.append(PeakInfo(vertex.x, vertex.y, i))
    return peaks


def refined_chi_peaks(
    n_particles: int,
    tilt: float,
    lambda_min: float = 1.8,
    lambda_max: float = 2.5,
    steps: int = 500,
    prominence: float = 0.05,
    refine_steps: int = 100,
    max_workers: Optional[int] = None,
) -> list[PeakInfo]:
    """Two-pass susceptibility peak location.

    A coarse scan detects peaks; each is then re-scanned with
    ``refine_steps`` nodes across +-2 coarse cells and refined again, so
    the position is resolved well below the coarse grid spacing.
    """
    config = ScanConfig(n_particles, tilt, lambda_min, lambda_max, steps, ("chi",))
    coarse = scan(config, max_workers)
    peaks = find_peaks(coarse, "chi_fd", prominence)
    spacing = (lambda_max - lambda_min) / (steps - 1)
    refined = []
    for peak in peaks:
        lo = max(lambda_min, peak.lambda_max - 2 * spacing)
        hi = min(lambda_max, peak.lambda_max + 2 * spacing)
        sub = scan(
            ScanConfig(n_particles, tilt, lo, hi, refine_steps, ("chi",)),
            max_workers,
        )
        ys = sub.column("chi_fd")
        i = int(np.argmax(ys))
        if 0 < i < len(ys) - 1:
            vertex = refine_peak(sub.lambdas, ys, i)
            refined.append(PeakInfo(vertex.x, vertex.y, peak.grid_index))
        else:
            refined.append(PeakInfo(float(sub.lambdas[i]), float(ys[i]), peak.grid_index))
    refined.sort(key=lambda p: p.lambda_max)
    return refined


def correlation_peaks(
    n_particles: int,
    tilt: float,
    lambda_min: float = 2.0,
    lambda_max: float = 2.3,
    steps: int = 31,
    zoom_stages: int = 2,
    grid_intervals: int = 100,
) -> dict[str, PeakInfo]:
    """Peak position and height of discord and mutual information.

    Uses ground-state-only solves, so it stays usable at several
    thousand particles.  Each field's maximum is bracketed by repeatedly
    zooming the scan window around the running argmax, then sharpened by
    a parabolic step.  Evaluations are cached and shared between fields.
    """
    cache: dict[float, tuple] = {}

    def values_at(lam: float) -> tuple:
        if lam not in cache:
            gs = ground_state(ModelParams(n_particles, lam, tilt))
            cs = correlations(gs, grid_intervals)
            cache[lam] = (cs.discord, cs.mutual_info)
        return cache[lam]

    out = {}
    for fi, field_name in enumerate(("discord", "mutual_info")):
        lo, hi = lambda_min, lambda_max
        n_nodes = steps
        best_x, best_y = math.nan, -math.inf
        for stage in range(zoom_stages + 1):
            xs = np.linspace(lo, hi, n_nodes)
            ys = np.array([values_at(float(x))[fi] for x in xs])
            i = int(np.argmax(ys))
            best_x, best_y = float(xs[i]), float(ys[i])
            if 0 < i < len(ys) - 1 and stage == zoom_stages:
                vertex = refine_peak(xs, ys, i)
                best_x, best_y = vertex.x, vertex.y
            half = (hi - lo) * 0.15
            lo = max(lambda_min, best_x - half)
            hi = min(lambda_max, best_x + half)
        out[field_name] = PeakInfo(best_x, best_y, i)
    return out


def fit_position_exponent(
    n_values: Sequence[int],
    lambda_maxes: Sequence[float],
    lambda_star: float = 2.0,
) -> ScalingFit:
    """Exponent of |lambda_max - lambda_star| ~ N^(-exponent).

    Fits ln|lambda_max - lambda_star| against ln N; the exponent is the
    negated slope.
    """
    n_values = list(n_values)
    lambda_maxes = list(lambda_maxes)
    if len(n_values) < 3:
        raise InvalidInputError("need at least 3 sizes")
    dist = np.abs(np.asarray(lambda_maxes) - lambda_star)
    if np.any(dist == 0):
        raise InvalidInputError("a peak sits exactly at lambda_star")
    fit = linear_fit(np.log(n_values), np.log(dist))
    return ScalingFit(-fit.slope, fit, tuple(n_values), "power")


def fit_value_scaling(
    n_values: Sequence[int],
    peak_values: Sequence[float],
    model: str = "power",
) -> ScalingFit:
    """Scaling of peak heights with particle number.

    ``model="power"`` fits ln(value) vs ln N (decay exponent is the
    negated slope); ``model="exponential"`` fits ln(value) vs N.  The r^2
    of both models is always reported so callers can compare them.
    """
    n_values = list(n_values)
    vals = np.asarray(list(peak_values), dtype=float)
    if len(n_values) < 3:
        raise InvalidInputError("need at least 3 sizes")
    if np.any(vals <= 0):
        raise InvalidInputError("peak values must be positive")
    if model not in ("power", "exponential"):
        raise InvalidInputError(f"unknown model {model!r}")
    log_v = np.log(vals)
    power_fit = linear_fit(np.log(n_values), log_v)
    exp_fit = linear_fit(np.asarray(n_values, dtype=float), log_v)
    fit = power_fit if model == "power" else exp_fit
    return ScalingFit(
        -fit.slope,
        fit,
        tuple(n_values),
        model,
        power_r_squared=power_fit.r_squared,
        exponential_r_squared=exp_fit.r_squared,
    )
