"""Mean-field limit of the two-mode model.

Energy per particle as a function of population imbalance z and relative
phase, its stationary points at zero phase, and the coupling where the
global minimizer jumps away from z = 0 (the bifurcation the full quantum
treatment probes).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .numerics import find_roots

__all__ = [
    "SemiclassicalPoint",
    "NO_TRANSITION",
    "energy_per_particle",
    "stationary_z",
    "z_min",
    "critical_lambda",
]

# sentinel returned by critical_lambda when the minimizer moves smoothly
NO_TRANSITION = float("nan")

_EDGE = 1e-9  # stay off |z| = 1 where the kinetic term's slope diverges


@dataclass(frozen=True)
class SemiclassicalPoint:
    z: float
    phase_diff: float
    energy_per_particle: float


def energy_per_particle(
    z: float, phase_diff: float, lam: float, tilt: float, n_particles: int
) -> float:
    """Mean-field energy per particle at imbalance z and relative phase.

    E/N = -sqrt(1-z^2) cos(phase) - (lam/4N)(N z^2 + N - 2) - tilt * z
    """
    if abs(z) >= 1:
        raise InvalidInputError("imbalance must satisfy |z| < 1")
    n = n_particles
    return (
        -math.sqrt(1 - z * z) * math.cos(phase_diff)
        - lam / (4 * n) * (n * z * z + n - 2)
        - tilt * z
    )


def _stationarity(z, lam: float, tilt: float):
    # d(E/N)/dz at zero phase; the (N-2)/N piece of the energy is
    # z-independent and drops out here.  Broadcasts over arrays of z.
    return z / np.sqrt(1 - z * z) - 0.5 * lam * z - tilt


def stationary_z(lam: float, tilt: float, grid_points: int = 10_000) -> list[float]:
    """All zero-phase stationary imbalances in (-1, 1)."""
    if lam < 0:
        raise InvalidInputError("coupling must be non-negative")
    return find_roots(
        lambda z: _stationarity(z, lam, tilt),
        -1 + _EDGE,
        1 - _EDGE,
        grid_points,
    )


def z_min(lam: float, tilt: float, n_particles: int = 1000) -> SemiclassicalPoint:
    """Global energy minimizer among the zero-phase stationary points.

    Ties (the symmetric double minimum at zero tilt) break toward larger
    z, matching the convention that a positive tilt favors the left well.
    """
    roots = stationary_z(lam, tilt)
    assert roots, "stationarity equation has no root; cannot happen for tilt >= 0"
    best = None
    for z in sorted(roots):  # ascending, so ties resolve to the larger z
        e = energy_per_particle(z, 0.0, lam, tilt, n_particles)
        if best is None or e <= best.energy_per_particle + 1e-15:
            best = SemiclassicalPoint(z, 0.0, e)
    return best


def critical_lambda(
    tilt: float,
    n_particles: int = 1000,
    resolution: float = 0.05,
    jump_threshold: float = 0.1,
    lam_lo: float = 0.5,
    lam_hi: float = 4.0,
) -> float:
    """Coupling where the minimizer jumps away from zero.

    Scans [lam_lo, lam_hi] at ``resolution`` and reports the midpoint of
    the first step where z_min grows by more than ``jump_threshold``.
    Returns the NO_TRANSITION sentinel (NaN) when no step qualifies,
    which is the smooth large-tilt case.
    """
    if resolution <= 0:
        raise InvalidInputError("resolution must be positive")
    lams = np.arange(lam_lo, lam_hi + 0.5 * resolution, resolution)
    prev = z_min(lams[0], tilt, n_particles).z
    for lam in lams[1:]:
        cur = z_min(float(lam), tilt, n_particles).z
        if cur - prev > jump_threshold:
            return float(lam) - 0.5 * resolution
        prev = cur
    return NO_TRANSITION
