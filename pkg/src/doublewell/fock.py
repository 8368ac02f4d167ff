"""Two-mode Bose-Hubbard model in the number basis.

The basis is |k, N-k> with k bosons in the left well; the Hamiltonian is
tridiagonal in it.  Hopping J is fixed to 1, the interaction is attractive
(coupling strength lam = N*U/J >= 0) and a tilt v0 >= 0 biases the left well.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import ClassificationError, InvalidInputError
from .numerics import EigenPair, TridiagonalMatrix, eigh_tridiagonal

__all__ = [
    "ModelParams",
    "GroundState",
    "Phase",
    "PhaseLabel",
    "build_hamiltonian",
    "ground_state",
    "full_spectrum",
    "spectrum_weights",
    "classify_phase",
]

# gap below this multiple of (machine eps x spectral width) counts as
# quasi-degenerate; the symmetric/antisymmetric splitting at tiny tilt
# can sink to round-off
QUASI_DEGENERATE_FACTOR = 1e3


@dataclass(frozen=True)
class ModelParams:
    """One Hamiltonian instance: particle number, coupling, tilt."""

    n_particles: int
    lam: float
    tilt: float

    def __post_init__(self):
        if self.n_particles < 1:
            raise InvalidInputError("need at least one particle")
        if self.lam < 0:
            raise InvalidInputError("coupling must be non-negative (attractive)")
        if self.tilt < 0:
            raise InvalidInputError("tilt must be non-negative")

    @property
    def interaction(self) -> float:
        """On-site interaction U = lam * J / N (J = 1)."""
        return self.lam / self.n_particles


@dataclass(frozen=True)
class GroundState:
    """Gauge-fixed ground state amplitudes plus energy and gap.

    The sign gauge makes the largest-magnitude amplitude positive, so
    overlaps between ground states at nearby couplings vary continuously.
    """

    params: ModelParams
    amplitudes: np.ndarray
    energy: float
    gap: float
    quasi_degenerate: bool


class Phase(Enum):
    BINOMIAL = "binomial"
    CAT_LIKE = "cat-like"
    SELF_TRAPPED = "self-trapped"


@dataclass(frozen=True)
class PhaseLabel:
    phase: Phase
    peak_positions: tuple
    asymmetry: float


def build_hamiltonian(params: ModelParams) -> TridiagonalMatrix:
    """Hamiltonian matrix in the |k, N-k> basis.

    diag[k]    = -(U/2) [k(k-1) + (N-k)(N-k-1)] - v0 (2k - N)
    offdiag[k] = -sqrt((k+1)(N-k))              (hopping, J = 1)

    The U/2 interaction convention is the one whose mean-field limit
    reproduces the -(lam/4N)(N z^2 + N - 2) energy term, putting the
    bifurcation at lam = 2.
    """
    n = params.n_particles
    u = params.interaction
    k = np.arange(n + 1, dtype=float)
    diag = -0.5 * u * (k * (k - 1) + (n - k) * (n - k - 1)) - params.tilt * (2 * k - n)
    kk = k[:-1]
    offdiag = -np.sqrt((kk + 1) * (n - kk))
    return TridiagonalMatrix(diag, offdiag)


def _lowest_pairs(params: ModelParams, k_lowest: Optional[int]) -> tuple:
    """Solve with the diagonal shifted to reduce cancellation at large N."""
    m = build_hamiltonian(params)
    shift = float(np.max(np.abs(m.diag)))
    shifted = TridiagonalMatrix(m.diag - shift, m.offdiag)
    pairs = eigh_tridiagonal(shifted, k_lowest)
    pairs = [EigenPair(p.value + shift, p.vector, p.residual) for p in pairs]
    return pairs, m


def _gauge_fix(vector: np.ndarray) -> np.ndarray:
    peak = np.argmax(np.abs(vector))
    if vector[peak] < 0:
        return -vector
    return vector.copy()


def ground_state(params: ModelParams) -> GroundState:
    """Lowest eigenpair of the model, gauge-fixed, with spectral gap."""
    k_lowest = min(2, params.n_particles + 1)
    pairs, m = _lowest_pairs(params, k_lowest)
    e0 = pairs[0].value
    gap = pairs[1].value - e0 if len(pairs) > 1 else 0.0
    gap = max(gap, 0.0)
    width = m.spectral_width()
    quasi = gap < QUASI_DEGENERATE_FACTOR * np.finfo(float).eps * max(width, 1.0)
    c = _gauge_fix(pairs[0].vector)
    return GroundState(params, c, e0, gap, quasi)


def full_spectrum(params: ModelParams) -> list[EigenPair]:
    """All N+1 eigenpairs, ascending.  Cost grows as N^2; meant for N up
    to a couple thousand."""
    pairs, _ = _lowest_pairs(params, None)
    return pairs


def spectrum_weights(gs: GroundState) -> np.ndarray:
    """Occupation-number distribution |c_k|^2 over the basis."""
    return gs.amplitudes**2


def _peak_indices(weights: np.ndarray, prominence: float) -> list[int]:
    """Local maxima (boundaries allowed) with relative prominence above
    ``prominence``, measured against the global maximum weight."""
    w = np.asarray(weights, dtype=float)
    n = len(w)
    wmax = float(np.max(w))
    if wmax <= 0:
        return []
    candidates = []
    for i in range(n):
        left_ok = i == 0 or w[i] >= w[i - 1]
        right_ok = i == n - 1 or w[i] >= w[i + 1]
        strict = (i > 0 and w[i] > w[i - 1]) or (i < n - 1 and w[i] > w[i + 1])
        if left_ok and right_ok and strict:
            candidates.append(i)
    peaks = []
    for i in candidates:
        # valley depth on each side before terrain rises above the peak
        left_min = w[i]
        j = i - 1
        while j >= 0 and w[j] <= w[i]:
            left_min = min(left_min, w[j])
            j -= 1
        right_min = w[i]
        j = i + 1
        while j < n and w[j] <= w[i]:
            right_min = min(right_min, w[j])
            j += 1
        prom = (w[i] - max(left_min, right_min)) / wmax
        if prom >= prominence:
            peaks.append(i)
    # flat-topped peaks register once per plateau
    deduped = []
    for i in peaks:
        if deduped and i - deduped[-1] == 1 and w[i] == w[deduped[-1]]:
            continue
        deduped.append(i)
    return deduped


def classify_phase(
    weights: Sequence[float],
    peak_prominence: float = 1e-3,
    asymmetry_threshold: float = 0.1,
) -> PhaseLabel:
    """Assign the |c_k|^2 configuration to one of three regimes.

    One central peak -> binomial-like; two peaks -> cat-like; one
    off-center peak -> self-trapped.  ``asymmetry`` is |2k/N - 1| of the
    dominant peak.
    """
    w = np.asarray(weights, dtype=float)
    if abs(float(np.sum(w)) - 1.0) > 1e-6:
        raise InvalidInputError("weights must sum to 1")
    n = len(w) - 1
    peaks = _peak_indices(w, peak_prominence)
    if not peaks:
        raise ClassificationError("no peak found in the weight distribution")
    dominant = max(peaks, key=lambda i: w[i])
    asymmetry = abs(2 * dominant / n - 1.0)
    if len(peaks) >= 2:
        phase = Phase.CAT_LIKE
    elif asymmetry < asymmetry_threshold:
        phase = Phase.BINOMIAL
    else:
        phase = Phase.SELF_TRAPPED
    return PhaseLabel(phase, tuple(peaks), float(asymmetry))
