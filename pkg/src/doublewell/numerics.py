"""Small self-contained numerical kernels.

Symmetric tridiagonal and small Hermitian eigenproblems, ordinary least
squares, bracketed root finding on a grid, and three-point parabolic peak
refinement.  Everything here is pure and thread-safe.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, InvalidInputError

__all__ = [
    "TridiagonalMatrix",
    "EigenPair",
    "LinearFit",
    "PeakVertex",
    "eigh_tridiagonal",
    "eigh_hermitian_small",
    "linear_fit",
    "find_roots",
    "refine_peak",
]


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Real symmetric tridiagonal matrix stored as diagonal + off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        offdiag = np.asarray(self.offdiag, dtype=float)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)
        if diag.ndim != 1 or offdiag.ndim != 1:
            raise InvalidInputError("diag and offdiag must be 1-d")
        if len(offdiag) != len(diag) - 1:
            raise InvalidInputError(
                "offdiag must be one element shorter than diag "
                f"(got {len(diag)} and {len(offdiag)})"
            )
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
            raise InvalidInputError("matrix entries must be finite")

    @property
    def dimension(self) -> int:
        return len(self.diag)

    def spectral_width(self) -> float:
        """Gershgorin upper bound on the spread of the spectrum."""
        radius = np.zeros(self.dimension)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        upper = np.max(self.diag + radius)
        lower = np.min(self.diag - radius)
        return float(upper - lower)

    def dense(self) -> np.ndarray:
        """Materialize as a full matrix (for oracles and small problems)."""
        m = np.diag(self.diag)
        idx = np.arange(self.dimension - 1)
        m[idx, idx + 1] = self.offdiag
        m[idx + 1, idx] = self.offdiag
        return m

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with its unit-norm eigenvector and achieved residual."""

    value: float
    vector: np.ndarray
    residual: float = 0.0


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    r_squared: float


class PeakVertex(NamedTuple):
    x: float
    y: float
    degenerate: bool


def eigh_tridiagonal(
    m: TridiagonalMatrix, k_lowest: Optional[int] = None
) -> list[EigenPair]:
    """Eigenpairs of a real symmetric tridiagonal matrix, ascending.

    Parameters
    ----------
    m : TridiagonalMatrix
    k_lowest : int or None
        Number of lowest pairs wanted; ``None`` returns all of them.
        Small requests use bisection + inverse iteration (LAPACK stebz/
        stein), full requests the standard implicit-shift path.

    Returns
    -------
    list of EigenPair, values ascending, vectors mutually orthonormal.
    Each pair carries the residual ``||A v - w v||``.
    """
    dim = m.dimension
    if k_lowest is None:
        k_lowest = dim
    if not 1 <= k_lowest <= dim:
        raise InvalidInputError(f"k_lowest={k_lowest} outside [1, {dim}]")
    try:
        if dim == 1:
            values = np.array([m.diag[0]])
            vectors = np.ones((1, 1))
        elif k_lowest < dim:
            values, vectors = scipy.linalg.eigh_tridiagonal(
                m.diag, m.offdiag, select="i", select_range=(0, k_lowest - 1)
            )
        else:
            values, vectors = scipy.linalg.eigh_tridiagonal(m.diag, m.offdiag)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc

    pairs = []
    for i in range(k_lowest):
        v = vectors[:, i]
        v = v / np.linalg.norm(v)
        res = float(np.linalg.norm(m.matvec(v) - values[i] * v))
        pairs.append(EigenPair(float(values[i]), v, res))
    return pairs


def eigh_hermitian_small(
    h: np.ndarray, tol: float = 1e-12
) -> list[tuple[float, np.ndarray]]:
    """Spectral decomposition of a small Hermitian matrix.

    Raises InvalidInputError when ``h`` is not Hermitian within ``tol``
    relative to its norm.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidInputError("expected a square matrix")
    scale = max(1.0, float(np.linalg.norm(h)))
    if np.max(np.abs(h - h.conj().T)) > tol * scale:
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh(h)
    return [(float(values[i]), vectors[:, i]) for i in range(h.shape[0])]


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Ordinary least squares line through (xs, ys)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise InvalidInputError("xs and ys must be 1-d of equal length")
    if len(xs) < 3:
        raise InvalidInputError("need at least 3 points")
    if np.ptp(xs) == 0.0:
        raise InvalidInputError("xs are degenerate (all equal)")
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(ys - ys.mean(), ys - ys.mean()))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return LinearFit(float(slope), float(intercept), r2)


def find_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid_points: int = 10_000,
    xtol: float = 1e-12,
) -> list[float]:
    """All roots of ``f`` on [lo, hi] found by grid scan + bisection.

    Scans ``grid_points`` nodes for sign changes and bisects each bracket
    down to ``xtol``.  Exact zeros sitting on grid nodes are kept once.
    An interval with no sign change yields an empty list, not an error.
    """
    if not lo < hi:
        raise InvalidInputError("need lo < hi")
    if grid_points < 2:
        raise InvalidInputError("need at least 2 grid points")
    xs = np.linspace(lo, hi, grid_points)
    try:  # vectorized evaluation when f broadcasts over arrays
        fs = np.asarray(f(xs), dtype=float)
        if fs.shape != xs.shape:
            raise ValueError
    except Exception:
        fs = np.array([f(x) for x in xs], dtype=float)
    if not np.all(np.isfinite(fs)):
        raise InvalidInputError("f must be finite on the interval")

    roots = [float(x) for x, y in zip(xs, fs) if y == 0.0]
    sign_change = (fs[:-1] * fs[1:] < 0.0) & (fs[:-1] != 0.0) & (fs[1:] != 0.0)
    (idx,) = np.nonzero(sign_change)
    if len(idx):
        # bisect all brackets in lockstep (vectorized f where possible)
        a, b, fa = xs[idx].copy(), xs[idx + 1].copy(), fs[idx].copy()
        while np.max(b - a) > xtol:
            mid = 0.5 * (a + b)
            try:
                fm = np.asarray(f(mid), dtype=float)
                if fm.shape != mid.shape:
                    raise ValueError
            except Exception:
                fm = np.array([f(x) for x in mid], dtype=float)
            hit = fm == 0.0
            go_left = fa * fm < 0.0
            b = np.where(go_left | hit, mid, b)
            a = np.where(~go_left, mid, a)
            fa = np.where(~go_left & ~hit, fm, fa)
        roots.extend((0.5 * (a + b)).tolist())
    roots.sort()
    # merge near-duplicates (a node zero adjacent to a bracket root)
    merged: list[float] = []
    for r in roots:
        if not merged or abs(r - merged[-1]) > 10 * xtol + 1e-15:
            merged.append(r)
    return merged


def refine_peak(
    xs: Sequence[float], ys: Sequence[float], index_of_local_max: int
) -> PeakVertex:
    """Refine a gridded local maximum with a 3-point parabola.

    Fits the parabola through the point and its two neighbors and returns
    the vertex.  Collinear points (zero curvature) return the grid point
    unchanged with ``degenerate=True``.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    i = index_of_local_max
    if not 0 < i < len(xs) - 1:
        raise InvalidInputError("index must be interior")
    x0, x1, x2 = xs[i - 1 : i + 2]
    y0, y1, y2 = ys[i - 1 : i + 2]
    # Lagrange form: p(x) = a x^2 + b x + c
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    if a == 0.0:
        return PeakVertex(float(x1), float(y1), True)
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
    xv = -b / (2 * a)
    c = y1 - a * x1**2 - b * x1
    yv = a * xv**2 + b * xv + c
    return PeakVertex(float(xv), float(yv), False)
