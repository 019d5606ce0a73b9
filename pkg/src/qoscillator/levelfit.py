"""Least-squares estimation of (omega, q) from observed vibrational levels.

The deformed spectrum E_n = omega([n] + q^n/2) is linear in omega, so omega
is profiled out in closed form at every candidate q and the search reduces
to one dimension: a global grid over q (the profile can flatten toward the
harmonic limit q -> 1, where a local search would stall) followed by
golden-section refinement around the best grid point. The anharmonicity
reported is eps = 1 - q, the coefficient of the quadratic correction
-n^2 eps/2 that the spectrum acquires near q = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateData
from .qarith import q_integer

_Q_LO, _Q_HI = 0.001, 0.9999
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_REFINE_TOL = 1e-10


@dataclass(frozen=True)
class LevelData:
    """Observed (n, E_n) pairs, n strictly increasing, at least three."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self):
        entries = tuple((int(n), float(e)) for n, e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 3:
            raise DegenerateData(
                f"need at least 3 levels to fit two parameters, got {len(entries)}"
            )
        ns = [n for n, _ in entries]
        if any(n < 0 for n in ns):
            raise ValueError("quantum numbers must be nonnegative")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("quantum numbers must be strictly increasing")
        if not all(math.isfinite(e) for _, e in entries):
            raise ValueError("energies must be finite")

    @property
    def ns(self) -> np.ndarray:
        return np.array([n for n, _ in self.entries])

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.entries])


@dataclass(frozen=True)
class FitResult:
    omega: float
    q: float
    rms_residual: float
    anharmonicity: float


def _shape_vector(ns, q):
    return np.array([q_integer(n, q) + 0.5 * q**n for n in ns])


def _profiled_rms(q, ns, energies):
    """Best omega at this q (closed form) and the resulting rms."""
    s = _shape_vector(ns, q)
    omega = float(energies @ s) / float(s @ s)
    resid = omega * s - energies
    return omega, math.sqrt(float(resid @ resid) / len(ns))


def fit_levels(data: LevelData, q_grid_size: int = 512) -> FitResult:
    """Global grid over q plus golden-section refinement of the profile."""
    if q_grid_size < 2:
        raise ValueError("q_grid_size must be at least 2")
    energies = data.energies
    if energies.max() == energies.min():
        raise DegenerateData("all observed energies are equal; no oscillator fits")
    ns = data.ns

    grid = np.linspace(_Q_LO, _Q_HI, q_grid_size)
    rms_grid = np.array([_profiled_rms(q, ns, energies)[1] for q in grid])
    best = int(np.argmin(rms_grid))  # ties resolve to the smaller q

    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, q_grid_size - 1)]
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    f_c = _profiled_rms(c, ns, energies)[1]
    f_d = _profiled_rms(d, ns, energies)[1]
    while hi - lo > _REFINE_TOL:
        if f_c <= f_d:
            hi, d, f_d = d, c, f_c
            c = hi - _GOLDEN * (hi - lo)
            f_c = _profiled_rms(c, ns, energies)[1]
        else:
            lo, c, f_c = c, d, f_d
            d = lo + _GOLDEN * (hi - lo)
            f_d = _profiled_rms(d, ns, energies)[1]

    q_best = 0.5 * (lo + hi)
    omega, rms = _profiled_rms(q_best, ns, energies)
    if rms_grid[best] < rms:
        q_best = grid[best]
        omega, rms = _profiled_rms(q_best, ns, energies)
    return FitResult(
        omega=omega, q=float(q_best), rms_residual=rms, anharmonicity=1.0 - float(q_best)
    )


def predict_levels(fit: FitResult, n_max: int) -> list[tuple[int, float]]:
    """Model energies for n = 0..n_max; all below omega/(1-q)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    out = []
    for n in range(n_max + 1):
        qi = q_integer(n, fit.q)
        qpow = 1.0 - (1.0 - fit.q) * qi
        out.append((n, fit.omega * (qi + 0.5 * qpow)))
    return out
