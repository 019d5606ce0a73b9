"""Adaptive quadrature oracle for cross-checking the exact inner products.

Deliberately independent of the closed-form Gaussian algebra: plain
float64 adaptive Simpson with interval bisection and the embedded
coarse/fine Richardson error estimate. Results never feed production
paths; the exact algebra stays authoritative and this module only
verifies it.

Integrands must decay like exp(-x^2); the default window [-12, 12]
absorbs the coefficient growth that operator-applied states carry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoConvergence

_INITIAL_PANELS = 8


@dataclass(frozen=True)
class QuadratureConfig:
    half_width: float = 12.0
    max_refinements: int = 48
    tol: float = 1e-11

    def __post_init__(self):
        if self.half_width < 8.0:
            raise ValueError("half_width must be at least 8")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be positive")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float


def _simpson(fa, fm, fb, width):
    return width / 6.0 * (fa + 4.0 * fm + fb)


def integrate_line(f, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate a complex-valued function over [-half_width, half_width]."""
    cfg = cfg or QuadratureConfig()
    a, b = -cfg.half_width, cfg.half_width
    panel_tol = cfg.tol / _INITIAL_PANELS

    total = 0j
    err_total = 0.0
    edges = [a + (b - a) * i / _INITIAL_PANELS for i in range(_INITIAL_PANELS + 1)]
    for left, right in zip(edges, edges[1:]):
        mid = 0.5 * (left + right)
        whole = _simpson(f(left), f(mid), f(right), right - left)
        value, err = _refine(
            f, left, f(left), mid, f(mid), right, f(right), whole,
            panel_tol, cfg.max_refinements,
        )
        total += value
        err_total += err
    return QuadratureResult(value=total, error_estimate=err_total)


def _refine(f, a, fa, m, fm, b, fb, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    # Richardson: the fine estimate is off by ~delta/15 for Simpson
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, abs(delta) / 15.0
    if depth <= 0:
        raise NoConvergence(
            f"quadrature did not reach tol on [{a}, {b}] (residual {abs(delta) / 15.0})"
        )
    lv, le = _refine(f, a, fa, lm, flm, m, fm, left, tol / 2.0, depth - 1)
    rv, re_ = _refine(f, m, fm, rm, frm, b, fb, right, tol / 2.0, depth - 1)
    return lv + rv, le + re_
