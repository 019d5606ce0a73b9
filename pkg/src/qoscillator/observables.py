"""Expectation values, variances, and uncertainty products.

Eigenstates carry Delta_x Delta_p = E_n/omega (1/2 in the ground state, and
below the classical n + 1/2 for every excited level). Coherent states break
the classical lower bound: the product is 1/2 - (1-q)/2 |lambda|^2, which
approaches zero toward the convergence radius.

Means and variances are real parts taken only after checking the imaginary
contamination stays below 1e-10; anything larger signals a broken operator
pipeline and raises instead of being discarded.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import gaussexp as ga
from . import operators as ops
from .errors import InternalConsistencyError, OutsideConvergenceDisk, ZeroState
from .gaussexp import GaussExpSum
from .qarith import DeformationParams, spectrum_energy

_IMAG_TOL = 1e-10
_VAR_SLACK = 1e-12


class OperatorKind(enum.Enum):
    ANNIHILATE = "annihilate"
    CREATE = "create"
    POSITION = "position"
    MOMENTUM = "momentum"
    HAMILTONIAN = "hamiltonian"


_APPLY = {
    OperatorKind.ANNIHILATE: ops.annihilate,
    OperatorKind.CREATE: ops.create,
    OperatorKind.POSITION: ops.position_op,
    OperatorKind.MOMENTUM: ops.momentum_op,
    OperatorKind.HAMILTONIAN: ops.hamiltonian,
}


@dataclass(frozen=True)
class UncertaintyReport:
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    product: float
    energy: float


def apply_operator(kind: OperatorKind, f: GaussExpSum, params: DeformationParams):
    return _APPLY[kind](f, params)


def expectation(kind: OperatorKind, f: GaussExpSum, params: DeformationParams) -> complex:
    """<f|Op f> / <f|f> via exact inner products."""
    norm_sq = ga.inner_product(f, f).real
    if norm_sq <= 0.0:
        raise ZeroState("expectation value of a state with vanishing norm")
    return ga.inner_product(f, apply_operator(kind, f, params)) / norm_sq


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > _IMAG_TOL * max(1.0, abs(value)):
        raise InternalConsistencyError(
            f"{what} came out with imaginary part {value.imag}"
        )
    return value.real


def _variance(second_moment: float, mean: float, what: str) -> float:
    var = second_moment - mean * mean
    if var < -_VAR_SLACK * max(1.0, abs(second_moment)):
        raise InternalConsistencyError(f"negative variance for {what}: {var}")
    return max(var, 0.0)


def uncertainty_report(f: GaussExpSum, params: DeformationParams) -> UncertaintyReport:
    """Means, variances, Delta_x * Delta_p, and the energy of a state."""
    norm_sq = ga.inner_product(f, f).real
    if norm_sq <= 0.0:
        raise ZeroState("uncertainty report of a state with vanishing norm")

    xf = ops.position_op(f, params)
    pf = ops.momentum_op(f, params)
    mean_x = _real(ga.inner_product(f, xf) / norm_sq, "<x>")
    mean_p = _real(ga.inner_product(f, pf) / norm_sq, "<p>")
    # literal <f|x(xf)>: do not assume self-adjointness on arbitrary inputs
    x2 = _real(ga.inner_product(f, ops.position_op(xf, params)) / norm_sq, "<x^2>")
    p2 = _real(ga.inner_product(f, ops.momentum_op(pf, params)) / norm_sq, "<p^2>")
    energy = _real(ga.inner_product(f, ops.hamiltonian(f, params)) / norm_sq, "<H>")

    var_x = _variance(x2, mean_x, "x")
    var_p = _variance(p2, mean_p, "p")
    return UncertaintyReport(
        mean_x=mean_x,
        mean_p=mean_p,
        var_x=var_x,
        var_p=var_p,
        product=math.sqrt(var_x) * math.sqrt(var_p),
        energy=energy,
    )


def uncertainty_eigen_closed_form(n, params: DeformationParams) -> float:
    """Delta_x Delta_p in |n>: E_n/omega, at most n + 1/2."""
    return spectrum_energy(n, params) / params.omega


def _check_disk(lam: complex, q: float) -> complex:
    lam = complex(lam)
    radius = 1.0 / math.sqrt(1.0 - q)
    if not abs(lam) < radius:
        raise OutsideConvergenceDisk(
            f"|lambda|={abs(lam)} must be < 1/sqrt(1-q) = {radius}"
        )
    return lam


def uncertainty_coherent_closed_form(lam, q) -> float:
    """Delta_x Delta_p in |lambda>: 1/2 - (1-q)/2 |lambda|^2, in (0, 1/2]."""
    lam = _check_disk(lam, q)
    return 0.5 - 0.5 * (1.0 - q) * abs(lam) ** 2


def energy_coherent_closed_form(lam, q, omega) -> float:
    """<H> in |lambda>: omega(1/2 + (1+q)/2 |lambda|^2), below omega/(1-q)."""
    lam = _check_disk(lam, q)
    return omega * (0.5 + 0.5 * (1.0 + q) * abs(lam) ** 2)
