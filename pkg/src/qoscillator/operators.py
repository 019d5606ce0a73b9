"""Deformed ladder operators realized on the Gaussian-exponential family.

The annihilation and creation operators act through plane waves and the
imaginary argument shift x -> x + i*alpha:

    a   = [exp(-2i*alpha*x) - exp(i*alpha d/dx) exp(-i*alpha*x)] / (-i s)
    a+  = [exp( 2i*alpha*x) - exp(i*alpha*x) exp(i*alpha d/dx)] / ( i s)

with s = sqrt(1-q). Factors compose right to left: in ``a`` the plane wave
acts first and the shift second, in ``a+`` the shift acts first. The two
orders differ by exp(+-alpha^2) per term and only the written one
reproduces the eigenfunctions; ``create_swapped_order`` exists as the
deliberate fault witness for that sensitivity.

Position, momentum and the Hamiltonian are built from a and a+, never by
direct multiplication by x or differentiation.
"""

from __future__ import annotations

import numpy as np

from . import ddnum as dd
from . import gaussexp as ga
from .gaussexp import GaussExpSum
from .qarith import DeformationParams


def _inv_cdd(sign: float, s_dd) -> dd.CDD:
    """The ladder prefactor 1/(sign * i * s) = -sign * i / s as a CDD scalar."""
    inv = dd.div(dd.from_float(np.float64(-sign)), s_dd)
    zero = np.float64(0.0)
    return dd.cdd_make((zero, zero), inv)


def annihilate(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """Apply a: multiply by exp(-i*alpha*x) first, then shift by i*alpha."""
    c = ga.q_constants(params.q)
    piece1 = ga._multiply_plane_wave_cdd(f, c.i_alpha(-2.0))
    piece2 = ga._shift_argument_cdd(
        ga._multiply_plane_wave_cdd(f, c.i_alpha(-1.0)), c.i_alpha(1.0)
    )
    num = ga.add(piece1, ga.scale(piece2, -1.0))
    return ga._scale_cdd(num, _inv_cdd(-1.0, c.sqrt_one_minus_q))


def create(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """Apply a+: shift by i*alpha first, then multiply by exp(i*alpha*x)."""
    c = ga.q_constants(params.q)
    piece1 = ga._multiply_plane_wave_cdd(f, c.i_alpha(2.0))
    piece2 = ga._multiply_plane_wave_cdd(
        ga._shift_argument_cdd(f, c.i_alpha(1.0)), c.i_alpha(1.0)
    )
    num = ga.add(piece1, ga.scale(piece2, -1.0))
    return ga._scale_cdd(num, _inv_cdd(1.0, c.sqrt_one_minus_q))


def create_swapped_order(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """Fault witness: a+ with the second piece composed in the wrong order.

    Multiplies by exp(i*alpha*x) before shifting, which drags the plane wave
    through the shift and scales every second-piece term by exp(-alpha^2).
    Used to pin the operator-order regression; never correct.
    """
    c = ga.q_constants(params.q)
    piece1 = ga._multiply_plane_wave_cdd(f, c.i_alpha(2.0))
    piece2 = ga._shift_argument_cdd(
        ga._multiply_plane_wave_cdd(f, c.i_alpha(1.0)), c.i_alpha(1.0)
    )
    num = ga.add(piece1, ga.scale(piece2, -1.0))
    return ga._scale_cdd(num, _inv_cdd(1.0, c.sqrt_one_minus_q))


def position_op(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """x = (a + a+)/sqrt(2)."""
    c = ga.q_constants(params.q)
    num = ga.add(annihilate(f, params), create(f, params))
    inv_sqrt2 = dd.div(dd.from_float(np.float64(1.0)), c.sqrt2)
    zero = np.float64(0.0)
    return ga._scale_cdd(num, dd.cdd_make(inv_sqrt2, (zero, zero)))


def momentum_op(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """p = (a - a+)/(i sqrt(2))."""
    c = ga.q_constants(params.q)
    num = ga.add(annihilate(f, params), ga.scale(create(f, params), -1.0))
    inv = dd.div(dd.from_float(np.float64(-1.0)), c.sqrt2)
    zero = np.float64(0.0)
    return ga._scale_cdd(num, dd.cdd_make((zero, zero), inv))


def hamiltonian(f: GaussExpSum, params: DeformationParams) -> GaussExpSum:
    """H = (omega/2)(a a+ + a+ a)."""
    up_down = annihilate(create(f, params), params)
    down_up = create(annihilate(f, params), params)
    return ga.scale(ga.add(up_down, down_up), 0.5 * params.omega)


def q_commutator_residual(f: GaussExpSum, params: DeformationParams) -> float:
    """L2 norm of (a a+ - q a+ a) f - f; identically zero on the family."""
    up_down = annihilate(create(f, params), params)
    down_up = create(annihilate(f, params), params)
    resid = ga.add(
        ga.add(up_down, ga.scale(down_up, -params.q)), ga.scale(f, -1.0)
    )
    return ga.norm(resid)
