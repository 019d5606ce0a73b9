"""Vacuum, eigenfunctions, coherent states, and the limit-comparison formulas.

Eigenfunctions exist in two independent constructions: the explicit
coordinate formula (``eigenstate``) and repeated application of the
creation operator (``eigenstate_ladder``); agreement of the two is a
standing cross-check. Coherent states exist as a Fock amplitude vector and
as a truncated Gaussian-exponential sum; the wavefunction is renormalized
to unit norm, with the measured norm of the paper-constant normalization
available as a diagnostic (it comes out 1 up to truncation, i.e. the
closed-form constant is itself the correct normalization).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import ddnum as dd
from . import gaussexp as ga
from . import operators as ops
from .errors import DimTooSmall, NoConvergence, OutsideConvergenceDisk, TooLargeN
from .fock import FockVector
from .gaussexp import GaussExpSum
from .qarith import DeformationParams, q_exponential, q_factorial_log, q_integer

EIGENSTATE_CAP = 60
COHERENT_TERM_CAP = 5_000


@dataclass(frozen=True)
class CoherentParams:
    """Coherent-state eigenvalue and deformation; |lambda| < 1/sqrt(1-q)."""

    lam: complex
    params: DeformationParams

    def __post_init__(self):
        radius = 1.0 / math.sqrt(1.0 - self.params.q)
        if not abs(self.lam) < radius:
            raise OutsideConvergenceDisk(
                f"|lambda|={abs(self.lam)} must be < 1/sqrt(1-q) = {radius}"
            )


def _dd_qint(n: int, c: ga.QConstants):
    return dd.div(dd.sub(dd.from_float(1.0), dd.powint(c.q, n)), c.one_minus_q)


def _dd_qfact(n: int, c: ga.QConstants):
    r = dd.from_float(np.float64(1.0))
    for k in range(1, n + 1):
        r = dd.mul(r, _dd_qint(k, c))
    return r


def _apply_inverse_i_power(mag, n: int) -> dd.CDD:
    """mag/(i^n) for a real dd array mag, as exact channel swaps."""
    zero = np.zeros_like(mag[0])
    table = {
        0: lambda m: dd.cdd_make(m, (zero, zero)),
        1: lambda m: dd.cdd_make((zero, zero), dd.neg(m)),
        2: lambda m: dd.cdd_make(dd.neg(m), (zero, zero)),
        3: lambda m: dd.cdd_make((zero, zero), m),
    }
    return table[n % 4](mag)


def _check_cap(n) -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n > EIGENSTATE_CAP:
        raise TooLargeN(f"n={n} exceeds the eigenstate cap {EIGENSTATE_CAP}")
    return n


def vacuum(params: DeformationParams) -> GaussExpSum:
    """Normalized ground state pi^(-1/4) exp(-x^2/2 + (3/2) i alpha x)."""
    c = ga.q_constants(params.q)
    zero = np.float64(0.0)
    coeff = dd.cdd_make(
        dd.div(dd.from_float(np.float64(1.0)), dd.PI_QUARTER_ROOT), (zero, zero)
    )
    slope = dd.cdd_make((zero, zero), dd.mul(c.alpha, dd.from_float(np.float64(1.5))))
    return GaussExpSum(_stack([coeff]), _stack([slope]))


def _stack(scalars: list[dd.CDD]) -> dd.CDD:
    return dd.CDD(
        np.array([np.float64(s.rh) for s in scalars]),
        np.array([np.float64(s.rl) for s in scalars]),
        np.array([np.float64(s.ih) for s in scalars]),
        np.array([np.float64(s.il) for s in scalars]),
    )


def eigenstate(n, params: DeformationParams) -> GaussExpSum:
    """Explicit coordinate eigenfunction: n+1 plane-wave Gaussian terms.

    Term k has slope i alpha (3/2 + 2(n-k)) and coefficient
    (-1)^k [n;k] q^(k/2) / (pi^(1/4) i^n (1-q)^(n/2) sqrt([n]!)).
    """
    n = _check_cap(n)
    c = ga.q_constants(params.q)
    one = dd.from_float(np.float64(1.0))

    denom = dd.mul(dd.PI_QUARTER_ROOT, dd.powint(c.sqrt_one_minus_q, n))
    denom = dd.mul(denom, dd.sqrt(_dd_qfact(n, c)))
    pref = dd.div(one, denom)

    facts = [_dd_qfact(k, c) for k in range(n + 1)]
    coeffs, slopes = [], []
    zero = np.float64(0.0)
    for k in range(n + 1):
        binom = dd.div(facts[n], dd.mul(facts[k], facts[n - k]))
        mag = dd.mul(dd.mul(pref, binom), dd.powint(c.sqrt_q, k))
        if k % 2:
            mag = dd.neg(mag)
        coeffs.append(_apply_inverse_i_power(mag, n))
        s_im = dd.mul(c.alpha, dd.from_float(np.float64(1.5 + 2.0 * (n - k))))
        slopes.append(dd.cdd_make((zero, zero), s_im))
    return GaussExpSum(_stack(coeffs), _stack(slopes))


def eigenstate_ladder(n, params: DeformationParams) -> GaussExpSum:
    """Same state built by |n> = a+ |n-1> / sqrt([n]); the cross-check path."""
    n = _check_cap(n)
    c = ga.q_constants(params.q)
    psi = vacuum(params)
    zero = np.float64(0.0)
    for k in range(1, n + 1):
        inv_sqrt = dd.div(dd.from_float(np.float64(1.0)), dd.sqrt(_dd_qint(k, c)))
        psi = ga._scale_cdd(
            ops.create(psi, params), dd.cdd_make(inv_sqrt, (zero, zero))
        )
    return psi


def eigenstate_density_limit_q0(n, x):
    """q -> 0 limit of |Psi_n|^2: the ground-state density for every n."""
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return np.exp(-np.asarray(x, dtype=float) ** 2) / math.sqrt(math.pi)


def eigenstate_limit_q1(n, x):
    """q -> 1 limit of Psi_n: the standard Hermite-function eigenstate."""
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    xs = np.asarray(x, dtype=float)
    h_prev = np.ones_like(xs)
    h = 2.0 * xs if n >= 1 else h_prev
    for k in range(1, n):
        h, h_prev = 2.0 * xs * h - 2.0 * k * h_prev, h
    if n == 0:
        h = h_prev
    norm = math.pi ** -0.25 / math.sqrt(2.0**n * math.factorial(n))
    return norm * h * np.exp(-0.5 * xs * xs)


def coherent_fock(cp: CoherentParams, dim: int) -> FockVector:
    """Fock amplitudes c0 lambda^n / sqrt([n]!), c0 = exp_q(|lambda|^2)^(-1/2).

    Raises DimTooSmall unless the dropped tail of sum |lambda|^(2n)/[n]! is
    certified below 1e-14 of the total.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    q = cp.params.q
    lam = complex(cp.lam)
    lam_sq = abs(lam) ** 2
    total = q_exponential(lam_sq, q, tol=1e-13).value.real

    # certified tail of the normalization series past n = dim-1
    ratio_sup = lam_sq / q_integer(dim + 1, q)
    log_t_dim = (
        dim * math.log(lam_sq) - q_factorial_log(dim, q) if lam_sq > 0 else -math.inf
    )
    if ratio_sup >= 1.0 or log_t_dim - math.log1p(-ratio_sup) > math.log(1e-14 * total):
        raise DimTooSmall(
            f"dim={dim} leaves a normalization tail above 1e-14 of the total"
        )

    amps = np.zeros(dim, dtype=np.complex128)
    c0 = 1.0 / math.sqrt(total)
    term = complex(c0)
    amps[0] = term
    for n in range(1, dim):
        term = term * lam / math.sqrt(q_integer(n, q))
        amps[n] = term
    return FockVector(dim=dim, amplitudes=amps)


# largest tolerable ratio max_m |u|^m/[m]! of the coherent expansion: the
# plane-wave terms cancel back to O(1) values, so the ratio measures digits
# lost; past ~1e15 not even double-double arithmetic certifies the result
_COHERENT_PEAK_CAP = 1e15


def _dd_qexp(z: complex, c: ga.QConstants) -> dd.CDD:
    """q-exponential of a fixed complex argument in double-double precision.

    Used for the coherent normalization constants, whose series terms grow
    to ~exp(|z|) before cancelling; the double-precision public
    q_exponential would contaminate every coefficient at large |z|.
    """
    z_cdd = dd.cdd_from_complex(complex(z))
    term = dd.cdd_from_complex(1.0 + 0.0j)
    total = term
    peak = 1.0
    m = 0
    while True:
        m += 1
        inv_qm = dd.div(dd.from_float(np.float64(1.0)), _dd_qint(m, c))
        term = dd.cdd_scale_dd(dd.cdd_mul(term, z_cdd), inv_qm)
        total = dd.cdd_add(total, term)
        mag = float(np.max(dd.cdd_abs_hi(term)))
        peak = max(peak, mag)
        if mag <= 1e-30 * peak:
            return total
        if m > 4 * COHERENT_TERM_CAP:
            raise NoConvergence("q-exponential constant did not converge")


def _coherent_terms(cp: CoherentParams, tol: float):
    """Truncation index and dd term coefficients of the coherent series."""
    q = cp.params.q
    c = ga.q_constants(q)
    lam = complex(cp.lam)
    sqrt_1mq = math.sqrt(1.0 - q)
    u = lam / (1j * sqrt_1mq)
    au = abs(u)

    # truncation index and cancellation depth from the term magnitudes
    ratios = [1.0]
    m = 0
    while True:
        nxt = ratios[-1] * au / q_integer(m + 1, q)
        r = au / q_integer(m + 2, q)
        if r < 1.0 and nxt / (1.0 - r) <= tol:
            break
        m += 1
        ratios.append(nxt)
        if m > COHERENT_TERM_CAP:
            raise NoConvergence(
                f"coherent series exceeded {COHERENT_TERM_CAP} terms before "
                f"reaching tol={tol}"
            )
    if max(ratios) > _COHERENT_PEAK_CAP:
        raise NoConvergence(
            f"coherent expansion cancels through {max(ratios):.2e}; "
            "beyond certified precision (move q away from 1 or shrink lambda)"
        )

    # closed-form constant pi^(-1/4) exp_q(|lam|^2)^(-1/2) exp_q(i lam sqrt(q)/sqrt(1-q))
    norm_sq = _dd_qexp(abs(lam) ** 2, c)
    inv_norm = dd.div(dd.from_float(np.float64(1.0)), dd.sqrt(norm_sq.re))
    phase = _dd_qexp(1j * lam * math.sqrt(q) / sqrt_1mq, c)
    const = dd.cdd_scale_dd(phase, dd.mul(inv_norm, dd.div(
        dd.from_float(np.float64(1.0)), dd.PI_QUARTER_ROOT)))

    u_cdd = dd.cdd_from_complex(u)
    coeff = const
    coeffs = [coeff]
    for k in range(1, m + 1):
        inv_qk = dd.div(dd.from_float(np.float64(1.0)), _dd_qint(k, c))
        coeff = dd.cdd_scale_dd(dd.cdd_mul(coeff, u_cdd), inv_qk)
        coeffs.append(coeff)

    zero = np.float64(0.0)
    slopes = [
        dd.cdd_make((zero, zero), dd.mul(c.alpha, dd.from_float(np.float64(1.5 + 2.0 * k))))
        for k in range(m + 1)
    ]
    return _squeeze_stack(coeffs), _stack(slopes)


def _squeeze_stack(cdd_list: list[dd.CDD]) -> dd.CDD:
    return dd.CDD(
        np.array([np.asarray(s.rh).reshape(()) for s in cdd_list]),
        np.array([np.asarray(s.rl).reshape(()) for s in cdd_list]),
        np.array([np.asarray(s.ih).reshape(()) for s in cdd_list]),
        np.array([np.asarray(s.il).reshape(()) for s in cdd_list]),
    )


def coherent_wavefunction_with_diagnostic(
    cp: CoherentParams, tol: float = 1e-10
) -> tuple[GaussExpSum, float]:
    """Coherent wavefunction plus the measured norm of the closed-form state.

    The state is renormalized to unit norm exactly; the returned diagnostic
    is the norm the paper-constant normalization produced by itself.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    coeffs, slopes = _coherent_terms(cp, tol)
    raw = GaussExpSum(coeffs, slopes)
    measured = ga.norm(raw)
    state = ga.scale(raw, 1.0 / measured)
    return state, measured


def coherent_wavefunction(cp: CoherentParams, tol: float = 1e-10) -> GaussExpSum:
    """Unit-norm truncated coherent wavefunction (see the diagnostic variant)."""
    return coherent_wavefunction_with_diagnostic(cp, tol)[0]


def coherent_limit_q1(lam: float, x):
    """q -> 1 limit: the displaced Gaussian pi^(-1/4) exp(-(x - lam sqrt(2))^2/2)."""
    xs = np.asarray(x, dtype=float)
    return math.pi ** -0.25 * np.exp(-0.5 * (xs - lam * math.sqrt(2.0)) ** 2)


def coherent_density_limit_q0(lam: complex, params: DeformationParams, x):
    """q -> 0 density limit; keeps the oscillation scale alpha of params."""
    lam = complex(lam)
    if not abs(lam) < 1.0:
        raise OutsideConvergenceDisk(
            f"the q->0 limit needs |lambda| < 1, got {abs(lam)}"
        )
    xs = np.asarray(x, dtype=float)
    osc = np.imag(lam * np.exp(2j * params.alpha * xs))
    denom = 1.0 + abs(lam) ** 2 - 2.0 * osc
    return (1.0 - abs(lam) ** 2) / denom * np.exp(-xs * xs) / math.sqrt(math.pi)
