"""Exact closed algebra of finite sums of terms c * exp(-x^2/2 + beta*x).

This family is closed under everything the deformed ladder operators do:
multiplication by a plane wave adds to the slope, the complex argument
shift x -> x + delta rescales the coefficient and shifts the slope, and
inner products reduce to the Gaussian integral

    <f|g> = sum_jk conj(c_j) c_k sqrt(pi) exp((conj(beta_j)+beta_k)^2 / 4).

Values are canonicalized: slopes closer than the merge tolerance collapse
into one term, groups whose coefficients cancel below 1e-13 of their
contributors are treated as exact zeros (this is what makes identities like
vacuum annihilation land on the literally empty sum), and sums are capped
at 100000 terms to catch runaway operator pipelines.

Coefficients and slopes are carried in double-double precision internally.
Near q = 1 the representation is exponentially ill-conditioned (the terms
of an n = 12 eigenstate at q = 0.9 cancel by ten orders of magnitude in its
norm), so plain float64 coefficients cannot meet the advertised 1e-10
tolerances; the public surface still speaks ordinary complex numbers.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import ddnum as dd
from .ddnum import CDD
from .errors import TermBudgetExceeded

MERGE_TOL = 1e-12
CANCEL_TOL = 1e-13
DROP_TOL = 1e-300
TERM_CAP = 100_000


@dataclass(frozen=True)
class GaussExpTerm:
    """One summand c * exp(-x^2/2 + beta*x)."""

    coeff: complex
    slope: complex


class GaussExpSum:
    """Canonical finite sum of Gaussian-exponential terms. Immutable."""

    __slots__ = ("_coeff", "_slope")

    def __init__(self, coeff: CDD, slope: CDD, _canonical: bool = False):
        if not _canonical:
            coeff, slope = _canonicalize(coeff, slope)
        for arr in (*coeff, *slope):
            arr.setflags(write=False)
        object.__setattr__(self, "_coeff", coeff)
        object.__setattr__(self, "_slope", slope)

    def __setattr__(self, name, value):
        raise AttributeError("GaussExpSum is immutable")

    @classmethod
    def empty(cls) -> "GaussExpSum":
        z = np.zeros(0)
        return cls(CDD(z, z, z, z), CDD(z, z, z, z), _canonical=True)

    @classmethod
    def from_terms(cls, terms) -> "GaussExpSum":
        coeffs, slopes = [], []
        for t in terms:
            c, b = (t.coeff, t.slope) if isinstance(t, GaussExpTerm) else t
            c, b = complex(c), complex(b)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)
                    and math.isfinite(b.real) and math.isfinite(b.imag)):
                raise ValueError(f"non-finite term ({c}, {b})")
            coeffs.append(c)
            slopes.append(b)
        return cls(dd.cdd_from_complex(coeffs), dd.cdd_from_complex(slopes))

    @property
    def n_terms(self) -> int:
        return self._coeff.rh.size

    @property
    def is_empty(self) -> bool:
        return self.n_terms == 0

    @property
    def terms(self) -> tuple[GaussExpTerm, ...]:
        cs = dd.cdd_to_complex(self._coeff)
        bs = dd.cdd_to_complex(self._slope)
        return tuple(GaussExpTerm(complex(c), complex(b)) for c, b in zip(cs, bs))

    def __repr__(self):
        return f"GaussExpSum({self.n_terms} terms)"


def _col(a: CDD) -> CDD:
    return CDD(a.rh[:, None], a.rl[:, None], a.ih[:, None], a.il[:, None])


def _canonicalize(coeff: CDD, slope: CDD):
    n = np.asarray(coeff.rh).size
    if n > TERM_CAP:
        raise TermBudgetExceeded(f"{n} terms exceeds the cap of {TERM_CAP}")
    if n == 0:
        z = np.zeros(0)
        return CDD(z, z, z, z), CDD(z, z, z, z)

    order = np.lexsort((slope.ih, slope.rh))
    c = dd.cdd_take(coeff, order)
    s = dd.cdd_take(slope, order)

    gap = np.hypot(np.diff(s.rh), np.diff(s.ih))
    starts = np.flatnonzero(np.concatenate(([True], gap > MERGE_TOL)))
    ends = np.append(starts[1:], n)
    abs_c = dd.cdd_abs_hi(c)

    if starts.size == n:
        merged_c, merged_s = c, s
        contrib = abs_c
    else:
        idx_rep, mc_parts, contrib_list = [], [], []
        for a, b in zip(starts, ends):
            seg = slice(a, b)
            total = dd.cdd_sum(dd.cdd_take(c, seg))
            mc_parts.append(total)
            contrib_list.append(abs_c[seg].sum())
            idx_rep.append(a + int(np.argmax(abs_c[seg])))
        merged_c = CDD(
            np.array([p.rh for p in mc_parts]),
            np.array([p.rl for p in mc_parts]),
            np.array([p.ih for p in mc_parts]),
            np.array([p.il for p in mc_parts]),
        )
        merged_s = dd.cdd_take(s, np.array(idx_rep))
        contrib = np.asarray(contrib_list)

    mag = dd.cdd_abs_hi(merged_c)
    keep = (mag > 0.0) & (mag >= CANCEL_TOL * contrib)
    if keep.any():
        keep &= mag >= DROP_TOL * max(mag[keep].max(), 1.0)
    kept = np.flatnonzero(keep)
    return dd.cdd_take(merged_c, kept), dd.cdd_take(merged_s, kept)


def evaluate(f: GaussExpSum, z):
    """Evaluate f at a complex point or array of points."""
    zs = np.asarray(z, dtype=np.complex128)
    scalar = zs.ndim == 0
    pts = np.atleast_1d(zs)
    if f.is_empty:
        out = np.zeros(pts.shape, dtype=np.complex128)
        return out[0] if scalar else out
    zc = dd.cdd_from_complex(pts)
    half_z2 = dd.cdd_scale_dd(dd.cdd_sqr(zc), dd.from_float(-0.5))
    arg = dd.cdd_add(dd.cdd_mul(_col(f._slope), zc), half_z2)
    vals = dd.cdd_mul(_col(f._coeff), dd.cdd_exp(arg))
    total = dd.cdd_to_complex(dd.cdd_sum_axis0(vals))
    return complex(total[0]) if scalar else total


def add(f: GaussExpSum, g: GaussExpSum) -> GaussExpSum:
    """Pointwise sum, recanonicalized."""
    if f.is_empty:
        return g
    if g.is_empty:
        return f
    return GaussExpSum(
        dd.cdd_concat(f._coeff, g._coeff), dd.cdd_concat(f._slope, g._slope)
    )


def scale(f: GaussExpSum, s) -> GaussExpSum:
    """Pointwise multiple s * f."""
    return _scale_cdd(f, dd.cdd_from_complex(complex(s)))


def _scale_cdd(f: GaussExpSum, s: CDD) -> GaussExpSum:
    if f.is_empty:
        return f
    return GaussExpSum(dd.cdd_mul(f._coeff, s), f._slope)


def multiply_plane_wave(f: GaussExpSum, gamma) -> GaussExpSum:
    """Multiply by exp(gamma*x): every slope gains gamma."""
    return _multiply_plane_wave_cdd(f, dd.cdd_from_complex(complex(gamma)))


def _multiply_plane_wave_cdd(f: GaussExpSum, gamma: CDD) -> GaussExpSum:
    if f.is_empty:
        return f
    return GaussExpSum(f._coeff, dd.cdd_add(f._slope, gamma))


def shift_argument(f: GaussExpSum, delta) -> GaussExpSum:
    """Shift the argument: f(x) -> f(x + delta).

    Termwise (c, beta) -> (c * exp(beta*delta - delta^2/2), beta - delta).
    """
    return _shift_argument_cdd(f, dd.cdd_from_complex(complex(delta)))


def _shift_argument_cdd(f: GaussExpSum, delta: CDD) -> GaussExpSum:
    if f.is_empty:
        return f
    half_d2 = dd.cdd_scale_dd(dd.cdd_sqr(delta), dd.from_float(-0.5))
    factor = dd.cdd_exp(dd.cdd_add(dd.cdd_mul(f._slope, delta), half_d2))
    return GaussExpSum(dd.cdd_mul(f._coeff, factor), dd.cdd_sub(f._slope, delta))


# inner products chunk the pairwise (j, k) grid to bound peak memory
_PAIR_BLOCK = 200_000


def inner_product(f: GaussExpSum, g: GaussExpSum) -> complex:
    """<f|g> = integral of conj(f(x)) g(x) dx, in closed form."""
    if f.is_empty or g.is_empty:
        return 0j
    cf = dd.cdd_conj(f._coeff)
    sf = dd.cdd_conj(f._slope)
    m = g.n_terms
    rows = max(1, _PAIR_BLOCK // m)
    zero = np.float64(0.0)
    total = dd.CDD(zero, zero, zero, zero)
    for lo in range(0, f.n_terms, rows):
        seg = slice(lo, lo + rows)
        b = dd.cdd_add(_col(dd.cdd_take(sf, seg)), g._slope)
        w = dd.cdd_scale_dd(dd.cdd_sqr(b), dd.from_float(0.25))
        prod = dd.cdd_mul(
            dd.cdd_mul(_col(dd.cdd_take(cf, seg)), g._coeff), dd.cdd_exp(w)
        )
        total = dd.cdd_add(total, dd.cdd_sum(prod))
    total = dd.cdd_scale_dd(total, dd.SQRT_PI)
    return complex(dd.cdd_to_complex(total))


def norm(f: GaussExpSum) -> float:
    """L2 norm; exactly 0 for the empty sum."""
    return math.sqrt(max(inner_product(f, f).real, 0.0))


class QConstants:
    """Double-double per-q constants shared by operators and states."""

    def __init__(self, q: float):
        one = dd.from_float(np.float64(1.0))
        self.q = dd.from_float(np.float64(q))
        self.one_minus_q = dd.sub(one, self.q)
        self.sqrt_q = dd.sqrt(self.q)
        self.sqrt_one_minus_q = dd.sqrt(self.one_minus_q)
        self.ln_q = dd.log(self.q)
        self.alpha_sq = dd.mul_pow2(dd.neg(self.ln_q), 0.5)
        self.alpha = dd.sqrt(self.alpha_sq)
        self.sqrt2 = dd.sqrt(dd.from_float(np.float64(2.0)))

    def i_alpha(self, factor: float) -> CDD:
        """The purely imaginary slope increment factor * i * alpha."""
        a = dd.mul(self.alpha, dd.from_float(np.float64(factor)))
        zero = np.float64(0.0)
        return dd.cdd_make((zero, zero), a)


@functools.lru_cache(maxsize=64)
def q_constants(q: float) -> QConstants:
    return QConstants(q)
