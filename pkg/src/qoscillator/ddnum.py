"""Vectorized double-double (compensated) arithmetic.

The Gaussian-exponential function algebra must evaluate sums whose terms
cancel by up to ~26 orders of magnitude (eigenstate inner products near
q = 1), far beyond float64. Every quantity here is carried as an unevaluated
pair hi + lo of float64 ndarrays, giving ~31 significant digits. All
operations are elementwise and broadcast like the underlying numpy ops.

A real double-double is a tuple (hi, lo); a complex one is a CDD with the
real and imaginary channels each stored as such a pair. The transcendental
kernels (exp, sin, cos) use standard argument reduction plus Taylor series
with double-double coefficient tables.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Dekker splitting constant for 53-bit doubles: 2**27 + 1. Operand magnitudes
# must stay below ~6.7e291 or the split overflows; the algebra's coefficients
# never approach that.
_SPLITTER = 134217729.0

_LN2 = (0.6931471805599453, 2.3190468138462996e-17)
_PIO2 = (1.5707963267948966, 6.123233995736766e-17)
SQRT_PI = (1.772453850905516, -7.666586499825799e-17)
PI_QUARTER_ROOT = (1.3313353638003897, -3.553686132694955e-17)

_INV_FACT = (
    (1.0, 0.0),
    (1.0, 0.0),
    (0.5, 0.0),
    (0.16666666666666666, 9.25185853854297e-18),
    (0.041666666666666664, 2.3129646346357427e-18),
    (0.008333333333333333, 1.1564823173178714e-19),
    (0.001388888888888889, -5.300543954373577e-20),
    (0.0001984126984126984, 1.7209558293420705e-22),
    (2.48015873015873e-05, 2.1511947866775882e-23),
    (2.7557319223985893e-06, -1.858393274046472e-22),
    (2.755731922398589e-07, 2.3767714622250297e-23),
    (2.505210838544172e-08, -1.448814070935912e-24),
    (2.08767569878681e-09, -1.20734505911326e-25),
    (1.6059043836821613e-10, 1.2585294588752098e-26),
    (1.1470745597729725e-11, 2.0655512752830745e-28),
    (7.647163731819816e-13, 7.03872877733453e-30),
    (4.779477332387385e-14, 4.399205485834081e-31),
    (2.8114572543455206e-15, 1.6508842730861433e-31),
    (1.5619206968586225e-16, 1.1910679660273754e-32),
    (8.22063524662433e-18, 2.2141894119604265e-34),
    (4.110317623312165e-19, 1.4412973378659527e-36),
    (1.9572941063391263e-20, -1.3643503830087908e-36),
    (8.896791392450574e-22, -7.911402614872376e-38),
)


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    # valid when |a| >= |b| (or a == 0)
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def add(x, y):
    sh, sl = _two_sum(x[0], y[0])
    th, tl = _two_sum(x[1], y[1])
    sl = sl + th
    sh, sl = _quick_two_sum(sh, sl)
    sl = sl + tl
    return _quick_two_sum(sh, sl)


def neg(x):
    return (-x[0], -x[1])


def sub(x, y):
    return add(x, (-y[0], -y[1]))


def mul(x, y):
    ph, pl = _two_prod(x[0], y[0])
    pl = pl + (x[0] * y[1] + x[1] * y[0])
    return _quick_two_sum(ph, pl)


def mul_pow2(x, c):
    # c must be an exact power of two (including +-1)
    return (x[0] * c, x[1] * c)


def sqr(x):
    ph, pl = _two_prod(x[0], x[0])
    pl = pl + 2.0 * (x[0] * x[1])
    return _quick_two_sum(ph, pl)


def div(x, y):
    q1 = x[0] / y[0]
    r = sub(x, mul(y, (q1, np.zeros_like(q1))))
    q2 = r[0] / y[0]
    r = sub(r, mul(y, (q2, np.zeros_like(q2))))
    q3 = r[0] / y[0]
    s, e = _quick_two_sum(q1, q2)
    return add((s, e), (q3, np.zeros_like(q3)))


def sqrt(x):
    # one Newton step on the double estimate; exact zero stays zero
    a = np.sqrt(x[0])
    safe = np.where(a == 0.0, 1.0, a)
    e = sub(x, sqr((a, np.zeros_like(a))))
    corr = e[0] / (2.0 * safe)
    h, l = _quick_two_sum(a, np.where(a == 0.0, 0.0, corr))
    return (h, l)


def from_float(a):
    a = np.asarray(a, dtype=np.float64)
    return (a, np.zeros_like(a))


def to_float(x):
    return x[0] + x[1]


def powint(x, n: int):
    """x**n for nonnegative integer n by binary powering."""
    if n < 0:
        raise ValueError("negative exponent")
    result = from_float(np.ones_like(np.asarray(x[0], dtype=np.float64)))
    base = x
    while n:
        if n & 1:
            result = mul(result, base)
        base = sqr(base)
        n >>= 1
    return result


def log(x):
    # refine the double log with one residual correction:
    # ln x = l0 + d - d^2/2 with d = x*exp(-l0) - 1 (|d| ~ 1e-16)
    l0 = np.log(x[0])
    r = mul(x, exp((-l0, np.zeros_like(l0))))
    d = add(r, from_float(-1.0))
    corr = sub(d, mul_pow2(sqr(d), 0.5))
    return add((l0, np.zeros_like(l0)), corr)


def _const(c, like):
    return (np.full_like(like, c[0]), np.full_like(like, c[1]))


# Horner coefficients (-1)^k/(2k+1)! and (-1)^k/(2k)! for the trig kernels.
_SIN_COEFFS = tuple(
    (_INV_FACT[2 * k + 1][0], _INV_FACT[2 * k + 1][1]) if k % 2 == 0
    else (-_INV_FACT[2 * k + 1][0], -_INV_FACT[2 * k + 1][1])
    for k in range(11)
)
_COS_COEFFS = tuple(
    (_INV_FACT[2 * k][0], _INV_FACT[2 * k][1]) if k % 2 == 0
    else (-_INV_FACT[2 * k][0], -_INV_FACT[2 * k][1])
    for k in range(12)
)


def exp(x):
    """exp of a real double-double; underflows to 0 below -745."""
    xh = np.asarray(x[0], dtype=np.float64)
    xl = np.asarray(x[1], dtype=np.float64)
    under = xh < -745.0
    xh = np.where(under, 0.0, np.minimum(xh, 709.0))
    xl = np.where(under, 0.0, xl)

    m = np.rint(xh / _LN2[0])
    r = sub((xh, xl), mul(_LN2, (m, np.zeros_like(m))))
    # scale to |t| <= ~6.8e-4, Taylor for expm1(t) = t*H(t), square back 9x
    t = mul_pow2(r, 1.0 / 512.0)
    h = _const(_INV_FACT[10], xh)
    for k in range(9, 0, -1):
        h = add(mul(h, t), _INV_FACT[k])
    s = mul(t, h)
    for _ in range(9):
        s = add(sqr(s), mul_pow2(s, 2.0))
    res = add(from_float(np.ones_like(xh)), s)
    mi = m.astype(np.int64)
    hi = np.where(under, 0.0, np.ldexp(res[0], mi))
    lo = np.where(under, 0.0, np.ldexp(res[1], mi))
    return (hi, lo)


def _sincos_kernel(t):
    # Taylor on |t| <= pi/16 (after two halvings)
    t2 = sqr(t)
    sn = _const(_SIN_COEFFS[-1], t[0])
    for c in _SIN_COEFFS[-2::-1]:
        sn = add(mul(sn, t2), c)
    sn = mul(sn, t)
    cs = _const(_COS_COEFFS[-1], t[0])
    for c in _COS_COEFFS[-2::-1]:
        cs = add(mul(cs, t2), c)
    return sn, cs


def _double_angle(sn, cs, like):
    s2 = mul_pow2(mul(sn, cs), 2.0)
    c2 = sub(from_float(np.ones_like(like)), mul_pow2(sqr(sn), 2.0))
    return s2, c2


def sincos(x):
    """(sin x, cos x) of a real double-double."""
    xh = np.asarray(x[0], dtype=np.float64)
    xl = np.asarray(x[1], dtype=np.float64)
    m = np.rint(xh / _PIO2[0])
    r = sub((xh, xl), mul(_PIO2, (m, np.zeros_like(m))))
    sn, cs = _sincos_kernel(mul_pow2(r, 0.25))
    sn, cs = _double_angle(sn, cs, xh)
    sn, cs = _double_angle(sn, cs, xh)
    j = m.astype(np.int64) % 4
    def pick(q0, q1, q2, q3):
        return np.where(j == 0, q0, np.where(j == 1, q1, np.where(j == 2, q2, q3)))
    sin_dd = (pick(sn[0], cs[0], -sn[0], -cs[0]), pick(sn[1], cs[1], -sn[1], -cs[1]))
    cos_dd = (pick(cs[0], -sn[0], -cs[0], sn[0]), pick(cs[1], -sn[1], -cs[1], sn[1]))
    return sin_dd, cos_dd


def sum_axis0(x):
    """Pairwise-reduce a double-double array along its leading axis."""
    h = np.asarray(x[0], dtype=np.float64)
    l = np.asarray(x[1], dtype=np.float64)
    if h.shape[0] == 0:
        tail = h.shape[1:]
        return (np.zeros(tail), np.zeros(tail))
    while h.shape[0] > 1:
        if h.shape[0] % 2:
            pad = [(0, 1)] + [(0, 0)] * (h.ndim - 1)
            h = np.pad(h, pad)
            l = np.pad(l, pad)
        h, l = add((h[0::2], l[0::2]), (h[1::2], l[1::2]))
    return (h[0], l[0])


def sum_pairwise(x):
    """Sum a double-double array to a scalar dd by pairwise reduction."""
    h = np.asarray(x[0], dtype=np.float64).ravel()
    l = np.asarray(x[1], dtype=np.float64).ravel()
    return sum_axis0((h, l))


class CDD(NamedTuple):
    """Complex double-double: independent (hi, lo) pairs per channel."""

    rh: np.ndarray
    rl: np.ndarray
    ih: np.ndarray
    il: np.ndarray

    @property
    def re(self):
        return (self.rh, self.rl)

    @property
    def im(self):
        return (self.ih, self.il)

    @property
    def shape(self):
        return np.shape(self.rh)


def cdd_from_complex(z) -> CDD:
    z = np.asarray(z, dtype=np.complex128)
    re = np.ascontiguousarray(z.real)
    im = np.ascontiguousarray(z.imag)
    return CDD(re, np.zeros_like(re), im, np.zeros_like(im))


def cdd_make(re, im) -> CDD:
    return CDD(re[0], re[1], im[0], im[1])


def cdd_to_complex(z: CDD):
    return (z.rh + z.rl) + 1j * (z.ih + z.il)


def cdd_add(a: CDD, b: CDD) -> CDD:
    return cdd_make(add(a.re, b.re), add(a.im, b.im))


def cdd_sub(a: CDD, b: CDD) -> CDD:
    return cdd_make(sub(a.re, b.re), sub(a.im, b.im))


def cdd_neg(a: CDD) -> CDD:
    return CDD(-a.rh, -a.rl, -a.ih, -a.il)


def cdd_conj(a: CDD) -> CDD:
    return CDD(a.rh, a.rl, -a.ih, -a.il)


def cdd_mul(a: CDD, b: CDD) -> CDD:
    re = sub(mul(a.re, b.re), mul(a.im, b.im))
    im = add(mul(a.re, b.im), mul(a.im, b.re))
    return cdd_make(re, im)


def cdd_sqr(a: CDD) -> CDD:
    re = sub(sqr(a.re), sqr(a.im))
    im = mul_pow2(mul(a.re, a.im), 2.0)
    return cdd_make(re, im)


def cdd_scale_dd(a: CDD, s) -> CDD:
    """Multiply by a real double-double scalar."""
    return cdd_make(mul(a.re, s), mul(a.im, s))


def cdd_exp(a: CDD) -> CDD:
    er = exp(a.re)
    # purely real arguments are the common case in inner products of
    # states with imaginary slopes; skip the trig kernel there
    if np.all(a.ih == 0.0) and np.all(a.il == 0.0):
        zero = (np.zeros_like(er[0]), np.zeros_like(er[0]))
        return cdd_make(er, zero)
    sn, cs = sincos(a.im)
    return cdd_make(mul(er, cs), mul(er, sn))


def cdd_div(a: CDD, b: CDD) -> CDD:
    den = add(sqr(b.re), sqr(b.im))
    num = cdd_mul(a, cdd_conj(b))
    return cdd_make(div(num.re, den), div(num.im, den))


def cdd_sum(a: CDD):
    """Pairwise-sum a CDD array to a scalar CDD."""
    return cdd_make(sum_pairwise(a.re), sum_pairwise(a.im))


def cdd_sum_axis0(a: CDD):
    """Pairwise-reduce a CDD array along its leading axis."""
    return cdd_make(sum_axis0(a.re), sum_axis0(a.im))


def cdd_abs_hi(a: CDD):
    """Fast |z| from the hi parts only (enough for tolerance tests)."""
    return np.hypot(a.rh, a.ih)


def cdd_concat(a: CDD, b: CDD) -> CDD:
    return CDD(
        np.concatenate((a.rh, b.rh)),
        np.concatenate((a.rl, b.rl)),
        np.concatenate((a.ih, b.ih)),
        np.concatenate((a.il, b.il)),
    )


def cdd_take(a: CDD, idx) -> CDD:
    return CDD(a.rh[idx], a.rl[idx], a.ih[idx], a.il[idx])


def cdd_broadcast(a: CDD, shape) -> CDD:
    return CDD(
        np.broadcast_to(a.rh, shape),
        np.broadcast_to(a.rl, shape),
        np.broadcast_to(a.ih, shape),
        np.broadcast_to(a.il, shape),
    )
