"""Compensated-arithmetic kernels checked against mpmath at 50 digits."""

import mpmath as mp
import numpy as np
import pytest

from qoscillator import ddnum as dd

mp.mp.dps = 50

RNG = np.random.default_rng(20240817)


def to_mp(x):
    return mp.mpf(np.asarray(x[0]).item()) + mp.mpf(np.asarray(x[1]).item())


def rel_err(x, ref):
    if ref == 0:
        return abs(to_mp(x))
    return abs((to_mp(x) - ref) / ref)


@pytest.mark.parametrize("op,mpop", [
    (dd.add, lambda a, b: a + b),
    (dd.sub, lambda a, b: a - b),
    (dd.mul, lambda a, b: a * b),
    (dd.div, lambda a, b: a / b),
])
def test_binary_ops_30_digits(op, mpop):
    for _ in range(200):
        a = RNG.uniform(-1, 1) * 10.0 ** RNG.integers(-8, 9)
        b = RNG.uniform(-1, 1) * 10.0 ** RNG.integers(-8, 9)
        if op is dd.div and b == 0:
            continue
        got = op(dd.from_float(a), dd.from_float(b))
        ref = mpop(mp.mpf(a), mp.mpf(b))
        assert rel_err(got, ref) < mp.mpf("1e-30")


def test_add_tracks_cancellation():
    a, b = 1.0, 1e-25
    s = dd.add(dd.from_float(a), dd.from_float(b))
    back = dd.sub(s, dd.from_float(a))
    assert to_mp(back) == mp.mpf(1e-25)


def test_sqrt():
    for _ in range(100):
        a = float(RNG.uniform(0, 1) * 10.0 ** RNG.integers(-6, 7))
        got = dd.sqrt(dd.from_float(a))
        assert rel_err(got, mp.sqrt(mp.mpf(a))) < mp.mpf("1e-30")
    z = dd.sqrt(dd.from_float(0.0))
    assert z[0] == 0.0 and z[1] == 0.0


def test_exp_against_mpmath():
    xs = np.concatenate([
        RNG.uniform(-40, 40, 300),
        RNG.uniform(-0.001, 0.001, 50),
        np.array([0.0, -700.0, 100.0]),
    ])
    got = dd.exp(dd.from_float(xs))
    for i, x in enumerate(xs):
        ref = mp.e ** mp.mpf(float(x))
        # lo limb goes subnormal once results near 1e-305: double accuracy only
        tol = mp.mpf("1e-29") if ref > mp.mpf("1e-250") else mp.mpf("1e-14")
        assert rel_err((got[0][i], got[1][i]), ref) < tol, x


def test_exp_underflow_is_zero():
    h, l = dd.exp(dd.from_float(-800.0))
    assert h == 0.0 and l == 0.0


def test_log_roundtrip():
    for _ in range(100):
        a = float(RNG.uniform(1e-12, 1e6))
        got = dd.log(dd.from_float(a))
        assert rel_err(got, mp.log(mp.mpf(a))) < mp.mpf("1e-29")


def test_sincos_against_mpmath():
    xs = np.concatenate([
        RNG.uniform(-1200, 1200, 300),
        RNG.uniform(-0.01, 0.01, 50),
        np.array([0.0, np.pi, 0.25]),
    ])
    sn, cs = dd.sincos(dd.from_float(xs))
    for i, x in enumerate(xs):
        refs, refc = mp.sin(mp.mpf(float(x))), mp.cos(mp.mpf(float(x)))
        # absolute error near zeros of sin/cos, relative otherwise
        es = abs(to_mp((sn[0][i], sn[1][i])) - refs)
        ec = abs(to_mp((cs[0][i], cs[1][i])) - refc)
        assert es < mp.mpf("1e-28"), x
        assert ec < mp.mpf("1e-28"), x


def test_powint():
    q = 0.937
    for n in [0, 1, 2, 7, 40, 313]:
        got = dd.powint(dd.from_float(q), n)
        assert rel_err(got, mp.mpf(q) ** n) < mp.mpf("1e-29")


def test_sum_pairwise_cancelling_series():
    # alternating large terms cancelling to a small sum
    n = np.arange(1, 4001)
    h = ((-1.0) ** n) * 1e10 / n
    ref = sum(mp.mpf(float(v)) for v in h)
    got = dd.sum_pairwise((h, np.zeros_like(h)))
    assert abs(to_mp(got) - ref) < mp.mpf("1e-18")


def test_cdd_exp_matches_mpmath():
    for _ in range(120):
        z = complex(RNG.uniform(-30, 10), RNG.uniform(-900, 900))
        got = dd.cdd_exp(dd.cdd_from_complex(z))
        ref = mp.e ** mp.mpc(z)
        gre = to_mp((got.rh, got.rl))
        gim = to_mp((got.ih, got.il))
        err = abs(mp.mpc(gre, gim) - ref) / abs(ref)
        assert err < mp.mpf("1e-28"), z


def test_cdd_mul_and_conj():
    a = 1.5 - 2.25j
    b = -0.75 + 4.125j
    prod = dd.cdd_to_complex(dd.cdd_mul(dd.cdd_from_complex(a), dd.cdd_from_complex(b)))
    assert prod == a * b
    cj = dd.cdd_to_complex(dd.cdd_conj(dd.cdd_from_complex(a)))
    assert cj == a.conjugate()
