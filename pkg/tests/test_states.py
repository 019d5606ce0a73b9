"""States: vacuum, the two eigenstate constructions, coherent states in both
realizations, and the limit formulas."""

import cmath
import math

import numpy as np
import pytest

from qoscillator import gaussexp as ga
from qoscillator import operators as ops
from qoscillator import states as st
from qoscillator.errors import (
    DimTooSmall,
    NoConvergence,
    OutsideConvergenceDisk,
    TooLargeN,
)
from qoscillator.qarith import (
    DeformationParams,
    q_exponential,
    q_factorial,
    q_integer,
)

Q_GRID = [0.1, 0.5, 0.9]


class TestVacuum:
    @pytest.mark.parametrize("q", Q_GRID)
    def test_single_term_shape(self, q):
        p = DeformationParams.from_q(q)
        vac = st.vacuum(p)
        assert vac.n_terms == 1
        (t,) = vac.terms
        assert t.coeff == pytest.approx(math.pi**-0.25, rel=1e-15)
        assert t.slope == pytest.approx(1.5j * p.alpha, rel=1e-15)

    @pytest.mark.parametrize("q", Q_GRID)
    def test_unit_norm(self, q):
        p = DeformationParams.from_q(q)
        assert ga.inner_product(st.vacuum(p), st.vacuum(p)) == pytest.approx(
            1.0, abs=1e-15
        )

    def test_density_independent_of_q(self):
        # |Psi_0|^2 = exp(-x^2)/sqrt(pi) whatever the deformation
        for x in (0.0, 1.0, 2.0):
            want = math.exp(-x * x) / math.sqrt(math.pi)
            for q in (0.1, 0.9):
                p = DeformationParams.from_q(q)
                got = abs(ga.evaluate(st.vacuum(p), x)) ** 2
                assert got == pytest.approx(want, rel=1e-13)

    def test_annihilates(self):
        p = DeformationParams.from_q(0.42)
        assert ops.annihilate(st.vacuum(p), p).is_empty


class TestEigenstate:
    def test_n0_is_vacuum(self):
        p = DeformationParams.from_q(0.6)
        assert st.eigenstate(0, p).terms == st.vacuum(p).terms

    @pytest.mark.parametrize("q", Q_GRID)
    def test_term_count_and_slopes(self, q):
        p = DeformationParams.from_q(q)
        for n in (1, 4, 9):
            psi = st.eigenstate(n, p)
            assert psi.n_terms == n + 1
            slopes = sorted(t.slope.imag for t in psi.terms)
            want = sorted(p.alpha * (1.5 + 2.0 * (n - k)) for k in range(n + 1))
            assert slopes == pytest.approx(want, rel=1e-13)
            assert all(abs(t.slope.real) == 0.0 for t in psi.terms)

    @pytest.mark.parametrize("q", Q_GRID)
    def test_matches_ladder_construction_term_by_term(self, q):
        p = DeformationParams.from_q(q)
        for n in range(1, 16):
            a = sorted(st.eigenstate(n, p).terms, key=lambda t: t.slope.imag)
            b = sorted(st.eigenstate_ladder(n, p).terms, key=lambda t: t.slope.imag)
            assert len(a) == len(b)
            for ta, tb in zip(a, b):
                assert ta.slope == pytest.approx(tb.slope, rel=1e-12)
                assert ta.coeff == pytest.approx(tb.coeff, rel=1e-10)

    @pytest.mark.parametrize("q", Q_GRID)
    def test_orthonormality(self, q):
        p = DeformationParams.from_q(q)
        states = [st.eigenstate(n, p) for n in range(13)]
        for m in range(13):
            for n in range(m, 13):
                val = ga.inner_product(states[m], states[n])
                assert abs(val - (1.0 if m == n else 0.0)) < 1e-10

    def test_ladder_norms(self):
        p = DeformationParams.from_q(0.5)
        for n in range(16):
            assert ga.norm(st.eigenstate_ladder(n, p)) == pytest.approx(1.0, abs=1e-10)

    def test_level_one_structure(self):
        q = 0.5
        p = DeformationParams.from_q(q)
        a = p.alpha
        terms = sorted(st.eigenstate_ladder(1, p).terms, key=lambda t: -t.slope.imag)
        assert terms[0].slope == pytest.approx(3.5j * a, rel=1e-13)
        assert terms[1].slope == pytest.approx(1.5j * a, rel=1e-13)
        assert terms[1].coeff / terms[0].coeff == pytest.approx(
            -math.exp(-a * a), rel=1e-12
        )

    def test_hermite_limit_q_to_1(self):
        p = DeformationParams.from_q(1 - 1e-8)
        xs = np.linspace(-4, 4, 33)
        for n in range(5):
            got = np.abs(ga.evaluate(st.eigenstate(n, p), xs))
            ref = np.abs(st.eigenstate_limit_q1(n, xs))
            assert np.max(np.abs(got - ref)) < 1e-3

    def test_hermite_oracle_against_scipy(self):
        scipy_special = pytest.importorskip("scipy.special")
        xs = np.linspace(-4, 4, 17)
        for n in (0, 1, 4, 7):
            ref = (
                math.pi**-0.25
                / math.sqrt(2.0**n * math.factorial(n))
                * scipy_special.eval_hermite(n, xs)
                * np.exp(-xs * xs / 2)
            )
            assert np.allclose(st.eigenstate_limit_q1(n, xs), ref, atol=1e-12)

    def test_density_degenerates_as_q_to_0(self):
        p = DeformationParams.from_q(1e-6)
        xs = np.linspace(-2, 2, 21)
        dens = np.abs(ga.evaluate(st.eigenstate(3, p), xs)) ** 2
        assert np.max(np.abs(dens - st.eigenstate_density_limit_q0(3, xs))) < 1e-2

    def test_density_limit_is_n_independent(self):
        xs = np.linspace(-2, 2, 9)
        assert np.array_equal(
            st.eigenstate_density_limit_q0(0, xs), st.eigenstate_density_limit_q0(7, xs)
        )
        assert st.eigenstate_density_limit_q0(0, 0.0) == pytest.approx(
            0.5641895835477563, rel=1e-12
        )

    def test_cap(self):
        p = DeformationParams.from_q(0.5)
        with pytest.raises(TooLargeN):
            st.eigenstate(61, p)
        with pytest.raises(TooLargeN):
            st.eigenstate_ladder(61, p)
        with pytest.raises(ValueError):
            st.eigenstate(-1, p)


class TestCoherentParams:
    def test_disk_boundary_rejected(self):
        p = DeformationParams.from_q(0.5)
        radius = 1.0 / math.sqrt(0.5)
        with pytest.raises(OutsideConvergenceDisk):
            st.CoherentParams(lam=radius, params=p)
        st.CoherentParams(lam=0.999 * radius, params=p)


class TestCoherentFock:
    def test_lambda_zero_is_ground(self):
        p = DeformationParams.from_q(0.5)
        fv = st.coherent_fock(st.CoherentParams(lam=0.0, params=p), dim=10)
        assert fv.amplitudes[0] == pytest.approx(1.0)
        assert np.allclose(fv.amplitudes[1:], 0.0)

    def test_norm_and_energy(self):
        q = 0.5
        p = DeformationParams.from_q(q)
        fv = st.coherent_fock(st.CoherentParams(lam=1.0, params=p), dim=80)
        assert fv.norm_sq() == pytest.approx(1.0, abs=1e-12)
        from qoscillator.qarith import spectrum_energy

        e = sum(
            abs(fv.amplitudes[n]) ** 2 * spectrum_energy(n, p) for n in range(80)
        )
        assert e == pytest.approx(1.25, abs=1e-10)  # 1/2 + (1+q)/2 |lam|^2

    def test_amplitude_formula(self):
        q = 0.4
        p = DeformationParams.from_q(q)
        lam = 0.7 + 0.2j
        fv = st.coherent_fock(st.CoherentParams(lam=lam, params=p), dim=60)
        c0 = 1.0 / math.sqrt(q_exponential(abs(lam) ** 2, q, tol=1e-14).value.real)
        for n in (0, 1, 5, 11):
            want = c0 * lam**n / math.sqrt(q_factorial(n, q))
            assert complex(fv.amplitudes[n]) == pytest.approx(want, rel=1e-11)

    def test_dim_too_small(self):
        p = DeformationParams.from_q(0.9)
        cp = st.CoherentParams(lam=0.7 / math.sqrt(0.1), params=p)
        with pytest.raises(DimTooSmall):
            st.coherent_fock(cp, dim=20)


class TestCoherentWavefunction:
    def test_lambda_zero_is_vacuum(self):
        p = DeformationParams.from_q(0.5)
        psi = st.coherent_wavefunction(st.CoherentParams(lam=0.0, params=p), tol=1e-12)
        assert psi.n_terms == 1
        (t,) = psi.terms
        (tv,) = st.vacuum(p).terms
        assert t.coeff == pytest.approx(tv.coeff, rel=1e-12)
        assert t.slope == pytest.approx(tv.slope, rel=1e-14)

    @pytest.mark.parametrize("q,lam", [(0.5, 0.8), (0.2, 0.9), (0.8, 1.5 + 0.5j)])
    def test_annihilation_eigenvector(self, q, lam):
        p = DeformationParams.from_q(q)
        psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol=1e-10)
        resid = ga.add(ops.annihilate(psi, p), ga.scale(psi, -lam))
        assert ga.norm(resid) / ga.norm(psi) < 1e-8

    def test_normalization_diagnostic_close_to_one(self):
        # the closed-form constant already normalizes the state; the
        # measured norm documents that (and absorbs truncation noise)
        for q, lam in ((0.5, 0.8), (0.2, 1.0), (0.9, 2.0)):
            p = DeformationParams.from_q(q)
            psi, measured = st.coherent_wavefunction_with_diagnostic(
                st.CoherentParams(lam=lam, params=p), tol=1e-10
            )
            assert measured == pytest.approx(1.0, abs=1e-8)
            assert ga.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_matches_fock_decomposition_up_to_global_phase(self):
        q, lam = 0.5, 0.8
        p = DeformationParams.from_q(q)
        cp = st.CoherentParams(lam=lam, params=p)
        psi = st.coherent_wavefunction(cp, tol=1e-10)
        fv = st.coherent_fock(cp, dim=60)
        recon = ga.GaussExpSum.empty()
        for n in range(60):
            recon = ga.add(recon, ga.scale(st.eigenstate(n, p), complex(fv.amplitudes[n])))
        xs = np.linspace(-3, 3, 25)
        a = ga.evaluate(psi, xs)
        b = ga.evaluate(recon, xs)
        k = int(np.argmax(np.abs(b)))
        phase = a[k] / b[k]
        phase /= abs(phase)
        assert np.max(np.abs(a - phase * b)) < 1e-8
        # with the real-positive c0 convention the phase agreement is exact
        assert phase == pytest.approx(1.0, abs=1e-8)

    def test_parseval_completeness(self):
        q, lam = 0.5, 0.8
        p = DeformationParams.from_q(q)
        psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol=1e-10)
        total = sum(
            abs(ga.inner_product(st.eigenstate(n, p), psi)) ** 2 for n in range(60)
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_outside_disk_rejected(self):
        p = DeformationParams.from_q(0.5)
        with pytest.raises(OutsideConvergenceDisk):
            st.CoherentParams(lam=1.5, params=p)

    def test_cancellation_guard_raises(self):
        # lambda = 0.5 at q = 1-1e-6 needs ~e^500 cancellation: no fixed
        # precision certifies it, so the construction must refuse loudly
        p = DeformationParams.from_q(1 - 1e-6)
        with pytest.raises(NoConvergence):
            st.coherent_wavefunction(st.CoherentParams(lam=0.5, params=p), tol=1e-8)


class TestCoherentLimits:
    def test_q1_limit_formula(self):
        assert st.coherent_limit_q1(0.0, 0.0) == pytest.approx(math.pi**-0.25)
        xs = np.linspace(-3, 4, 141)
        vals = st.coherent_limit_q1(0.5, xs)
        assert xs[int(np.argmax(vals))] == pytest.approx(0.5 * math.sqrt(2), abs=0.06)

    def test_q1_limit_approached_at_feasible_deformation(self):
        # q = 1-2e-4 is as close to 1 as the expansion stays certifiable
        p = DeformationParams.from_q(1 - 2e-4)
        lam = 0.5
        psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol=1e-8)
        xs = np.linspace(-3, 4, 29)
        got = np.abs(ga.evaluate(psi, xs))
        assert np.max(np.abs(got - st.coherent_limit_q1(lam, xs))) < 1e-2

    def test_q0_density_limit_formula(self):
        p = DeformationParams.from_q(1e-6)
        xs = np.linspace(-2, 2, 15)
        assert np.allclose(
            st.coherent_density_limit_q0(0.0, p, xs),
            np.exp(-xs * xs) / math.sqrt(math.pi),
        )
        lam = 0.3 + 0.4j
        dens = st.coherent_density_limit_q0(lam, p, xs)
        assert np.all(dens > 0.0)
        denom_floor = (1.0 - abs(lam)) ** 2
        assert np.all(
            1.0 + abs(lam) ** 2 - 2 * np.imag(lam * np.exp(2j * p.alpha * xs))
            >= denom_floor - 1e-12
        )

    def test_q0_density_limit_matches_finite_q(self):
        p = DeformationParams.from_q(1e-6)
        lam = 0.5
        psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol=1e-10)
        xs = np.linspace(-2, 2, 21)
        dens = np.abs(ga.evaluate(psi, xs)) ** 2
        assert np.max(np.abs(dens - st.coherent_density_limit_q0(lam, p, xs))) < 1e-2

    def test_q0_limit_outside_unit_disk_rejected(self):
        p = DeformationParams.from_q(1e-6)
        with pytest.raises(OutsideConvergenceDisk):
            st.coherent_density_limit_q0(1.0, p, 0.0)
