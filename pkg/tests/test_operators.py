"""Ladder operators: vacuum annihilation, ladder identities, composition
order, the deformed commutator, and operator-built observables."""

import cmath
import math

import numpy as np
import pytest

from qoscillator import gaussexp as ga
from qoscillator import operators as ops
from qoscillator import states as st
from qoscillator.gaussexp import GaussExpSum
from qoscillator.qarith import DeformationParams, q_integer, spectrum_energy

RNG = np.random.default_rng(61409)

Q_GRID = [0.1, 0.5, 0.9, 0.99]


def random_member(n_terms=4, rng=RNG):
    return GaussExpSum.from_terms(
        [
            (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
            for _ in range(n_terms)
        ]
    )


class TestAnnihilate:
    @pytest.mark.parametrize("q", Q_GRID)
    def test_vacuum_annihilation_exact(self, q):
        p = DeformationParams.from_q(q)
        out = ops.annihilate(st.vacuum(p), p)
        assert out.is_empty
        assert ga.norm(out) == 0.0

    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
    def test_lowers_eigenstates(self, q):
        p = DeformationParams.from_q(q)
        for n in range(1, 11):
            got = ops.annihilate(st.eigenstate(n, p), p)
            want = ga.scale(st.eigenstate(n - 1, p), math.sqrt(q_integer(n, q)))
            assert ga.norm(ga.add(got, ga.scale(want, -1.0))) < 1e-10

    def test_single_flat_term_coefficient(self):
        # input (1, 0) at q=0.5: one output term at slope -2i*alpha with
        # coefficient (1 - exp(3 alpha^2/2)) / (-i sqrt(1-q))
        q = 0.5
        p = DeformationParams.from_q(q)
        a = p.alpha
        out = ops.annihilate(GaussExpSum.from_terms([(1.0, 0.0)]), p)
        assert out.n_terms == 1
        (t,) = out.terms
        want = (1.0 - cmath.exp(1.5 * a * a)) / (-1j * math.sqrt(1.0 - q))
        assert t.slope == pytest.approx(-2j * a, rel=1e-13)
        assert t.coeff == pytest.approx(want, rel=1e-12)

    def test_pointwise_against_primitive_composition(self):
        # a f = [exp(-2iax) f - shifted(exp(-iax) f)] / (-i sqrt(1-q))
        q = 0.37
        p = DeformationParams.from_q(q)
        a = p.alpha
        f = random_member()
        got = ops.annihilate(f, p)
        for x in np.linspace(-2, 2, 9):
            direct = (
                cmath.exp(-2j * a * x) * ga.evaluate(f, x)
                - cmath.exp(-1j * a * (x + 1j * a)) * ga.evaluate(f, x + 1j * a)
            ) / (-1j * math.sqrt(1.0 - q))
            assert ga.evaluate(got, x) == pytest.approx(direct, rel=1e-11, abs=1e-12)


class TestCreate:
    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
    def test_raises_eigenstates(self, q):
        p = DeformationParams.from_q(q)
        for n in range(0, 11):
            got = ops.create(st.eigenstate(n, p), p)
            want = ga.scale(st.eigenstate(n + 1, p), math.sqrt(q_integer(n + 1, q)))
            assert ga.norm(ga.add(got, ga.scale(want, -1.0))) < 1e-10

    def test_vacuum_image_matches_explicit_level_one(self):
        # two terms with slopes 7i*alpha/2 and 3i*alpha/2, the second
        # carrying the relative factor -exp(-alpha^2)
        q = 0.5
        p = DeformationParams.from_q(q)
        a = p.alpha
        out = ops.create(st.vacuum(p), p)
        assert out.n_terms == 2
        terms = sorted(out.terms, key=lambda t: -t.slope.imag)
        assert terms[0].slope == pytest.approx(3.5j * a, rel=1e-13)
        assert terms[1].slope == pytest.approx(1.5j * a, rel=1e-13)
        ratio = terms[1].coeff / terms[0].coeff
        assert ratio == pytest.approx(-math.exp(-a * a), rel=1e-13)

    def test_wrong_composition_order_is_detected(self):
        # swapping multiply/shift scales the second piece by exp(-alpha^2):
        # the witness must NOT reproduce the eigenfunction ladder
        q = 0.5
        p = DeformationParams.from_q(q)
        good = ops.create(st.vacuum(p), p)
        bad = ops.create_swapped_order(st.vacuum(p), p)
        good_terms = sorted(good.terms, key=lambda t: -t.slope.imag)
        bad_terms = sorted(bad.terms, key=lambda t: -t.slope.imag)
        ratio = bad_terms[1].coeff / good_terms[1].coeff
        assert ratio == pytest.approx(math.exp(-p.alpha**2), rel=1e-12)
        resid = ga.add(bad, ga.scale(st.eigenstate(1, p), -math.sqrt(q_integer(1, q))))
        assert ga.norm(resid) > 1e-2


class TestLadderIdentities:
    @pytest.mark.parametrize("q", Q_GRID)
    def test_full_ladder_sweep(self, q):
        p = DeformationParams.from_q(q)
        states = [st.eigenstate(n, p) for n in range(17)]
        for n in range(1, 16):
            down = ga.add(
                ops.annihilate(states[n], p),
                ga.scale(states[n - 1], -math.sqrt(q_integer(n, q))),
            )
            up = ga.add(
                ops.create(states[n], p),
                ga.scale(states[n + 1], -math.sqrt(q_integer(n + 1, q))),
            )
            assert ga.norm(down) < 1e-10
            assert ga.norm(up) < 1e-10


class TestCommutator:
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_identity_on_random_members(self, q):
        p = DeformationParams.from_q(q)
        for _ in range(25):
            f = random_member()
            assert ops.q_commutator_residual(f, p) < 1e-10 * ga.norm(f)

    def test_vacuum(self):
        p = DeformationParams.from_q(0.5)
        assert ops.q_commutator_residual(st.vacuum(p), p) < 1e-12

    def test_empty_sum(self):
        p = DeformationParams.from_q(0.5)
        assert ops.q_commutator_residual(GaussExpSum.empty(), p) == 0.0


class TestDerivedOperators:
    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
    def test_hamiltonian_eigenvalue(self, q):
        p = DeformationParams.from_q(q)
        for n in range(11):
            psi = st.eigenstate(n, p)
            resid = ga.add(
                ops.hamiltonian(psi, p), ga.scale(psi, -spectrum_energy(n, p))
            )
            assert ga.norm(resid) < 1e-10

    def test_hamiltonian_identity_with_number_operator(self):
        # H = omega(1/2 + (1+q)/2 a+ a) on the family
        q = 0.7
        p = DeformationParams.from_q(q, omega=1.3)
        for f in (st.eigenstate(3, p), random_member()):
            ha = ops.hamiltonian(f, p)
            num = ops.create(ops.annihilate(f, p), p)
            alt = ga.add(
                ga.scale(f, 0.5 * p.omega),
                ga.scale(num, 0.5 * p.omega * (1.0 + q)),
            )
            assert ga.norm(ga.add(ha, ga.scale(alt, -1.0))) < 1e-10 * ga.norm(f)

    def test_position_mean_vanishes_on_eigenstates(self):
        p = DeformationParams.from_q(0.5)
        for n in range(6):
            psi = st.eigenstate(n, p)
            val = ga.inner_product(psi, ops.position_op(psi, p))
            assert abs(val) < 1e-12

    def test_position_q1_proxy_matches_multiplication_by_x(self):
        # at q -> 1 the operator x acting on the vacuum looks like x * Gaussian
        p = DeformationParams.from_q(1 - 1e-8)
        xpsi = ops.position_op(st.vacuum(p), p)
        for x in np.linspace(-4, 4, 17):
            classical = x * math.pi**-0.25 * math.exp(-x * x / 2)
            assert ga.evaluate(xpsi, x) == pytest.approx(classical, abs=1e-3)

    def test_momentum_mean_vanishes_on_eigenstates(self):
        p = DeformationParams.from_q(0.3)
        for n in range(4):
            psi = st.eigenstate(n, p)
            val = ga.inner_product(psi, ops.momentum_op(psi, p))
            assert abs(val) < 1e-12

    @pytest.mark.parametrize("q", [0.2, 0.8])
    def test_hermiticity_imag_parts_on_span(self, q):
        p = DeformationParams.from_q(q)
        for n in range(8):
            psi = st.eigenstate(n, p)
            xf = ops.position_op(psi, p)
            pf = ops.momentum_op(psi, p)
            for val in (
                ga.inner_product(psi, xf),
                ga.inner_product(psi, pf),
                ga.inner_product(psi, ops.position_op(xf, p)),
                ga.inner_product(psi, ops.momentum_op(pf, p)),
            ):
                assert abs(val.imag) < 1e-10
