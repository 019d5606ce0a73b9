"""Named self-verification checks aggregating every module invariant.

Each check compares an identity, closed form, or limit against an
independent route and reports (name, max_residual, threshold, passed).
The battery powers the CLI ``verify`` subcommand; a deliberately wrong
operator composition can be injected (``fault="operator-order"``) to prove
the ladder check actually bites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock as fk
from . import gaussexp as ga
from . import observables as obs
from . import operators as ops
from . import states as st
from .errors import DivergentArgument
from .levelfit import LevelData, fit_levels
from .qarith import (
    DeformationParams,
    q_exponential,
    q_integer,
    quadratic_expansion_residual,
    spectrum_energy,
)
from .quadrature import QuadratureConfig, integrate_line

FAULT_OPERATOR_ORDER = "operator-order"

_RNG_SEED = 172902


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    threshold: float
    passed: bool


def _result(name, residual, threshold) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, threshold, residual < threshold)


def _create_fn(fault):
    return ops.create_swapped_order if fault == FAULT_OPERATOR_ORDER else ops.create


def _terms_integrand(f: ga.GaussExpSum):
    """Plain-float64 integrand from the public terms, independent of the
    algebra's own evaluation path."""
    cs = np.array([t.coeff for t in f.terms])
    bs = np.array([t.slope for t in f.terms])

    def func(x):
        return complex(np.sum(cs * np.exp(-0.5 * x * x + bs * x)))

    return func


def check_vacuum_annihilation(q_list) -> CheckResult:
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        worst = max(worst, ga.norm(ops.annihilate(st.vacuum(p), p)))
    return _result("vacuum_annihilation", worst, 1e-13)


def check_ladder_relations(q_list, n_max, fault=None) -> CheckResult:
    create = _create_fn(fault)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        states = [st.eigenstate(n, p) for n in range(n_max + 2)]
        for n in range(1, n_max + 1):
            down = ga.add(
                ops.annihilate(states[n], p),
                ga.scale(states[n - 1], -math.sqrt(q_integer(n, q))),
            )
            up = ga.add(
                create(states[n], p),
                ga.scale(states[n + 1], -math.sqrt(q_integer(n + 1, q))),
            )
            worst = max(worst, ga.norm(down), ga.norm(up))
    return _result("ladder_relations", worst, 1e-10)


def check_commutator(q_list, n_random=100) -> CheckResult:
    rng = np.random.default_rng(_RNG_SEED)
    worst = 0.0
    for i in range(n_random):
        q = q_list[i % len(q_list)]
        p = DeformationParams.from_q(q)
        f = ga.GaussExpSum.from_terms(
            [
                (
                    complex(rng.normal(), rng.normal()),
                    complex(rng.normal(), rng.normal()),
                )
                for _ in range(4)
            ]
        )
        worst = max(worst, ops.q_commutator_residual(f, p) / ga.norm(f))
    return _result("q_commutator", worst, 1e-10)


def check_orthonormality(q_list, n_max) -> CheckResult:
    n_cap = min(n_max, 12)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        states = [st.eigenstate(n, p) for n in range(n_cap + 1)]
        for m in range(n_cap + 1):
            for n in range(m, n_cap + 1):
                val = ga.inner_product(states[m], states[n])
                worst = max(worst, abs(val - (1.0 if m == n else 0.0)))
    return _result("orthonormality", worst, 1e-10)


def check_orthonormality_vs_quadrature(q_list, n_pairs=20) -> CheckResult:
    rng = np.random.default_rng(_RNG_SEED + 1)
    cfg = QuadratureConfig()
    worst = 0.0
    for i in range(n_pairs):
        q = q_list[i % len(q_list)]
        p = DeformationParams.from_q(q)
        m, n = sorted(rng.integers(0, 9, size=2))
        fm, fn = st.eigenstate(m, p), st.eigenstate(n, p)
        exact = ga.inner_product(fm, fn)
        fm_fn = _terms_integrand(fm), _terms_integrand(fn)
        quad = integrate_line(
            lambda x: np.conj(fm_fn[0](x)) * fm_fn[1](x), cfg
        ).value
        worst = max(worst, abs(quad - exact))
    return _result("orthonormality_vs_quadrature", worst, 1e-9)


def check_spectrum_eigenvalue(q_list, n_max) -> CheckResult:
    n_cap = min(n_max, 12)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        for n in range(n_cap + 1):
            psi = st.eigenstate(n, p)
            e = obs.expectation(obs.OperatorKind.HAMILTONIAN, psi, p)
            worst = max(worst, abs(e - spectrum_energy(n, p)))
    return _result("spectrum_eigenvalue", worst, 1e-10)


def check_spectrum_bound(q_list, n_max) -> CheckResult:
    worst = -math.inf
    for q in q_list:
        p = DeformationParams.from_q(q)
        bound = p.omega / (1.0 - q)
        for n in range(n_max + 1):
            worst = max(worst, (spectrum_energy(n, p) - bound) / bound)
    return _result("spectrum_bound", worst, 1e-15)


def check_spectrum_classical_limit() -> CheckResult:
    p = DeformationParams.from_q(1.0 - 1e-8)
    worst = max(
        abs(spectrum_energy(n, p) - (n + 0.5)) for n in range(11)
    )
    return _result("spectrum_classical_limit", worst, 1e-6)


def check_spectrum_richardson() -> CheckResult:
    r1 = quadratic_expansion_residual(3, 1e-3, 1.0)
    r2 = quadratic_expansion_residual(3, 5e-4, 1.0)
    return _result("spectrum_richardson", abs(r1 / r2 - 4.0), 0.8)


def check_eigen_uncertainty(q_list, n_max) -> CheckResult:
    n_cap = min(n_max, 12)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        for n in range(n_cap + 1):
            rep = obs.uncertainty_report(st.eigenstate(n, p), p)
            worst = max(worst, abs(rep.product - spectrum_energy(n, p) / p.omega))
    return _result("eigen_uncertainty", worst, 1e-10)


def check_hermiticity(q_list, n_max) -> CheckResult:
    n_cap = min(n_max, 8)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        probes = [st.eigenstate(n, p) for n in range(n_cap + 1)]
        probes.append(
            st.coherent_wavefunction(
                st.CoherentParams(lam=0.5 / math.sqrt(1 - q), params=p), tol=1e-9
            )
        )
        for f in probes:
            nsq = ga.inner_product(f, f).real
            xf = ops.position_op(f, p)
            pf = ops.momentum_op(f, p)
            for val in (
                ga.inner_product(f, xf),
                ga.inner_product(f, pf),
                ga.inner_product(f, ops.position_op(xf, p)),
                ga.inner_product(f, ops.momentum_op(pf, p)),
            ):
                worst = max(worst, abs(val.imag) / nsq)
    return _result("hermiticity_on_span", worst, 1e-10)


def check_coherent_eigenvalue(q_list, tol=1e-9) -> CheckResult:
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        radius = 1.0 / math.sqrt(1.0 - q)
        for lam in (0.3 * radius, 0.7 * radius, 0.95 * radius,
                    0.5 * radius * np.exp(0.25j * np.pi)):
            psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol)
            resid = ga.add(ops.annihilate(psi, p), ga.scale(psi, -lam))
            worst = max(worst, ga.norm(resid) / ga.norm(psi))
    return _result("coherent_eigenvalue", worst, 1e-8)


def check_coherent_fock_agreement(q_list, tol=1e-9) -> CheckResult:
    # the amplitude ratio lambda/(sqrt[n] -> lambda sqrt(1-q)) must decay fast
    # enough that the 60-state basis holds the state below the 1e-8 target
    xs = np.linspace(-3.0, 3.0, 41)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        radius = 1.0 / math.sqrt(1.0 - q)
        for lam in (0.3 * radius, 0.6 * radius):
            cp = st.CoherentParams(lam=lam, params=p)
            psi = st.coherent_wavefunction(cp, tol)
            fv = st.coherent_fock(cp, dim=60)
            recon = ga.GaussExpSum.empty()
            for n in range(60):
                recon = ga.add(
                    recon, ga.scale(st.eigenstate(n, p), complex(fv.amplitudes[n]))
                )
            a = ga.evaluate(psi, xs)
            b = ga.evaluate(recon, xs)
            # global-phase freedom: align at the largest amplitude
            k = int(np.argmax(np.abs(b)))
            phase = a[k] / b[k]
            phase /= abs(phase)
            worst = max(worst, float(np.max(np.abs(a - phase * b))))
    return _result("coherent_fock_agreement", worst, 1e-8)


def check_coherent_uncertainty(tol=1e-9) -> CheckResult:
    worst = 0.0
    for q in (0.2, 0.5, 0.8):
        p = DeformationParams.from_q(q)
        radius = 1.0 / math.sqrt(1.0 - q)
        previous = math.inf
        for frac in (0.0, 0.3, 0.7, 0.95):
            lam = frac * radius
            if frac == 0.0:
                psi = st.vacuum(p)
            else:
                psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol)
            rep = obs.uncertainty_report(psi, p)
            closed = obs.uncertainty_coherent_closed_form(lam, q)
            worst = max(worst, abs(rep.product - closed))
            if not rep.product < previous + 1e-12:
                worst = max(worst, 1.0)
            previous = rep.product
            if frac > 0.0 and not rep.product < 0.5:
                worst = max(worst, 1.0)
    return _result("coherent_uncertainty", worst, 1e-7)


def check_coherent_energy(q_list, tol=1e-9) -> CheckResult:
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        radius = 1.0 / math.sqrt(1.0 - q)
        for frac in (0.3, 0.7, 0.95):
            lam = frac * radius
            psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol)
            e = obs.expectation(obs.OperatorKind.HAMILTONIAN, psi, p).real
            closed = obs.energy_coherent_closed_form(lam, q, 1.0)
            worst = max(worst, abs(e - closed))
            if not e < 1.0 / (1.0 - q):
                worst = max(worst, 1.0)
    return _result("coherent_energy", worst, 1e-8)


def check_fock_cross_validation(q_list, n_max, tol=1e-9) -> CheckResult:
    dim = fk.DEFAULT_DIM
    n_cap = min(n_max, 12)
    worst = 0.0
    for q in q_list:
        p = DeformationParams.from_q(q)
        h = fk.hamiltonian_matrix(dim, p)
        x = fk.position_matrix(dim, p)
        # H is diagonal here; compare the first dim-2 diagonal entries
        diag = np.real(np.diag(h))
        worst = max(
            worst,
            max(
                abs(diag[n] - spectrum_energy(n, p))
                for n in range(dim - 2)
            ),
        )
        for n in range(n_cap + 1):
            v = fk.basis_vector(n, dim)
            psi = st.eigenstate(n, p)
            coord_e = obs.expectation(obs.OperatorKind.HAMILTONIAN, psi, p).real
            rep = obs.uncertainty_report(psi, p)
            worst = max(worst, abs(fk.fock_expectation(h, v).real - coord_e))
            worst = max(
                worst,
                abs(fk.fock_expectation(x @ x, v).real - (rep.var_x + rep.mean_x**2)),
            )
        radius = 1.0 / math.sqrt(1.0 - q)
        cp = st.CoherentParams(lam=0.7 * radius, params=p)
        fv = st.coherent_fock(cp, dim)
        psi = st.coherent_wavefunction(cp, tol)
        rep = obs.uncertainty_report(psi, p)
        worst = max(
            worst, abs(fk.fock_expectation(x, fv).real - rep.mean_x)
        )
        worst = max(
            worst,
            abs(fk.fock_expectation(h, fv).real - rep.energy),
        )
        prod_fock = _fock_uncertainty_product(fv, p, dim)
        worst = max(worst, abs(prod_fock - rep.product))
    return _result("fock_cross_validation", worst, 1e-8)


def _fock_uncertainty_product(v: fk.FockVector, p: DeformationParams, dim: int) -> float:
    x = fk.position_matrix(dim, p)
    mom = fk.momentum_matrix(dim, p)
    mx = fk.fock_expectation(x, v).real
    mp_ = fk.fock_expectation(mom, v).real
    vx = fk.fock_expectation(x @ x, v).real - mx * mx
    vp = fk.fock_expectation(mom @ mom, v).real - mp_ * mp_
    return math.sqrt(max(vx, 0.0)) * math.sqrt(max(vp, 0.0))


def check_qexp_qdifference(q_list) -> CheckResult:
    worst = 0.0
    for q in q_list:
        for z in (0.4, -0.8, 0.5 + 0.5j, 0.9 / (1 - q)):
            fz = q_exponential(z, q, tol=1e-13)
            fqz = q_exponential(q * z, q, tol=1e-13)
            lhs = (fz.value - fqz.value) / (z * (1 - q))
            budget = (
                (fz.abs_error_bound + fqz.abs_error_bound) / abs(z * (1 - q))
                + fz.abs_error_bound
                + 1e-12 * abs(fz.value)
            )
            worst = max(worst, abs(lhs - fz.value) / budget)
    return _result("qexp_qdifference", worst, 1.0)


def check_qexp_disk_rejection(q_list) -> CheckResult:
    bad = 0.0
    for q in q_list:
        try:
            q_exponential(1.0 / (1.0 - q), q)
            bad = 1.0
        except DivergentArgument:
            pass
    return _result("qexp_disk_rejection", bad, 0.5)


def check_qexp_classical_limit() -> CheckResult:
    q = 1.0 - 1e-10
    worst = max(
        abs(q_exponential(z, q, tol=1e-9).value - np.exp(z))
        for z in (3.0, -3.0, 1.5 + 2j, 3j)
    )
    return _result("qexp_classical_limit", worst, 1e-6)


def check_limit_hermite_density() -> CheckResult:
    p = DeformationParams.from_q(1.0 - 1e-8)
    xs = np.linspace(-4.0, 4.0, 33)
    worst = 0.0
    for n in range(5):
        dens = np.abs(ga.evaluate(st.eigenstate(n, p), xs)) ** 2
        ref = st.eigenstate_limit_q1(n, xs) ** 2
        worst = max(worst, float(np.max(np.abs(dens - ref))))
    return _result("limit_hermite_density", worst, 1e-3)


def check_limit_q0_eigen_density() -> CheckResult:
    p = DeformationParams.from_q(1e-6)
    xs = np.linspace(-2.0, 2.0, 21)
    worst = 0.0
    for n in (1, 3):
        dens = np.abs(ga.evaluate(st.eigenstate(n, p), xs)) ** 2
        ref = st.eigenstate_density_limit_q0(n, xs)
        worst = max(worst, float(np.max(np.abs(dens - ref))))
    return _result("limit_q0_eigen_density", worst, 1e-2)


def check_limit_q0_coherent_density(tol=1e-10) -> CheckResult:
    p = DeformationParams.from_q(1e-6)
    xs = np.linspace(-2.0, 2.0, 21)
    lam = 0.5
    psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol)
    dens = np.abs(ga.evaluate(psi, xs)) ** 2
    ref = st.coherent_density_limit_q0(lam, p, xs)
    return _result(
        "limit_q0_coherent_density", float(np.max(np.abs(dens - ref))), 1e-2
    )


def check_limit_q1_coherent(tol=1e-8) -> CheckResult:
    # q = 1 - 2e-4 is the closest certifiable deformation for lambda = 0.5;
    # closer to 1 the expansion cancels beyond any fixed precision
    p = DeformationParams.from_q(1.0 - 2e-4)
    lam = 0.5
    xs = np.linspace(-3.0, 4.0, 29)
    psi = st.coherent_wavefunction(st.CoherentParams(lam=lam, params=p), tol)
    err = np.max(np.abs(np.abs(ga.evaluate(psi, xs)) - st.coherent_limit_q1(lam, xs)))
    return _result("limit_q1_coherent", float(err), 1e-2)


def check_fit_round_trip() -> CheckResult:
    worst = 0.0
    for omega, q in ((1.0, 0.95), (2.0, 0.5), (0.7, 0.2)):
        p = DeformationParams.from_q(q, omega=omega)
        data = LevelData(tuple((n, spectrum_energy(n, p)) for n in range(7)))
        fit = fit_levels(data)
        worst = max(worst, abs(fit.omega - omega) / omega, abs(fit.q - q) / q)
    return _result("fit_round_trip", worst, 1e-6)


def run_checks(
    q_list=(0.1, 0.5, 0.9),
    n_max: int = 10,
    tol: float = 1e-9,
    fault: str | None = None,
) -> list[CheckResult]:
    """Run the whole battery; q_list drives the parameter-dependent checks."""
    q_list = tuple(q_list)
    if not q_list:
        raise ValueError("q_list must not be empty")
    for q in q_list:
        if not (0.0 < q < 1.0):
            raise ValueError(f"q values must lie in (0, 1), got {q}")
    if fault not in (None, FAULT_OPERATOR_ORDER):
        raise ValueError(f"unknown fault {fault!r}")

    return [
        check_vacuum_annihilation(q_list),
        check_ladder_relations(q_list, n_max, fault),
        check_commutator(q_list),
        check_orthonormality(q_list, n_max),
        check_orthonormality_vs_quadrature(q_list),
        check_spectrum_eigenvalue(q_list, n_max),
        check_spectrum_bound(q_list, n_max),
        check_spectrum_classical_limit(),
        check_spectrum_richardson(),
        check_eigen_uncertainty(q_list, n_max),
        check_hermiticity(q_list, n_max),
        check_coherent_eigenvalue(q_list, tol),
        check_coherent_fock_agreement(q_list, tol),
        check_coherent_uncertainty(tol),
        check_coherent_energy(q_list, tol),
        check_fock_cross_validation(q_list, n_max, tol),
        check_qexp_qdifference(q_list),
        check_qexp_disk_rejection(q_list),
        check_qexp_classical_limit(),
        check_limit_hermite_density(),
        check_limit_q0_eigen_density(),
        check_limit_q0_coherent_density(tol),
        check_limit_q1_coherent(),
        check_fit_round_trip(),
    ]
