"""q-deformed arithmetic: q-integers, q-factorials, the q-exponential series,
and the deformed oscillator spectrum.

Conventions: deformation parameter q strictly inside (0, 1), deformation
scale alpha = sqrt(-ln(q)/2), hbar = 1. The q-integer [n] = (1-q^n)/(1-q)
is bounded by 1/(1-q); the q-exponential sum(z^n/[n]!) converges only on
the disk |z| < 1/(1-q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivergentArgument, NoConvergence

# Beyond this point the closed form (1-q^n)/(1-q) loses digits to
# cancellation and the geometric sum takes over.
_GEOMETRIC_SUM_THRESHOLD = 1.0 - 1e-6

_QEXP_TERM_CAP = 10_000


@dataclass(frozen=True)
class DeformationParams:
    """The (q, alpha, omega) triple governing all deformed formulas.

    q and alpha are redundant (q = exp(-2 alpha^2)); both are kept so that
    formulas can use whichever form the algebra writes them in. Use the
    ``from_q`` / ``from_alpha`` constructors rather than filling fields by
    hand.
    """

    q: float
    alpha: float
    omega: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie strictly inside (0, 1), got {self.q}")
        if self.alpha <= 0.0 or not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        expected = math.sqrt(-math.log(self.q) / 2.0)
        if abs(self.alpha - expected) > 4.0 * math.ulp(expected):
            raise ValueError(
                f"alpha={self.alpha} inconsistent with q={self.q} "
                f"(expected {expected})"
            )

    @classmethod
    def from_q(cls, q: float, omega: float = 1.0) -> "DeformationParams":
        if not (0.0 < q < 1.0):
            raise ValueError(f"q must lie strictly inside (0, 1), got {q}")
        return cls(q=q, alpha=math.sqrt(-math.log(q) / 2.0), omega=omega)

    @classmethod
    def from_alpha(cls, alpha: float, omega: float = 1.0) -> "DeformationParams":
        if alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        return cls(q=math.exp(-2.0 * alpha * alpha), alpha=alpha, omega=omega)


@dataclass(frozen=True)
class TruncatedSeriesValue:
    """A partial series sum with a certified bound on the discarded tail."""

    value: complex
    abs_error_bound: float
    terms_used: int

    def __post_init__(self):
        if self.abs_error_bound < 0.0:
            raise ValueError("abs_error_bound must be nonnegative")
        if self.terms_used < 1:
            raise ValueError("terms_used must be at least 1")


def _check_n(n) -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_q(q: float) -> float:
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie strictly inside (0, 1), got {q}")
    return float(q)


def q_integer(n, q) -> float:
    """[n] = (1 - q^n)/(1 - q), the q-deformed count."""
    n = _check_n(n)
    q = _check_q(q)
    if n == 0:
        return 0.0
    qpow = q**n
    # the closed form cancels in 1 - q^n; once q^n exceeds 1/2 (and always
    # hard against q = 1) the Horner recurrence [k+1] = 1 + q[k] is safer
    if qpow > 0.5 or q > _GEOMETRIC_SUM_THRESHOLD:
        acc = 0.0
        for _ in range(n):
            acc = 1.0 + q * acc
        return acc
    return (1.0 - qpow) / (1.0 - q)


def q_factorial(n, q) -> float:
    """[n]! = [1][2]...[n], with [0]! = 1."""
    n = _check_n(n)
    q = _check_q(q)
    result = 1.0
    for k in range(1, n + 1):
        result *= q_integer(k, q)
    return result


def q_factorial_log(n, q) -> float:
    """ln([n]!), overflow-safe companion for ratios of large q-factorials."""
    n = _check_n(n)
    q = _check_q(q)
    return sum(math.log(q_integer(k, q)) for k in range(1, n + 1))


def q_binomial(n, k, q) -> float:
    """[n]! / ([k]! [n-k]!); symmetric under k <-> n-k."""
    n = _check_n(n)
    q = _check_q(q)
    if k != int(k) or not (0 <= k <= n):
        raise ValueError(f"k must satisfy 0 <= k <= n={n}, got {k!r}")
    k = int(k)
    return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


def convergence_radius(q) -> float:
    """Radius 1/(1-q) of the q-exponential's convergence disk."""
    q = _check_q(q)
    return 1.0 / (1.0 - q)


def q_exponential(z, q, tol: float = 1e-12) -> TruncatedSeriesValue:
    """Sum the q-exponential series sum(z^n/[n]!) with a certified tail bound.

    Terms are added until the geometric bound |t_N| * r/(1-r) with
    r = |z|/[N+2] (the supremum of the remaining term ratios) drops below
    ``tol``. Raises DivergentArgument outside the disk |z|(1-q) < 1 and
    NoConvergence if 10000 terms do not reach the bound, which happens only
    hard against the disk boundary.
    """
    q = _check_q(q)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    z = complex(z)
    az = abs(z)
    if az * (1.0 - q) >= 1.0:
        raise DivergentArgument(
            f"|z|={az} outside convergence disk of radius {convergence_radius(q)}"
        )
    if az == 0.0:
        return TruncatedSeriesValue(value=1.0 + 0.0j, abs_error_bound=0.0, terms_used=1)

    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    qi = 1.0          # [1]
    qi_next = 1.0 + q  # [2]
    n = 0
    while True:
        n += 1
        term = term * z / qi
        total += term
        # qi_next is [n+2] here: the largest remaining term ratio is |z|/[n+2]
        qi = 1.0 + q * qi
        qi_next = 1.0 + q * qi_next
        r = az / qi_next
        if r < 1.0:
            bound = abs(term) * r / (1.0 - r)
            if bound <= tol:
                return TruncatedSeriesValue(
                    value=total, abs_error_bound=bound, terms_used=n + 1
                )
        if n >= _QEXP_TERM_CAP:
            raise NoConvergence(
                f"q-exponential did not meet tol={tol} within {_QEXP_TERM_CAP} terms "
                f"(|z|={az}, radius {convergence_radius(q)})"
            )


def spectrum_energy(n, params: DeformationParams) -> float:
    """E_n = omega([n] + q^n/2) = omega([n] + [n+1])/2.

    Evaluated through the identity q^n = 1 - (1-q)[n], which keeps the two
    printed forms of the spectrum consistent to a few ulp instead of
    accumulating independent power roundings.
    """
    n = _check_n(n)
    qi = q_integer(n, params.q)
    qpow = 1.0 - (1.0 - params.q) * qi
    return params.omega * (qi + 0.5 * qpow)


def quadratic_expansion_residual(n, eps: float, omega: float) -> float:
    """E_n at q = 1-eps minus the quadratic model omega(n + 1/2 - n^2 eps/2).

    The residual is the O(eps^2) remainder of the small-deformation
    expansion; halving eps divides it by ~4.
    """
    n = _check_n(n)
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    q = 1.0 - eps
    energy = omega * (q_integer(n, q) + 0.5 * q**n)
    model = omega * (n + 0.5 - 0.5 * n * n * eps)
    return energy - model
