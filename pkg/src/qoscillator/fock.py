"""Truncated Fock-space matrix realization of the deformed ladder algebra.

Entirely independent of the coordinate-space algebra: plain float64
matrices with sqrt([n]) on the superdiagonal. The last basis index is a
truncation artifact (a+ maps |dim-1> out of the space), so algebraic
identities hold exactly only on the first dim-1 entries and assertions must
exclude the boundary row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroState
from .qarith import DeformationParams, q_integer

DEFAULT_DIM = 80


@dataclass(frozen=True)
class FockVector:
    """Truncated amplitude vector over the eigenbasis |0>, ..., |dim-1>."""

    dim: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amps)
        if self.dim <= 0 or amps.shape != (self.dim,):
            raise DimensionMismatch(
                f"amplitudes shape {amps.shape} does not match dim={self.dim}"
            )
        if self.norm_sq() > 1.0 + 1e-9:
            raise ValueError("state vectors must have squared norm <= 1 + 1e-9")

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class LadderMatrices:
    """a with sqrt([n]) on the superdiagonal; a_dag its conjugate transpose."""

    dim: int
    a: np.ndarray = field(repr=False)
    a_dag: np.ndarray = field(repr=False)


def ladder_matrices(dim: int, q: float) -> LadderMatrices:
    if dim < 2:
        raise ValueError(f"dim must be at least 2, got {dim}")
    entries = np.array([np.sqrt(q_integer(n, q)) for n in range(1, dim)])
    a = np.diag(entries, k=1).astype(np.complex128)
    return LadderMatrices(dim=dim, a=a, a_dag=a.conj().T.copy())


def hamiltonian_matrix(dim: int, params: DeformationParams) -> np.ndarray:
    """(omega/2)(a a+ + a+ a); diagonal in this basis by construction."""
    m = ladder_matrices(dim, params.q)
    return 0.5 * params.omega * (m.a @ m.a_dag + m.a_dag @ m.a)


def position_matrix(dim: int, params: DeformationParams) -> np.ndarray:
    m = ladder_matrices(dim, params.q)
    return (m.a + m.a_dag) / np.sqrt(2.0)


def momentum_matrix(dim: int, params: DeformationParams) -> np.ndarray:
    m = ladder_matrices(dim, params.q)
    return (m.a - m.a_dag) / (1j * np.sqrt(2.0))


def basis_vector(n: int, dim: int) -> FockVector:
    if not (0 <= n < dim):
        raise DimensionMismatch(f"basis index {n} outside dimension {dim}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[n] = 1.0
    return FockVector(dim=dim, amplitudes=amps)


def fock_expectation(op_matrix: np.ndarray, v: FockVector) -> complex:
    """<v|M|v> / <v|v>."""
    op = np.asarray(op_matrix)
    if op.shape != (v.dim, v.dim):
        raise DimensionMismatch(
            f"operator shape {op.shape} does not match state dim {v.dim}"
        )
    nsq = v.norm_sq()
    if nsq == 0.0:
        raise ZeroState("expectation value of a zero state")
    return complex(np.vdot(v.amplitudes, op @ v.amplitudes) / nsq)
