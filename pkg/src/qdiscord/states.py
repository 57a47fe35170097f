"""Density matrices, Werner states and the shared channel states."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionError, DomainError

STATE_TOL = 1e-10

BELL_STATES = {
    "phi+": (linalg.ket("00") + linalg.ket("11")) / np.sqrt(2),
    "phi-": (linalg.ket("00") - linalg.ket("11")) / np.sqrt(2),
    "psi+": (linalg.ket("01") + linalg.ket("10")) / np.sqrt(2),
    "psi-": (linalg.ket("01") - linalg.ket("10")) / np.sqrt(2),
}


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A ``2**num_qubits`` square matrix meant to be a quantum state.

    Construction only checks the shape. Use :func:`validate` for the
    physical invariants.
    """

    matrix: np.ndarray
    num_qubits: int

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.shape[0] != 2 ** self.num_qubits:
            raise DimensionError(
                f"{self.num_qubits} qubits need dimension {2 ** self.num_qubits}, got {m.shape[0]}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        if isinstance(m, DensityMatrix):
            return m
        m = linalg.as_matrix(m)
        return cls(m, linalg.num_qubits_of(m.shape[0]))

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        return cls.from_matrix(linalg.projector(psi))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residual: float
    trace_deviation: float
    min_eigenvalue: float

    @property
    def passed(self) -> bool:
        return (self.hermiticity_residual <= STATE_TOL
                and self.trace_deviation <= STATE_TOL
                and self.min_eigenvalue >= -STATE_TOL)

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        status = "pass" if self.passed else "fail"
        return (f"{status}: hermiticity residual {self.hermiticity_residual:.3e}, "
                f"trace deviation {self.trace_deviation:.3e}, "
                f"min eigenvalue {self.min_eigenvalue:.3e}")


def validate(rho) -> ValidationReport:
    """Diagnose Hermiticity, unit trace and positivity of ``rho``."""
    m = linalg.as_matrix(rho)
    res = linalg.hermiticity_residual(m)
    trace_dev = abs(np.trace(m) - 1.0)
    sym = 0.5 * (m + linalg.dagger(m))
    min_eig = float(linalg.hermitian_eigenvalues(sym)[0])
    return ValidationReport(res, float(trace_dev), min_eig)


def werner(lam: float, bell: str = "phi+") -> DensityMatrix:
    """Two-qubit Werner state ``lam |B><B| + (1 - lam) I/4``.

    ``bell`` selects the Bell state ``|B>``; all four choices are related by a
    local Pauli on one qubit.
    """
    lam = float(lam)
    if not 0.0 <= lam <= 1.0 or not np.isfinite(lam):
        raise DomainError(f"Werner parameter must lie in [0, 1], got {lam}")
    try:
        b = BELL_STATES[bell]
    except KeyError:
        raise DomainError(f"unknown Bell state {bell!r}; choose from {sorted(BELL_STATES)}") from None
    m = lam * linalg.projector(b) + (1.0 - lam) * np.eye(4) / 4.0
    return DensityMatrix(m, 2)


class Channel(str, enum.Enum):
    CLUSTER4 = "cluster4"
    OMEGA4 = "omega4"
    W3 = "w3"


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """Pure state shared by Alice and Bob.

    The register lists Alice's channel qubits first and Bob's qubits last.
    """

    name: Channel
    state: np.ndarray
    alice_channel_qubits: tuple[int, ...]
    bob_qubits: tuple[int, ...]

    @property
    def num_qubits(self) -> int:
        return len(self.alice_channel_qubits) + len(self.bob_qubits)

    def density(self) -> DensityMatrix:
        return DensityMatrix.pure(self.state)


def _superpose(terms: Sequence[tuple[str, float]], norm: float) -> np.ndarray:
    return sum(c * linalg.ket(bits) for bits, c in terms) * norm


# amplitudes with Alice's channel qubits written first, e.g. |01>_A|10>_B -> "0110"
_CHANNEL_TERMS = {
    Channel.CLUSTER4: ([("0000", 1), ("0110", 1), ("1001", 1), ("1111", -1)], 1 / 2, 2),
    Channel.OMEGA4: ([("0011", 1), ("0101", 1), ("0110", 1),
                      ("1001", 1), ("1010", 1), ("1100", 1)], 1 / np.sqrt(6), 2),
    Channel.W3: ([("001", 1), ("010", 1), ("100", 1)], 1 / np.sqrt(3), 1),
}


def channel(name: Channel | str) -> ChannelSpec:
    """Shared channel state by name (``cluster4``, ``omega4`` or ``w3``)."""
    try:
        key = Channel(name)
    except ValueError:
        raise DomainError(f"unknown channel {name!r}") from None
    terms, norm, n_alice = _CHANNEL_TERMS[key]
    psi = _superpose(terms, norm)
    n = linalg.num_qubits_of(psi.size)
    return ChannelSpec(key, psi, tuple(range(n_alice)), tuple(range(n_alice, n)))


def _check_onb(basis, name: str) -> np.ndarray:
    b = np.asarray(basis, dtype=complex)
    if b.shape != (2, 2):
        raise DomainError(f"{name} must be two length-2 vectors")
    if np.max(np.abs(b @ b.conj().T - np.eye(2))) > 1e-10:
        raise DomainError(f"{name} is not orthonormal")
    return b


def classically_correlated(p, basis_a=None, basis_b=None) -> DensityMatrix:
    """``sum_ij p[i, j] |a_i><a_i| ⊗ |b_j><b_j|`` for single-qubit bases.

    Bases are given as two row vectors each and default to the computational
    basis.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (2, 2) or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise DomainError("probability table must be 2x2, nonnegative, summing to 1")
    a = _check_onb(np.eye(2) if basis_a is None else basis_a, "basis_a")
    b = _check_onb(np.eye(2) if basis_b is None else basis_b, "basis_b")
    m = sum(p[i, j] * np.kron(linalg.projector(a[i]), linalg.projector(b[j]))
            for i in range(2) for j in range(2))
    return DensityMatrix(m, 2)


def product_state(*factors) -> DensityMatrix:
    m = np.eye(1, dtype=complex)
    for f in factors:
        m = linalg.kron(m, f)
    return DensityMatrix.from_matrix(m)
