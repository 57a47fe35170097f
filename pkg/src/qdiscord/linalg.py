"""Dense complex matrix kernel for small qubit registers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Qubit ordering is
big-endian throughout the package: qubit 0 is the most significant bit of a
computational-basis index, so ``|q0 q1 ... q(n-1)>`` maps to the integer whose
binary digits read ``q0 q1 ... q(n-1)`` from left to right.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ContractError, DimensionError, QubitIndexError

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
MAX_DIM = 4096

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite square complex matrix."""
    a = np.asarray(getattr(m, "matrix", m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ContractError("matrix has non-finite entries")
    return a


def num_qubits_of(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def ket(bits: str) -> np.ndarray:
    """Computational-basis column vector for a bit string such as ``"0110"``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` of two square matrices."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise DimensionError(
            f"product dimension {a.shape[0] * b.shape[0]} exceeds {MAX_DIM}")
    return np.kron(a, b)


def _check_qubits(indices: Sequence[int], n: int) -> list[int]:
    idx = [int(q) for q in indices]
    if len(set(idx)) != len(idx):
        raise QubitIndexError(f"duplicate qubit indices in {idx}")
    for q in idx:
        if not 0 <= q < n:
            raise QubitIndexError(f"qubit index {q} out of range for {n} qubits")
    return idx


def _register(rho, num_qubits: int) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != 2 ** num_qubits:
        raise DimensionError(
            f"matrix of dimension {rho.shape[0]} is not a {num_qubits}-qubit operator")
    return rho


def partial_trace(rho, num_qubits: int, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not listed in ``keep``.

    The kept qubits appear in the output in the order given by ``keep``.
    """
    rho = _register(rho, num_qubits)
    keep = _check_qubits(keep, num_qubits)
    n = num_qubits
    drop = [q for q in range(n) if q not in keep]
    # row axes 0..n-1, column axes n..2n-1; summed axes share a label
    labels_in = list(range(2 * n))
    for q in drop:
        labels_in[n + q] = q
    labels_out = keep + [n + q for q in keep]
    out = np.einsum(rho.reshape([2] * (2 * n)), labels_in, labels_out)
    d = 2 ** len(keep)
    return out.reshape(d, d)


def partial_transpose(rho, num_qubits: int, transposed_subsystem: Sequence[int]) -> np.ndarray:
    """Transpose the listed qubits in the computational basis."""
    rho = _register(rho, num_qubits)
    sub = _check_qubits(transposed_subsystem, num_qubits)
    n = num_qubits
    axes = list(range(2 * n))
    for q in sub:
        axes[q], axes[n + q] = axes[n + q], axes[q]
    return rho.reshape([2] * (2 * n)).transpose(axes).reshape(rho.shape)


def hermiticity_residual(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - dagger(m))))


def _require_hermitian(m) -> np.ndarray:
    m = as_matrix(m)
    res = hermiticity_residual(m)
    if res > HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian (residual {res:.3e})")
    return 0.5 * (m + dagger(m))


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def jacobi_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies a real plane rotation that zeroes it, so every step is unitary.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    v : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    a = _require_hermitian(m).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        if _off_norm(a) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # u = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = a[:, [p, q]] @ u
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = dagger(u) @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[q, p] = a[p, q] = 0.0
                vc = v[:, [p, q]] @ u
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    return jacobi_eigh(m)[0]


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def sqrtm_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues within 1e-10 below zero are treated as zero, as are positive
    ones under ``1e-14`` times the largest, whose square roots would be pure
    rounding noise of order 1e-8.
    """
    w, v = jacobi_eigh(m)
    if w[0] < -HERMITIAN_TOL:
        raise ContractError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    w = np.where(w < 1e-14 * max(1.0, abs(w[-1])), 0.0, w)
    s = np.sqrt(w)
    return (v * s) @ dagger(v)
