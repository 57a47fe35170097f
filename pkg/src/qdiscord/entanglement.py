"""Concurrence, negativity and teleportation-fidelity bounds of two-qubit states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError

_YY = np.kron(linalg.SIGMA_Y, linalg.SIGMA_Y)
ZERO_CONCURRENCE = 1e-12
# sqrt(1 - r^2) turns 1e-16 noise in r near 1 into ~1e-8; ratios this close count as 1
RATIO_SNAP = 1e-12


@dataclass(frozen=True)
class FidelityBounds:
    lower: float
    upper: float
    negativity: float
    concurrence: float


def _two_qubit(rho) -> np.ndarray:
    m = linalg.as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a two-qubit state, got dimension {m.shape[0]}")
    return 0.5 * (m + linalg.dagger(m))


def concurrence(rho) -> float:
    """Wootters concurrence ``max(0, mu1 - mu2 - mu3 - mu4)``.

    The ``mu_i`` are the square roots of the eigenvalues of
    ``sqrt(rho) (σy⊗σy) rho* (σy⊗σy) sqrt(rho) = A A^†`` with
    ``A = sqrt(rho) (σy⊗σy) sqrt(rho)*``, i.e. the singular values of ``A``.
    They are read off the Hermitian dilation ``[[0, A], [A^†, 0]]`` (spectrum
    ``±mu_i``) so that no square root is taken of rounding-level eigenvalues.
    """
    m = _two_qubit(rho)
    root = linalg.sqrtm_psd(m)
    a = root @ _YY @ root.conj()
    dilation = np.block([[np.zeros((4, 4)), a], [linalg.dagger(a), np.zeros((4, 4))]])
    mu = np.clip(linalg.hermitian_eigenvalues(dilation)[:3:-1], 0.0, None)
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def negativity(rho) -> float:
    """``||rho^T_B||_1 - 1``: twice the magnitude of the negative partial-transpose spectrum."""
    m = _two_qubit(rho)
    pt = linalg.partial_transpose(m, 2, [1])
    return max(0.0, linalg.trace_norm(pt) - 1.0)


def fidelity_bounds(rho) -> FidelityBounds:
    """Lower and upper bounds on the optimal teleportation fidelity of ``rho`` as a channel.

    ``upper = (1 + N) / 2`` and ``lower = (1 + N / (1 + sqrt(1 - (N/C)^2))) / 2``.
    A separable state (``C`` below 1e-12) gets the classical value 1/2 for both.
    """
    n = negativity(rho)
    c = concurrence(rho)
    if c < ZERO_CONCURRENCE:
        return FidelityBounds(0.5, 0.5, n, c)
    r = min(max(n / c, 0.0), 1.0)
    if r > 1.0 - RATIO_SNAP:
        r = 1.0
    lower = 0.5 * (1.0 + n / (1.0 + np.sqrt(1.0 - r * r)))
    upper = 0.5 * (1.0 + n)
    return FidelityBounds(float(lower), float(upper), n, c)
