"""Entropic correlations and quantum discord of two-qubit states.

Discord is ``I(rho) - max J``, the maximum taken over rank-1 projective
measurements ``(I ± n·σ)/2`` on one qubit, with ``n`` the Bloch vector of a
:class:`MeasurementDirection`. All logarithms are base 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize

from . import linalg
from .errors import ContractError, DimensionError, QubitIndexError
from .states import STATE_TOL

ZERO_EIG = 1e-12
ZERO_PROB = 1e-12


class MeasurementDirection(NamedTuple):
    theta: float
    phi: float

    @property
    def bloch(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    @classmethod
    def canonical(cls, theta: float, phi: float) -> "MeasurementDirection":
        """Fold arbitrary angles into ``theta in [0, pi]``, ``phi in [0, 2pi)``."""
        theta = float(np.mod(theta, 2 * np.pi))
        phi = float(phi)
        if theta > np.pi:
            theta = 2 * np.pi - theta
            phi += np.pi
        phi = float(np.mod(phi, 2 * np.pi))
        if phi >= 2 * np.pi:
            phi = 0.0
        return cls(theta, phi)


Z_DIRECTION = MeasurementDirection(0.0, 0.0)


@dataclass(frozen=True)
class DiscordResult:
    value: float
    argmin: MeasurementDirection
    measured_subsystem: int

    def __float__(self) -> float:
        return self.value


def _checked_spectrum(rho) -> np.ndarray:
    m = linalg.as_matrix(rho)
    w = linalg.hermitian_eigenvalues(m)
    if abs(np.trace(m) - 1.0) > STATE_TOL or w[0] < -STATE_TOL:
        raise ContractError(
            f"not a valid density matrix (trace {np.trace(m).real:.6g}, min eigenvalue {w[0]:.3e})")
    return w


def shannon_entropy(p) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    p = p[p > ZERO_EIG]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho) -> float:
    """Entropy in bits of a density matrix."""
    return max(shannon_entropy(_checked_spectrum(rho)), 0.0)


def _check_measured(measured: int) -> int:
    if measured not in (0, 1):
        raise QubitIndexError(f"measured qubit must be 0 or 1, got {measured}")
    return measured


def _two_qubit(rho) -> np.ndarray:
    m = linalg.as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError(f"expected a two-qubit state, got dimension {m.shape[0]}")
    return m


def mutual_information(rho, subsystem_a: Sequence[int] | None = None) -> float:
    """``S(A) + S(B) - S(AB)`` for the cut between ``subsystem_a`` and the rest.

    ``subsystem_a`` defaults to the first half of the register.
    """
    m = linalg.as_matrix(rho)
    n = linalg.num_qubits_of(m.shape[0])
    a = list(range(n // 2)) if subsystem_a is None else list(subsystem_a)
    b = [q for q in range(n) if q not in a]
    if not a or not b:
        raise DimensionError("both sides of the bipartition must be non-empty")
    s_ab = von_neumann_entropy(m)
    s_a = von_neumann_entropy(linalg.partial_trace(m, n, a))
    s_b = von_neumann_entropy(linalg.partial_trace(m, n, b))
    return s_a + s_b - s_ab


class _MeasuredEntropy:
    """Vectorised ``S(A | Π^B)`` as a function of measurement angles.

    With ``Π± = (I ± n·σ)/2`` on the measured qubit, the unnormalised
    conditional states are ``(ρ_A ± Σ_k n_k T_k) / 2`` where
    ``T_k = Tr_B[(I ⊗ σ_k) ρ]``, so only 2x2 algebra remains per direction.
    """

    def __init__(self, rho: np.ndarray, measured: int):
        _check_measured(measured)
        r = rho.reshape(2, 2, 2, 2)
        if measured == 0:
            r = r.transpose(1, 0, 3, 2)
        # r[a, b, a', b'] with b the measured qubit
        self.rho_a = np.einsum("abcb->ac", r)
        self.t = np.einsum("kdb,abcd->kac", linalg.PAULIS, r)

    def __call__(self, theta, phi) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        st = np.sin(theta)
        n = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
        nt = np.tensordot(n, self.t, axes=([-1], [0]))
        total = np.zeros(theta.shape)
        for sign in (1.0, -1.0):
            blk = 0.5 * (self.rho_a + sign * nt)
            a = blk[..., 0, 0].real
            d = blk[..., 1, 1].real
            p = a + d
            rad = np.sqrt(0.25 * (a - d) ** 2 + np.abs(blk[..., 0, 1]) ** 2)
            # p * S(blk / p) = -sum l log l + p log p over eigenvalues l of blk
            term = np.zeros_like(p)
            for lam in (0.5 * p + rad, 0.5 * p - rad):
                safe = np.where(lam > ZERO_EIG, lam, 1.0)
                term -= np.where(lam > ZERO_EIG, lam * np.log2(safe), 0.0)
            safe_p = np.where(p > ZERO_PROB, p, 1.0)
            term += np.where(p > ZERO_PROB, p * np.log2(safe_p), 0.0)
            total += np.where(p > ZERO_PROB, term, 0.0)
        return np.maximum(total, 0.0)


def conditional_entropy_measured(rho, direction: MeasurementDirection, measured: int = 1) -> float:
    """``S(A | Π^B) = Σ p_i S(ρ_i)`` after measuring qubit ``measured`` along ``direction``."""
    m = _two_qubit(rho)
    _checked_spectrum(m)
    f = _MeasuredEntropy(0.5 * (m + linalg.dagger(m)), measured)
    return float(f(direction[0], direction[1]))


def classical_correlation(rho, direction: MeasurementDirection, measured: int = 1) -> float:
    """``J = S(ρ_A) - S(A | Π^B)`` where A is the unmeasured qubit."""
    m = _two_qubit(rho)
    s_a = von_neumann_entropy(linalg.partial_trace(m, 2, [1 - _check_measured(measured)]))
    return s_a - conditional_entropy_measured(m, direction, measured)


def _discord_parts(rho, measured: int):
    _check_measured(measured)
    m = _two_qubit(rho)
    m = 0.5 * (m + linalg.dagger(m))
    s_ab = von_neumann_entropy(m)
    s_b = von_neumann_entropy(linalg.partial_trace(m, 2, [measured]))
    # I - J = S(B) - S(AB) + S(A|Π^B)
    return s_b - s_ab, _MeasuredEntropy(m, measured)


def quantum_discord(rho, measured: int = 1, grid_theta: int = 32, grid_phi: int = 64,
                    refine_tol: float = 1e-8, n_seeds: int = 5) -> DiscordResult:
    """Discord of a two-qubit state with qubit ``measured`` measured.

    A ``grid_theta x grid_phi`` scan seeds Nelder-Mead refinements from the
    ``n_seeds`` best grid points; the lowest conditional entropy found wins.
    """
    offset, f = _discord_parts(rho, measured)
    thetas = np.linspace(0.0, np.pi, grid_theta)
    phis = np.arange(grid_phi) * (2 * np.pi / grid_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = f(tt, pp).ravel()
    # stable sort on theta-major order gives the lexicographic tie-break
    order = np.argsort(vals, kind="stable")[:n_seeds]
    best_val = float(vals[order[0]])
    best_dir = (float(tt.flat[order[0]]), float(pp.flat[order[0]]))

    def objective(x):
        return float(f(x[0], x[1]))

    for k in order:
        x0 = np.array([tt.flat[k], pp.flat[k]])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-6, "fatol": refine_tol, "maxiter": 2000})
        cand = MeasurementDirection.canonical(*res.x)
        if res.fun < best_val or (res.fun == best_val and cand < best_dir):
            best_val, best_dir = float(res.fun), tuple(cand)
    return DiscordResult(max(offset + best_val, 0.0), MeasurementDirection.canonical(*best_dir), measured)


def brute_force_discord(rho, measured: int = 1, grid_n: int = 128) -> float:
    """Discord from an exhaustive ``grid_n x 2 grid_n`` angle grid, no refinement.

    Independent check on :func:`quantum_discord`; it can only overestimate.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    _check_measured(measured)
    m = _two_qubit(rho)
    m = 0.5 * (m + linalg.dagger(m))
    s_ab = von_neumann_entropy(m)
    s_b = von_neumann_entropy(linalg.partial_trace(m, 2, [measured]))
    thetas = np.linspace(0.0, np.pi, grid_n)
    phis = np.arange(2 * grid_n) * (np.pi / grid_n)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    st = np.sin(tt.ravel())
    nvec = np.stack([st * np.cos(pp.ravel()), st * np.sin(pp.ravel()), np.cos(tt.ravel())], axis=-1)
    ns = np.einsum("nk,kij->nij", nvec, linalg.PAULIS)
    # explicit projectors and a batched eigensolver, sharing nothing with _MeasuredEntropy
    r = m.reshape(2, 2, 2, 2)
    if measured == 0:
        r = r.transpose(1, 0, 3, 2)
    cond = np.zeros(len(nvec))
    for sign in (1, -1):
        proj = 0.5 * (linalg.I2 + sign * ns)
        # Tr_B[(I ⊗ P) ρ (I ⊗ P)] = Σ P[d, b] ρ[a, b, c, e] P[e, d]
        red = np.einsum("ndb,abce,ned->nac", proj, r, proj)
        p = np.einsum("naa->n", red).real
        ok = p > ZERO_PROB
        w = np.linalg.eigvalsh(red[ok] / p[ok, None, None])
        with np.errstate(divide="ignore", invalid="ignore"):
            ent = -np.sum(np.where(w > ZERO_EIG, w * np.log2(np.where(w > ZERO_EIG, w, 1.0)), 0.0), axis=1)
        cond[ok] += p[ok] * ent
    return max(s_b - s_ab + float(cond.min()), 0.0)
