"""Remote preparation of Bob's two-qubit states and their outcome averages.

Alice holds a two-qubit Werner state and her half of a shared pure channel.
She projects the Werner qubits together with her channel qubits onto a fixed
orthonormal basis and announces the outcome ``i``. Bob is left with the
normalised state ``rho_B^i`` with probability ``N_i``; his averaged discord and
fidelity bounds are weighted by ``N_i``.

Register layout of the total state: Werner qubits ``0, 1``, then Alice's
channel qubits, then Bob's two qubits. The measured register is read in that
order, so a basis string like ``"0110"`` addresses (Werner 0, Werner 1,
channel 0, channel 1).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .correlations import quantum_discord, von_neumann_entropy
from .entanglement import FidelityBounds, fidelity_bounds
from .errors import BracketError, DomainError
from .states import Channel, ChannelSpec, DensityMatrix, channel, werner

ZERO_OUTCOME = 1e-12
PRESCAN_STEP = 0.02
BISECT_WIDTH = 1e-4
# Alice's input Werner state is built on |psi+>; see README "Conventions"
DEFAULT_BELL = "psi+"


class BasisName(str, enum.Enum):
    FOUR_QUBIT_16 = "FourQubit16"
    THREE_QUBIT_8 = "ThreeQubit8"


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    name: BasisName
    vectors: np.ndarray  # one basis vector per row

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def num_qubits(self) -> int:
        return linalg.num_qubits_of(self.vectors.shape[1])

    def orthonormality_residual(self) -> float:
        g = self.vectors.conj() @ self.vectors.T
        return float(np.max(np.abs(g - np.eye(len(self)))))

    def completeness_residual(self) -> float:
        s = self.vectors.T @ self.vectors.conj()
        return float(np.max(np.abs(s - np.eye(self.vectors.shape[1]))))


_FOUR_QUBIT_BASIS = [
    {"0001": 1, "0010": 1, "0100": 1, "1000": 1},
    {"0001": -1, "0010": 1, "0100": 1, "1000": -1},
    {"0001": -1, "0010": 1, "0100": -1, "1000": 1},
    {"0001": -1, "0010": -1, "0100": 1, "1000": 1},
    {"1110": 1, "1101": 1, "1011": 1, "0111": 1},
    {"1110": -1, "1101": 1, "1011": 1, "0111": -1},
    {"1110": -1, "1101": 1, "1011": -1, "0111": 1},
    {"1110": -1, "1101": -1, "1011": 1, "0111": 1},
    {"0000": 1, "0011": 1, "1100": 1, "1111": 1},
    {"0000": 1, "0011": 1, "1100": -1, "1111": -1},
    {"0000": 1, "0011": -1, "1100": 1, "1111": -1},
    {"0000": -1, "0011": 1, "1100": 1, "1111": -1},
    {"0101": 1, "0110": 1, "1010": 1, "1001": 1},
    {"0101": -1, "0110": -1, "1010": 1, "1001": 1},
    {"0101": 1, "0110": -1, "1010": -1, "1001": 1},
    {"0101": 1, "0110": -1, "1010": 1, "1001": -1},
]

_THREE_QUBIT_BASIS = [
    {"000": 1, "100": 1, "011": 1, "111": 1},
    {"000": 1, "100": 1, "011": -1, "111": -1},
    {"000": 1, "100": -1, "011": 1, "111": -1},
    {"000": -1, "100": 1, "011": 1, "111": -1},
    {"001": 1, "010": 1, "101": 1, "110": 1},
    {"001": 1, "010": -1, "101": -1, "110": 1},
    {"001": 1, "010": 1, "101": -1, "110": -1},
    {"001": -1, "010": 1, "101": -1, "110": 1},
]


def _basis_from_table(name: BasisName, table) -> MeasurementBasis:
    vecs = np.array([0.5 * sum(c * linalg.ket(bits) for bits, c in row.items()) for row in table])
    vecs.setflags(write=False)
    return MeasurementBasis(name, vecs)


def measurement_basis(ch_name: Channel | str) -> MeasurementBasis:
    """Alice's fixed joint-measurement basis for the given channel."""
    if Channel(ch_name) is Channel.W3:
        return _basis_from_table(BasisName.THREE_QUBIT_8, _THREE_QUBIT_BASIS)
    return _basis_from_table(BasisName.FOUR_QUBIT_16, _FOUR_QUBIT_BASIS)


def _spec(ch) -> ChannelSpec:
    return ch if isinstance(ch, ChannelSpec) else channel(ch)


def total_state(lam: float, ch, bell: str = DEFAULT_BELL) -> DensityMatrix:
    """``rho_A ⊗ |Psi><Psi|`` with the Werner qubits first."""
    spec = _spec(ch)
    m = linalg.kron(werner(lam, bell).matrix, spec.density().matrix)
    return DensityMatrix(m, 2 + spec.num_qubits)


def conditional_bob_state(rho_t, basis: MeasurementBasis, i: int):
    """Probability ``N_i`` and Bob's normalised state for outcome ``i``.

    Returns ``(N_i, None)`` when ``N_i <= 1e-12``.
    """
    rho_t = DensityMatrix.from_matrix(rho_t)
    if not 0 <= i < len(basis):
        raise IndexError(f"outcome index {i} out of range for {len(basis)} outcomes")
    k = basis.num_qubits
    n = rho_t.num_qubits
    bob_dim = 2 ** (n - k)
    m_i = linalg.kron(linalg.projector(basis.vectors[i]), np.eye(bob_dim))
    post = m_i @ rho_t.matrix @ linalg.dagger(m_i)
    prob = float(np.trace(post).real)
    if prob <= ZERO_OUTCOME:
        return prob, None
    bob = linalg.partial_trace(post, n, list(range(k, n))) / prob
    return prob, DensityMatrix(bob, n - k)


@dataclass(frozen=True)
class DiscordOptions:
    """Minimiser settings and the measured-qubit convention for Bob's states.

    ``measure_qubit`` is 0, 1 or ``"min"`` (smaller of the two choices).
    """

    measure_qubit: int | str = 1
    grid_theta: int = 32
    grid_phi: int = 64
    refine_tol: float = 1e-8

    def __post_init__(self):
        if self.measure_qubit not in (0, 1, "min"):
            raise DomainError(f"measure_qubit must be 0, 1 or 'min', got {self.measure_qubit!r}")
        if self.grid_theta < 2 or self.grid_phi < 1:
            raise DomainError("discord grid needs at least 2 polar and 1 azimuthal points")

    def discord(self, rho) -> float:
        qubits = (0, 1) if self.measure_qubit == "min" else (self.measure_qubit,)
        return min(quantum_discord(rho, q, self.grid_theta, self.grid_phi, self.refine_tol).value
                   for q in qubits)


DEFAULT_OPTIONS = DiscordOptions()


@dataclass(frozen=True)
class OutcomeRecord:
    index: int
    probability: float
    bob_state: DensityMatrix | None
    discord: float | None
    bounds: FidelityBounds | None

    @property
    def present(self) -> bool:
        return self.bob_state is not None


def outcomes(lam: float, ch, options: DiscordOptions = DEFAULT_OPTIONS,
             bell: str = DEFAULT_BELL, with_discord: bool = True) -> list[OutcomeRecord]:
    """One record per basis element; absent outcomes carry ``None`` fields."""
    spec = _spec(ch)
    rho_t = total_state(lam, spec, bell)
    basis = measurement_basis(spec.name)
    records = []
    for i in range(len(basis)):
        prob, bob = conditional_bob_state(rho_t, basis, i)
        if bob is None:
            records.append(OutcomeRecord(i, prob, None, None, None))
            continue
        d = options.discord(bob) if with_discord else None
        records.append(OutcomeRecord(i, prob, bob, d, fidelity_bounds(bob)))
    return records


def _weighted(records: Sequence[OutcomeRecord], value: Callable[[OutcomeRecord], float]) -> float:
    used = [r for r in records if r.present]
    total = sum(r.probability for r in used)
    return sum(r.probability * value(r) for r in used) / total


def average_discord(lam: float, ch, options: DiscordOptions = DEFAULT_OPTIONS,
                    bell: str = DEFAULT_BELL) -> float:
    """``sum N_i delta(rho_B^i) / sum N_i`` over outcomes with ``N_i > 1e-12``."""
    return _weighted(outcomes(lam, ch, options, bell), lambda r: r.discord)


def average_fidelity_bounds(lam: float, ch, bell: str = DEFAULT_BELL) -> tuple[float, float]:
    """Probability-weighted ``(lower, upper)`` fidelity bounds of Bob's states."""
    recs = outcomes(lam, ch, bell=bell, with_discord=False)
    return (_weighted(recs, lambda r: r.bounds.lower),
            _weighted(recs, lambda r: r.bounds.upper))


@dataclass(frozen=True)
class SweepRow:
    lam: float
    alice_discord: float
    avg_bob_discord: float
    alice_fidelity_upper: float
    avg_bob_fidelity_upper: float
    avg_bob_fidelity_lower: float
    outcome_count_used: int


def sweep_row(lam: float, ch, options: DiscordOptions = DEFAULT_OPTIONS,
              bell: str = DEFAULT_BELL) -> SweepRow:
    recs = outcomes(lam, ch, options, bell)
    alice = werner(lam, bell)
    return SweepRow(
        lam=float(lam),
        alice_discord=options.discord(alice),
        avg_bob_discord=_weighted(recs, lambda r: r.discord),
        alice_fidelity_upper=fidelity_bounds(alice).upper,
        avg_bob_fidelity_upper=_weighted(recs, lambda r: r.bounds.upper),
        avg_bob_fidelity_lower=_weighted(recs, lambda r: r.bounds.lower),
        outcome_count_used=sum(r.present for r in recs),
    )


def lambda_grid(lambda_min: float, lambda_max: float, steps: int) -> np.ndarray:
    if not 0.0 <= lambda_min < lambda_max <= 1.0:
        raise DomainError(f"need 0 <= lambda_min < lambda_max <= 1, got [{lambda_min}, {lambda_max}]")
    if steps < 2:
        raise DomainError(f"need at least 2 steps, got {steps}")
    return np.linspace(lambda_min, lambda_max, int(steps))


def sweep(ch, lambda_min: float = 0.0, lambda_max: float = 1.0, steps: int = 51,
          options: DiscordOptions = DEFAULT_OPTIONS, bell: str = DEFAULT_BELL) -> list[SweepRow]:
    """Uniform λ sweep, endpoints included."""
    return [sweep_row(lam, ch, options, bell) for lam in lambda_grid(lambda_min, lambda_max, steps)]


class Curve(str, enum.Enum):
    DISCORD = "discord"
    FIDELITY_UPPER = "fidelity_upper"


def crossover_gap(lam: float, ch, curve: Curve | str, options: DiscordOptions = DEFAULT_OPTIONS,
                  bell: str = DEFAULT_BELL) -> float:
    """Bob's average minus Alice's value for the selected curve."""
    if Curve(curve) is Curve.DISCORD:
        return average_discord(lam, ch, options, bell) - options.discord(werner(lam, bell))
    return average_fidelity_bounds(lam, ch, bell)[1] - fidelity_bounds(werner(lam, bell)).upper


def find_crossover(ch, curve: Curve | str, bracket: tuple[float, float] = (0.0, 1.0),
                   options: DiscordOptions = DEFAULT_OPTIONS, bell: str = DEFAULT_BELL) -> float:
    """λ where Bob's averaged curve meets Alice's.

    The bracket is pre-scanned in steps of 0.02; the sign change at largest λ
    is bisected to a width of 1e-4 and its midpoint returned.
    """
    lo, hi = map(float, bracket)
    if not 0.0 <= lo < hi <= 1.0:
        raise DomainError(f"bad bracket {bracket}")

    def gap(lam):
        return crossover_gap(lam, ch, curve, options, bell)

    n_steps = max(1, int(np.ceil((hi - lo) / PRESCAN_STEP - 1e-9)))
    grid = np.linspace(lo, hi, n_steps + 1)
    values = [gap(x) for x in grid]
    found = None
    for k in range(n_steps - 1, -1, -1):
        if values[k] == 0.0 and k > 0:
            return float(grid[k])
        if values[k] * values[k + 1] < 0 or values[k + 1] == 0.0:
            found = k
            break
    if found is None:
        raise BracketError(f"no crossing of the {Curve(curve).value} curves in [{lo}, {hi}]")
    a, b = grid[found], grid[found + 1]
    ga = values[found]
    while b - a > BISECT_WIDTH:
        mid = 0.5 * (a + b)
        gm = gap(mid)
        if gm == 0.0:
            return float(mid)
        if (gm < 0) == (ga < 0):
            a, ga = mid, gm
        else:
            b = mid
    return float(0.5 * (a + b))


def bob_entropies(lam: float, ch, bell: str = DEFAULT_BELL) -> list[float]:
    """Entropy of each present conditional state (diagnostics)."""
    return [von_neumann_entropy(r.bob_state) for r in outcomes(lam, ch, bell=bell, with_discord=False)
            if r.present]
