"""Quantum discord and teleportation-fidelity bounds of remotely prepared two-qubit states."""
from .correlations import (DiscordResult, MeasurementDirection, brute_force_discord,
                           classical_correlation, conditional_entropy_measured,
                           mutual_information, quantum_discord, von_neumann_entropy)
from .entanglement import FidelityBounds, concurrence, fidelity_bounds, negativity
from .protocol import (Curve, DiscordOptions, MeasurementBasis, OutcomeRecord, SweepRow,
                       average_discord, average_fidelity_bounds, conditional_bob_state,
                       find_crossover, measurement_basis, sweep, total_state)
from .states import (Channel, ChannelSpec, DensityMatrix, channel, classically_correlated,
                     validate, werner)

__version__ = "0.1.0"
