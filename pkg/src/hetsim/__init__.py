"""hetsim: round-based simulator for clustering WSN routing protocols.

Simulates LEACH, DEEC and Ad-LEACH on a rectangular sensor field with a
first-order radio energy model, and records per-round alive/dead/energy/
packet metrics until the network dies or a round cap is hit.
"""

from .config import ConfigError, ScenarioConfig, parse_config, serialize_config
from .energy import EnergyDebit, RadioParams, aggregate_energy, d0_threshold, debit, rx_energy, tx_energy
from .layout import FieldLayout, HeterogeneityConfig, NodeState, Rect, partition_field, place_nodes, total_initial_energy
from .protocols import (
    ElectionContext,
    EstimationError,
    ProtocolKind,
    average_energy,
    elect_cluster_heads,
    election_threshold,
    estimate_R,
    leach_probability,
    reference_probability,
)
from .engine import NetworkState, RoundMetrics, RunSummary, run_round, run_simulation, scope_of

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "parse_config",
    "serialize_config",
    "EnergyDebit",
    "RadioParams",
    "aggregate_energy",
    "d0_threshold",
    "debit",
    "rx_energy",
    "tx_energy",
    "FieldLayout",
    "HeterogeneityConfig",
    "NodeState",
    "Rect",
    "partition_field",
    "place_nodes",
    "total_initial_energy",
    "ElectionContext",
    "EstimationError",
    "ProtocolKind",
    "average_energy",
    "elect_cluster_heads",
    "election_threshold",
    "estimate_R",
    "leach_probability",
    "reference_probability",
    "NetworkState",
    "RoundMetrics",
    "RunSummary",
    "run_round",
    "run_simulation",
    "scope_of",
]
