"""First-order radio dissipation model and exact debit-with-death accounting.

Transmit cost switches from the free-space d^2 amplifier to the multipath
d^4 amplifier at the crossover distance d0 = sqrt(eps_fs / eps_mp); receive
and aggregation costs are distance-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .layout import NodeState


@dataclass(frozen=True)
class RadioParams:
    """Radio energy constants. Defaults are the standard first-order-model
    values for a 4000-bit data message."""

    e_elec: float = 50e-9        # J/bit, transceiver electronics
    eps_fs: float = 10e-12       # J/bit/m^2, free-space amplifier
    eps_mp: float = 0.0013e-12   # J/bit/m^4, multipath amplifier
    e_da: float = 5e-9           # J/bit per fused message
    packet_bits: int = 4000      # bits per data message

    def __post_init__(self):
        for name in ("e_elec", "eps_fs", "eps_mp", "e_da"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.packet_bits < 1:
            raise ValueError(f"packet_bits must be >= 1, got {self.packet_bits}")

    @property
    def d0(self) -> float:
        return math.sqrt(self.eps_fs / self.eps_mp)


@dataclass(frozen=True)
class EnergyDebit:
    """Outcome of charging a node: what was asked, what the battery could
    pay, and whether the node died doing it. A fatal debit means the action
    failed and its message was not delivered."""

    requested: float
    paid: float
    fatal: bool


def d0_threshold(params: RadioParams) -> float:
    """Crossover distance between the d^2 and d^4 amplifier regimes."""
    return params.d0


def tx_energy(k_bits: int, distance_m: float, params: RadioParams) -> float:
    """Energy to transmit k bits over the given distance."""
    if distance_m < params.d0:
        amp = params.eps_fs * distance_m * distance_m
    else:
        d2 = distance_m * distance_m
        amp = params.eps_mp * d2 * d2
    return k_bits * (params.e_elec + amp)


def rx_energy(k_bits: int, params: RadioParams) -> float:
    """Energy to receive k bits (distance independent)."""
    return k_bits * params.e_elec


def aggregate_energy(k_bits: int, n_signals: int, params: RadioParams) -> float:
    """Energy to fuse n_signals messages of k bits each into one packet.
    The count includes the aggregator's own sensed message."""
    return params.e_da * k_bits * n_signals


def debit(node: NodeState, amount: float) -> EnergyDebit:
    """Charge a node's battery, clamping at zero.

    A node that cannot pay in full (or lands exactly on zero) dies: its
    residual is set to exactly 0 and alive to False. `paid` is the exact
    drop in stored residual, so summed debits conserve energy.
    """
    if not node.alive:
        raise ValueError(f"debit on dead node {node.id}")
    if amount < 0.0:
        raise ValueError(f"debit amount must be nonnegative, got {amount}")
    before = node.e_residual
    if amount >= before:
        node.e_residual = 0.0
        node.alive = False
        return EnergyDebit(requested=amount, paid=before, fatal=True)
    node.e_residual = before - amount
    return EnergyDebit(requested=amount, paid=before - node.e_residual, fatal=False)
