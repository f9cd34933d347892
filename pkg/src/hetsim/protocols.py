"""Cluster-head election kernels for LEACH, DEEC and Ad-LEACH.

LEACH elects with a flat probability p_opt. DEEC and Ad-LEACH weight each
node's probability by residual energy against an estimated network average
that ramps down linearly over the estimated lifetime R; advanced nodes get
a (1+a) boost. Ad-LEACH runs the same rule independently per static cluster.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .layout import NodeState

# Floor for the estimated average energy; keeps thresholds finite once the
# round index passes the lifetime estimate R.
E_AVG_FLOOR = 1e-9


class ProtocolKind(Enum):
    LEACH = "leach"
    DEEC = "deec"
    ADLEACH = "adleach"

    @classmethod
    def from_name(cls, name: str) -> "ProtocolKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown protocol {name!r} (valid: {valid})") from None


class EstimationError(ValueError):
    """Lifetime estimate is undefined for nonpositive per-round energy."""


@dataclass
class ElectionContext:
    """Per-round inputs to the election: round index, tuning constants and
    the network-level energy estimates."""

    round: int
    p_opt: float
    m: float
    a: float
    e_total: float       # initial energy of the estimation scope (J)
    r_estimate: float    # estimated lifetime R in rounds
    scope_size: int      # node count of the estimation scope
    e_avg: float = 0.0   # estimated average residual energy at `round`


def average_energy(r: int, ctx: ElectionContext) -> float:
    """Estimated per-node average energy at round r: a linear ramp from
    e_total/scope_size down to zero at r == R, floored to stay positive."""
    value = ctx.e_total * (1.0 - r / ctx.r_estimate) / ctx.scope_size
    return max(value, E_AVG_FLOOR)


def estimate_R(e_total: float, e_round: float) -> float:
    """Estimated network lifetime in rounds given per-round consumption."""
    if e_round <= 0.0:
        raise EstimationError(f"per-round energy must be positive, got {e_round}")
    return e_total / e_round


def leach_probability(node: NodeState, p_opt: float) -> float:
    """LEACH reference probability: p_opt for every alive node, blind to
    residual energy and node kind."""
    if not node.alive:
        raise ValueError(f"election probability for dead node {node.id}")
    return p_opt


def reference_probability(node: NodeState, ctx: ElectionContext) -> float:
    """Energy-weighted reference probability for DEEC-style election.

    Normal nodes get p_opt * E_i / ((1+a*m) * e_avg); advanced nodes the
    same scaled by (1+a). Clamped to at most 1.
    """
    if not node.alive:
        raise ValueError(f"election probability for dead node {node.id}")
    base = ctx.p_opt * node.e_residual / ((1.0 + ctx.a * ctx.m) * ctx.e_avg)
    p = base * (1.0 + ctx.a) if node.advanced else base
    return min(p, 1.0)


def election_threshold(p_i: float, r: int, eligible: bool) -> float:
    """Rotation threshold T: 0 for ineligible nodes, otherwise
    p / (1 - p * (r mod round(1/p))), clamped to 1."""
    if not eligible:
        return 0.0
    epoch = round(1.0 / p_i)
    denom = 1.0 - p_i * (r % epoch)
    if denom <= p_i:
        return 1.0
    return p_i / denom


def elect_cluster_heads(
    scope: list[NodeState],
    ctx: ElectionContext,
    kind: ProtocolKind,
    rng: np.random.Generator,
) -> set[int]:
    """Run one round of self-election over an eligible scope.

    Each node draws u ~ U[0,1) and becomes cluster head iff u < T. Elected
    nodes sit out the remainder of the current epoch of round(1/p_i)
    rounds, with p_i frozen at its election-time value, so each node serves
    about once per epoch. (Ineligibility ends at the epoch boundary rather
    than a full epoch after service: the boundary keeps the rotation in
    step with the r-mod-epoch term of the threshold. A flat offset would
    drive every node of a homogeneous population into the same forced
    election round and leave all other rounds headless.)
    """
    r = ctx.round
    heads: set[int] = set()
    draws = rng.random(len(scope))
    for node, u in zip(scope, draws):
        if kind is ProtocolKind.LEACH:
            p_i = leach_probability(node, ctx.p_opt)
        else:
            p_i = reference_probability(node, ctx)
        threshold = election_threshold(p_i, r, r >= node.ineligible_until)
        if u < threshold:
            heads.add(node.id)
            epoch = round(1.0 / p_i)
            node.ineligible_until = (r // epoch + 1) * epoch
    return heads
