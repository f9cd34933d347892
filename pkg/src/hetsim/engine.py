"""Round-driven network lifecycle: election, advertisement, association,
steady-state data transfer, death accounting and metric capture.

One round is one complete setup + steady-state cycle. TDMA slots are
abstracted as ideal and collision free, so a member's frame either arrives
(both sides paid in full) or is lost to a mid-action death.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, replace

import numpy as np

from .config import ScenarioConfig
from .energy import RadioParams, aggregate_energy, debit, rx_energy, tx_energy
from .layout import FieldLayout, HeterogeneityConfig, NodeState, place_nodes, total_initial_energy
from .protocols import (
    ElectionContext,
    EstimationError,
    ProtocolKind,
    average_energy,
    elect_cluster_heads,
    estimate_R,
)


@dataclass(frozen=True)
class RoundMetrics:
    round: int
    alive: int
    dead: int
    ch_count: int
    energy_round: float
    energy_cum: float
    packets_bs_round: int
    packets_bs_cum: int
    packets_ch_round: int


@dataclass(frozen=True)
class RunSummary:
    first_death_round: int | None
    last_death_round: int | None
    stable_region: int | None
    unstable_region: int | None
    total_packets_bs: int
    rounds_simulated: int
    seed: int
    config: ScenarioConfig


@dataclass
class Scope:
    """One election domain: its alive nodes (id order) and the broadcast
    radius that covers it."""

    scope_id: int
    nodes: list[NodeState]
    radius: float


class NetworkState:
    """Mutable simulation state: the node population plus cached geometry
    and the cumulative counters the metrics echo."""

    def __init__(
        self,
        layout: FieldLayout,
        nodes: list[NodeState],
        radio: RadioParams,
        control_bits: int,
        cluster_average: bool = False,
    ):
        self.layout = layout
        self.nodes = nodes
        self.radio = radio
        self.control_bits = control_bits
        self.cluster_average = cluster_average
        self.energy_cum = 0.0
        self.packets_bs_cum = 0
        self.d_bs = {
            node.id: math.hypot(node.x - layout.bs_x, node.y - layout.bs_y) for node in nodes
        }
        self.field_radius = layout.bounds.circumradius()
        self.cluster_radius = [cell.circumradius() for cell in layout.clusters]
        # Initial per-cluster energy/population, for the cluster_average mode.
        self.cluster_e = [0.0] * layout.q
        self.cluster_n = [0] * layout.q
        for node in nodes:
            self.cluster_e[node.cluster_id] += node.e_init
            self.cluster_n[node.cluster_id] += 1

    def alive_nodes(self) -> list[NodeState]:
        return [node for node in self.nodes if node.alive]


def scope_of(kind: ProtocolKind, layout: FieldLayout, nodes: list[NodeState]) -> list[Scope]:
    """Election domains for a protocol: the whole network for LEACH and
    DEEC, one domain per static cluster (skipping empty ones) for Ad-LEACH."""
    alive = [node for node in nodes if node.alive]
    if kind is not ProtocolKind.ADLEACH:
        return [Scope(0, alive, layout.bounds.circumradius())]
    by_cluster: dict[int, list[NodeState]] = {}
    for node in alive:
        by_cluster.setdefault(node.cluster_id, []).append(node)
    return [
        Scope(ci, by_cluster[ci], layout.clusters[ci].circumradius())
        for ci in sorted(by_cluster)
    ]


def run_round(
    state: NetworkState,
    r: int,
    kind: ProtocolKind,
    ctx: ElectionContext,
    rng: np.random.Generator,
    audit: dict | None = None,
) -> RoundMetrics:
    """Execute one full round and return its metrics.

    Phase order per scope: election; cluster-head advertisements (control
    tx over the scope radius, control rx by every alive listener for each
    successful advertisement); association with the nearest alive head
    (control join exchange); steady state (one data frame per member, rx
    and aggregation at the head, one aggregate to the base station). A
    scope left without an alive head falls back to per-node direct-to-BS
    transmission. Any fatal debit loses the message being paid for.
    """
    radio = state.radio
    control_bits = state.control_bits
    packet_bits = radio.packet_bits
    energy_round = 0.0
    packets_bs = 0
    packets_ch = 0
    ch_count = 0
    direct_tx = 0
    paid_log = audit.setdefault("debits", []) if audit is not None else None

    def pay(node: NodeState, amount: float):
        nonlocal energy_round
        outcome = debit(node, amount)
        energy_round += outcome.paid
        if paid_log is not None:
            paid_log.append((node.id, outcome.paid))
        return outcome

    for node in state.nodes:
        node.is_ch_this_round = False

    scopes = scope_of(kind, state.layout, state.nodes)

    # Election happens everywhere first; the per-scope context only deviates
    # from the global one in Ad-LEACH's optional cluster_average mode.
    elected: dict[int, list[NodeState]] = {}
    for scope in scopes:
        scope_ctx = ctx
        if state.cluster_average and kind is ProtocolKind.ADLEACH:
            scope_ctx = replace(
                ctx,
                e_total=state.cluster_e[scope.scope_id],
                scope_size=state.cluster_n[scope.scope_id],
            )
            scope_ctx.e_avg = average_energy(r, scope_ctx)
        head_ids = elect_cluster_heads(scope.nodes, scope_ctx, kind, rng)
        ch_count += len(head_ids)
        heads = [node for node in scope.nodes if node.id in head_ids]
        for head in heads:
            head.is_ch_this_round = True
        elected[scope.scope_id] = heads

    rx_control = rx_energy(control_bits, radio)
    for scope in scopes:
        # Advertisement: a head that dies mid-broadcast delivers nothing and
        # is out of the round; listeners pay per advertisement actually made.
        live_heads = []
        for head in elected[scope.scope_id]:
            if not pay(head, tx_energy(control_bits, scope.radius, radio)).fatal:
                live_heads.append(head)
        if live_heads:
            listen_cost = len(live_heads) * rx_control
            for node in scope.nodes:
                if node.alive and not node.is_ch_this_round:
                    pay(node, listen_cost)

        if not live_heads:
            # No head survived setup: every alive node reports straight to
            # the base station this round.
            for node in scope.nodes:
                if node.alive:
                    direct_tx += 1
                    if not pay(node, tx_energy(packet_bits, state.d_bs[node.id], radio)).fatal:
                        packets_bs += 1
            continue

        # Association: members pick from the advertised roster; a head dying
        # during the join exchange keeps its members (who no longer have
        # anyone to deliver through this round).
        members = [node for node in scope.nodes if node.alive and not node.is_ch_this_round]
        clusters: dict[int, list[tuple[NodeState, float]]] = {head.id: [] for head in live_heads}
        for member in members:
            best_head = None
            best_dist = math.inf
            for head in live_heads:
                dist = math.hypot(member.x - head.x, member.y - head.y)
                if dist < best_dist:
                    best_dist = dist
                    best_head = head
            if pay(member, tx_energy(control_bits, best_dist, radio)).fatal:
                continue
            if best_head.alive:
                pay(best_head, rx_control)
            clusters[best_head.id].append((member, best_dist))

        # Steady state: one data frame per member, then aggregate-and-relay.
        for head in live_heads:
            received = 0
            for member, dist in clusters[head.id]:
                if not member.alive:
                    continue
                if pay(member, tx_energy(packet_bits, dist, radio)).fatal:
                    continue
                if head.alive and not pay(head, rx_energy(packet_bits, radio)).fatal:
                    received += 1
                    packets_ch += 1
            if not head.alive:
                continue
            if pay(head, aggregate_energy(packet_bits, received + 1, radio)).fatal:
                continue
            if not pay(head, tx_energy(packet_bits, state.d_bs[head.id], radio)).fatal:
                packets_bs += 1

    state.energy_cum += energy_round
    state.packets_bs_cum += packets_bs
    if audit is not None:
        audit["direct_tx"] = direct_tx
    alive = sum(1 for node in state.nodes if node.alive)
    return RoundMetrics(
        round=r,
        alive=alive,
        dead=len(state.nodes) - alive,
        ch_count=ch_count,
        energy_round=energy_round,
        energy_cum=state.energy_cum,
        packets_bs_round=packets_bs,
        packets_bs_cum=state.packets_bs_cum,
        packets_ch_round=packets_ch,
    )


def _make_context(config: ScenarioConfig, r: int, e_total: float, r_estimate: float) -> ElectionContext:
    ctx = ElectionContext(
        round=r,
        p_opt=config.p_opt,
        m=config.m,
        a=config.a,
        e_total=e_total,
        r_estimate=r_estimate,
        scope_size=config.n,
    )
    ctx.e_avg = average_energy(r, ctx)
    return ctx


def _bootstrap_R(
    config: ScenarioConfig,
    layout: FieldLayout,
    nodes: list[NodeState],
    e_total: float,
    rng: np.random.Generator,
) -> float:
    """Resolve the lifetime estimate R for a run.

    "ideal" is the optimistic bound the election rule steers toward:
    initial energy divided by the cost of one round in which every node
    reports straight to the base station. "measured" samples round-0
    consumption on a throwaway copy of the network (the ramp at r=0 does
    not depend on R, so any placeholder works).
    """
    if config.r_mode == "fixed":
        return config.r_fixed
    if config.r_mode == "analytic":
        return estimate_R(e_total, config.e_round)
    if config.r_mode == "ideal":
        bs_x, bs_y = layout.bs_x, layout.bs_y
        direct_round = math.fsum(
            tx_energy(config.radio.packet_bits, math.hypot(n.x - bs_x, n.y - bs_y), config.radio)
            for n in nodes
        )
        return estimate_R(e_total, direct_round)
    dry_state = NetworkState(
        layout, copy.deepcopy(nodes), config.radio, config.control_bits, config.cluster_average
    )
    ctx = _make_context(config, 0, e_total, r_estimate=1.0)
    metrics = run_round(dry_state, 0, config.protocol, ctx, rng)
    try:
        return estimate_R(e_total, metrics.energy_round)
    except EstimationError:
        return config.r_bootstrap


def run_simulation(
    config: ScenarioConfig,
    rng: np.random.Generator | None = None,
) -> tuple[list[RoundMetrics], RunSummary]:
    """Run one scenario to extinction or the round cap.

    Placement, the R-estimation dry run and the main loop use independent
    substreams spawned from the seed, so identical (config, seed) pairs
    reproduce bit-identical traces.
    """
    config.validate()
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    rng_place, rng_dry, rng_main = rng.spawn(3)

    layout = FieldLayout.create(config.field_w, config.field_h, config.q)
    het = HeterogeneityConfig(m=config.m, a=config.a, e0=config.e0)
    nodes = place_nodes(layout, config.n, het, rng_place)
    e_total = total_initial_energy(nodes)
    r_estimate = _bootstrap_R(config, layout, nodes, e_total, rng_dry)

    state = NetworkState(layout, nodes, config.radio, config.control_bits, config.cluster_average)
    trace: list[RoundMetrics] = []
    first_death: int | None = None
    last_death: int | None = None
    for r in range(config.max_rounds):
        if not any(node.alive for node in state.nodes):
            break
        ctx = _make_context(config, r, e_total, r_estimate)
        metrics = run_round(state, r, config.protocol, ctx, rng_main)
        trace.append(metrics)
        if first_death is None and metrics.dead > 0:
            first_death = r
        if last_death is None and metrics.dead == config.n:
            last_death = r
            break

    summary = RunSummary(
        first_death_round=first_death,
        last_death_round=last_death,
        stable_region=first_death,
        unstable_region=None if first_death is None or last_death is None else last_death - first_death,
        total_packets_bs=state.packets_bs_cum,
        rounds_simulated=len(trace),
        seed=config.seed,
        config=config,
    )
    return trace, summary
