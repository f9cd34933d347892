import math

import numpy as np
import pytest

from hetsim.config import parse_config
from hetsim.energy import RadioParams, aggregate_energy, rx_energy, tx_energy
from hetsim.engine import NetworkState, run_round, run_simulation, scope_of
from hetsim.layout import FieldLayout, NodeState
from hetsim.protocols import ElectionContext, ProtocolKind, average_energy


def make_network(positions, layout=None, residual=0.5, radio=None, ineligible_until=0):
    layout = layout or FieldLayout.create(100, 50, 4)
    nodes = [
        NodeState(
            id=i, x=x, y=y, advanced=False, e_init=residual, e_residual=residual,
            cluster_id=layout.cluster_of(x, y), ineligible_until=ineligible_until,
        )
        for i, (x, y) in enumerate(positions)
    ]
    return NetworkState(layout, nodes, radio or RadioParams(), control_bits=200)


def make_ctx(state, r=0, p_opt=0.1, r_estimate=1000.0):
    e_total = math.fsum(n.e_init for n in state.nodes)
    ctx = ElectionContext(
        round=r, p_opt=p_opt, m=0.0, a=0.0, e_total=e_total,
        r_estimate=r_estimate, scope_size=len(state.nodes),
    )
    ctx.e_avg = average_energy(r, ctx)
    return ctx


class TestScopeOf:
    def test_adleach_one_scope_per_cluster(self):
        state = make_network([(10, 10), (60, 10), (10, 40), (60, 40), (70, 45)])
        scopes = scope_of(ProtocolKind.ADLEACH, state.layout, state.nodes)
        assert len(scopes) == 4

    def test_leach_single_scope(self):
        state = make_network([(10, 10), (60, 10), (10, 40), (60, 40)])
        scopes = scope_of(ProtocolKind.LEACH, state.layout, state.nodes)
        assert len(scopes) == 1
        assert len(scopes[0].nodes) == 4

    def test_dead_cluster_is_skipped(self):
        state = make_network([(10, 10), (60, 10), (10, 40), (60, 40)])
        state.nodes[0].alive = False
        scopes = scope_of(ProtocolKind.ADLEACH, state.layout, state.nodes)
        assert len(scopes) == 3

    def test_adleach_radius_is_cluster_radius(self):
        state = make_network([(10, 10)])
        scopes = scope_of(ProtocolKind.ADLEACH, state.layout, state.nodes)
        assert scopes[0].radius == pytest.approx(math.hypot(50, 25) / 2)


class TestRunRound:
    def test_single_survivor_cluster_head(self):
        # One alive node, forced election (p_opt=1): pays advertisement,
        # self-aggregation and the report to the base station.
        state = make_network([(20.0, 10.0)])
        radio = state.radio
        d_bs = math.hypot(20 - 50, 10 - 25)
        metrics = run_round(state, 0, ProtocolKind.LEACH, make_ctx(state, p_opt=1.0), np.random.default_rng(0))
        expected = (
            tx_energy(200, state.field_radius, radio)
            + aggregate_energy(radio.packet_bits, 1, radio)
            + tx_energy(radio.packet_bits, d_bs, radio)
        )
        assert metrics.ch_count == 1
        assert metrics.packets_bs_round == 1
        assert metrics.packets_ch_round == 0
        assert metrics.energy_round == pytest.approx(expected, rel=1e-12)

    def test_zero_heads_falls_back_to_direct(self):
        positions = [(5, 5), (15, 8), (25, 12), (35, 18), (45, 22)]
        state = make_network(positions, ineligible_until=10**9)
        audit = {}
        metrics = run_round(state, 0, ProtocolKind.LEACH, make_ctx(state), np.random.default_rng(0), audit=audit)
        expected = math.fsum(
            tx_energy(state.radio.packet_bits, state.d_bs[n.id], state.radio) for n in state.nodes
        )
        assert metrics.ch_count == 0
        assert audit["direct_tx"] == 5
        assert metrics.packets_bs_round == 5
        assert metrics.energy_round == pytest.approx(expected, rel=1e-12)

    def test_round_energy_matches_residual_deltas(self):
        cfg = parse_config(overrides={"protocol": "deec", "seed": 5, "max_rounds": 200})
        rng = np.random.default_rng(5)
        layout = FieldLayout.create(cfg.field_w, cfg.field_h, cfg.q)
        from hetsim.layout import HeterogeneityConfig, place_nodes

        nodes = place_nodes(layout, cfg.n, HeterogeneityConfig(cfg.m, cfg.a, cfg.e0), rng)
        state = NetworkState(layout, nodes, cfg.radio, cfg.control_bits)
        e_total = math.fsum(n.e_init for n in nodes)
        for r in range(200):
            before = [n.e_residual for n in state.nodes]
            ctx = ElectionContext(round=r, p_opt=cfg.p_opt, m=cfg.m, a=cfg.a,
                                  e_total=e_total, r_estimate=250.0, scope_size=cfg.n)
            ctx.e_avg = average_energy(r, ctx)
            audit = {}
            metrics = run_round(state, r, ProtocolKind.DEEC, ctx, rng, audit=audit)
            deltas = math.fsum(b - n.e_residual for b, n in zip(before, state.nodes))
            assert metrics.energy_round == pytest.approx(deltas, rel=1e-12)
            assert metrics.energy_round == pytest.approx(
                math.fsum(p for _, p in audit["debits"]), rel=1e-12
            )
            assert metrics.packets_bs_round <= metrics.ch_count + audit["direct_tx"]


class TestRunSimulation:
    def test_zero_round_cap(self):
        cfg = parse_config(overrides={"max_rounds": 0})
        trace, summary = run_simulation(cfg)
        assert trace == []
        assert summary.rounds_simulated == 0
        assert summary.first_death_round is None

    def test_determinism_bit_identical(self):
        cfg = parse_config(overrides={"protocol": "adleach", "seed": 9, "max_rounds": 400})
        trace_a, summary_a = run_simulation(cfg)
        trace_b, summary_b = run_simulation(cfg)
        assert trace_a == trace_b
        assert summary_a == summary_b

    def test_seed_changes_trace(self):
        base = parse_config(overrides={"protocol": "leach", "seed": 1, "max_rounds": 50})
        other = parse_config(overrides={"protocol": "leach", "seed": 2, "max_rounds": 50})
        assert run_simulation(base)[0] != run_simulation(other)[0]

    @pytest.mark.parametrize("protocol", ["leach", "deec", "adleach"])
    def test_full_run_invariants(self, protocol):
        # Tiny batteries so the run reaches extinction quickly.
        cfg = parse_config(overrides={"protocol": protocol, "seed": 3, "e0": 0.01, "n": 40})
        trace, summary = run_simulation(cfg)
        n = cfg.n
        assert summary.last_death_round is not None
        assert trace[-1].dead == n
        previous_dead = 0
        previous_cum = 0.0
        for metrics in trace:
            assert metrics.alive + metrics.dead == n
            assert metrics.dead >= previous_dead
            assert metrics.energy_cum >= previous_cum
            previous_dead = metrics.dead
            previous_cum = metrics.energy_cum
        e_total = n * cfg.e0
        spent = math.fsum(m.energy_round for m in trace)
        assert spent == pytest.approx(e_total, rel=1e-9)
        assert summary.stable_region == summary.first_death_round
        assert summary.unstable_region == summary.last_death_round - summary.first_death_round
        assert summary.total_packets_bs == trace[-1].packets_bs_cum

    def test_conservation_with_survivors(self):
        cfg = parse_config(overrides={"protocol": "deec", "seed": 4, "max_rounds": 700})
        trace, _ = run_simulation(cfg)
        spent = math.fsum(m.energy_round for m in trace)
        assert spent == pytest.approx(trace[-1].energy_cum, rel=1e-9)
        assert trace[-1].energy_cum <= 50.0 * (1 + 1e-12)

    @pytest.mark.parametrize("overrides", [
        {"r_mode": "measured"},
        {"r_mode": "ideal"},
        {"r_mode": "fixed", "r_fixed": 500.0},
        {"r_mode": "analytic", "e_round": 0.05},
        {"cluster_average": True, "protocol": "adleach"},
    ])
    def test_r_modes_run_and_are_deterministic(self, overrides):
        cfg = parse_config(overrides={"protocol": "deec", "seed": 2, "max_rounds": 120, **overrides})
        assert run_simulation(cfg)[0] == run_simulation(cfg)[0]

    def test_invalid_config_rejected_before_running(self):
        from hetsim.config import ConfigError, ScenarioConfig

        bad = ScenarioConfig(p_opt=0.0)
        with pytest.raises(ConfigError):
            run_simulation(bad)


class TestHeterogeneousRuns:
    def test_advanced_nodes_extend_lifetime(self):
        flat = parse_config(overrides={"protocol": "deec", "seed": 6, "e0": 0.05, "n": 60, "a": 0.0})
        boosted = parse_config(overrides={"protocol": "deec", "seed": 6, "e0": 0.05, "n": 60, "a": 3.0})
        _, flat_summary = run_simulation(flat)
        _, boosted_summary = run_simulation(boosted)
        assert boosted_summary.last_death_round > flat_summary.last_death_round
