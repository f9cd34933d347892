"""Run artifacts: per-round CSV traces, JSON run summaries, sweep summary.

The CSV header and field formatting are frozen; downstream tooling parses
them byte-for-byte.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import IO

from .config import ScenarioConfig, config_to_dict
from .engine import RoundMetrics, RunSummary, run_simulation

CSV_HEADER = "round,alive,dead,ch_count,energy_round_j,energy_cum_j,packets_bs_round,packets_bs_cum,packets_ch_round"

SWEEP_HEADER = "protocol,seed,m,a,first_death_round,last_death_round,stable_region,unstable_region,total_packets_bs,rounds_simulated"


def emit_round_csv(trace: list[RoundMetrics], sink: IO[str]) -> None:
    """Write the frozen per-round CSV: energies at 9 significant digits,
    newline-terminated rows."""
    sink.write(CSV_HEADER + "\n")
    for row in trace:
        sink.write(
            f"{row.round},{row.alive},{row.dead},{row.ch_count},"
            f"{row.energy_round:.9g},{row.energy_cum:.9g},"
            f"{row.packets_bs_round},{row.packets_bs_cum},{row.packets_ch_round}\n"
        )


def summary_to_json(summary: RunSummary) -> str:
    """Self-describing JSON for one run: lifetime statistics plus a full
    config echo."""
    payload = {
        "first_death_round": summary.first_death_round,
        "last_death_round": summary.last_death_round,
        "stable_region": summary.stable_region,
        "unstable_region": summary.unstable_region,
        "total_packets_bs": summary.total_packets_bs,
        "rounds_simulated": summary.rounds_simulated,
        "seed": summary.seed,
        "config": config_to_dict(summary.config),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cell_basename(config: ScenarioConfig, tag_grid: bool) -> str:
    """Output basename for one sweep cell. Grid sweeps over (m, a) get the
    grid point in the name so cells cannot collide."""
    name = config.protocol.value
    if tag_grid:
        name += f"_m{config.m:g}_a{config.a:g}"
    return f"{name}_{config.seed}"


def run_and_write(args: tuple[ScenarioConfig, str, str]) -> dict:
    """Worker for one sweep cell: simulate, write <base>.csv / <base>.json,
    return the summary row."""
    config, outdir, basename = args
    try:
        trace, summary = run_simulation(config)
        out = Path(outdir)
        with open(out / f"{basename}.csv", "w", newline="\n") as sink:
            emit_round_csv(trace, sink)
        (out / f"{basename}.json").write_text(summary_to_json(summary))
    except Exception as exc:
        raise RuntimeError(f"cell {basename}: {exc}") from exc
    return {
        "protocol": config.protocol.value,
        "seed": config.seed,
        "m": config.m,
        "a": config.a,
        "first_death_round": summary.first_death_round,
        "last_death_round": summary.last_death_round,
        "stable_region": summary.stable_region,
        "unstable_region": summary.unstable_region,
        "total_packets_bs": summary.total_packets_bs,
        "rounds_simulated": summary.rounds_simulated,
    }


def write_sweep_summary(rows: list[dict], sink: IO[str]) -> None:
    """One row per sweep cell, in (protocol, m, a, seed) order."""
    sink.write(SWEEP_HEADER + "\n")
    for row in sorted(rows, key=lambda r: (r["protocol"], r["m"], r["a"], r["seed"])):
        cells = [
            row["protocol"],
            str(row["seed"]),
            f"{row['m']:.9g}",
            f"{row['a']:.9g}",
            _opt(row["first_death_round"]),
            _opt(row["last_death_round"]),
            _opt(row["stable_region"]),
            _opt(row["unstable_region"]),
            str(row["total_packets_bs"]),
            str(row["rounds_simulated"]),
        ]
        sink.write(",".join(cells) + "\n")


def _opt(value) -> str:
    return "" if value is None else str(value)


def run_cells(cells: list[tuple[ScenarioConfig, str, str]], jobs: int) -> list[dict]:
    """Run sweep cells on a bounded worker pool; cells own their outputs,
    rows come back for the parent to merge."""
    if jobs <= 1 or len(cells) <= 1:
        return [run_and_write(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_and_write, cells))
