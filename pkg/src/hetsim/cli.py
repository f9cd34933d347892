"""Command-line harness: single runs and (protocol, seed, m, a) sweeps.

Every cell writes <out>/<protocol>_<seed>.csv and .json; sweeps of more
than one cell also write <out>/sweep_summary.csv. Outputs are byte-stable
for identical command lines.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, parse_config
from .output import cell_basename, run_cells, write_sweep_summary


def _parse_seeds(spec: str) -> list[int]:
    """Seed list: either a single integer or an inclusive range 'A..B'."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ConfigError(f"seeds: empty range {spec!r}")
        return list(range(start, stop + 1))
    return [int(spec)]


def _parse_floats(spec: str) -> list[float]:
    return [float(part) for part in spec.split(",") if part.strip()]


def _parse_field(spec: str) -> tuple[float, float]:
    try:
        w, h = spec.lower().split("x", 1)
        return float(w), float(h)
    except ValueError:
        raise ConfigError(f"field: expected WxH, got {spec!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetsim",
        description="Simulate LEACH / DEEC / Ad-LEACH rounds and write per-round CSV traces",
    )
    parser.add_argument("--config", metavar="PATH", help="flat key = value scenario file")
    parser.add_argument("--protocol", metavar="NAME", help="single protocol: leach, deec or adleach")
    parser.add_argument("--protocols", metavar="LIST", help="comma-separated protocol sweep")
    parser.add_argument("--seed", metavar="N", type=int, help="single seed")
    parser.add_argument("--seeds", metavar="A..B", help="inclusive seed range sweep")
    parser.add_argument("--m", metavar="F", help="advanced-node fraction (comma list sweeps)")
    parser.add_argument("--a", metavar="F", help="advanced energy multiplier (comma list sweeps)")
    parser.add_argument("--nodes", metavar="N", type=int, help="node count")
    parser.add_argument("--field", metavar="WxH", help="field size in meters, e.g. 100x50")
    parser.add_argument("--clusters", metavar="Q", type=int, help="static cluster count")
    parser.add_argument("--max-rounds", metavar="N", type=int, help="round cap")
    parser.add_argument("--out", metavar="DIR", help="output directory (default $HETSIM_OUT or ./out)")
    parser.add_argument("--jobs", metavar="N", type=int, default=os.cpu_count() or 1,
                        help="worker processes for sweeps (default: cores)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        base_overrides: dict = {}
        if args.nodes is not None:
            base_overrides["n"] = args.nodes
        if args.field is not None:
            base_overrides["field_w"], base_overrides["field_h"] = _parse_field(args.field)
        if args.clusters is not None:
            base_overrides["q"] = args.clusters
        if args.max_rounds is not None:
            base_overrides["max_rounds"] = args.max_rounds

        if args.protocol and args.protocols:
            raise ConfigError("protocol: give either --protocol or --protocols, not both")
        if args.seed is not None and args.seeds:
            raise ConfigError("seed: give either --seed or --seeds, not both")
        protocols = (args.protocols or args.protocol).split(",") if (args.protocols or args.protocol) else [None]
        seeds = _parse_seeds(args.seeds) if args.seeds else ([args.seed] if args.seed is not None else [None])
        ms = _parse_floats(args.m) if args.m else [None]
        a_values = _parse_floats(args.a) if args.a else [None]
        tag_grid = len(ms) > 1 or len(a_values) > 1

        cells = []
        for protocol in protocols:
            for m in ms:
                for a in a_values:
                    for seed in seeds:
                        overrides = dict(base_overrides)
                        if protocol is not None:
                            overrides["protocol"] = protocol.strip()
                        if seed is not None:
                            overrides["seed"] = seed
                        if m is not None:
                            overrides["m"] = m
                        if a is not None:
                            overrides["a"] = a
                        cells.append(parse_config(args.config, overrides))
    except ConfigError as exc:
        print(f"hetsim: config error: {exc}", file=sys.stderr)
        return 2

    outdir = Path(args.out or os.environ.get("HETSIM_OUT") or "out")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        probe = outdir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"hetsim: output directory not writable: {exc}", file=sys.stderr)
        return 1

    work = [(config, str(outdir), cell_basename(config, tag_grid)) for config in cells]
    try:
        rows = run_cells(work, jobs=args.jobs)
    except Exception as exc:  # a failed cell aborts the sweep with a named culprit
        print(f"hetsim: run failed: {exc}", file=sys.stderr)
        return 1

    if len(work) > 1:
        with open(outdir / "sweep_summary.csv", "w", newline="\n") as sink:
            write_sweep_summary(rows, sink)
    for _, _, basename in work:
        print(f"{outdir}/{basename}.csv")
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
