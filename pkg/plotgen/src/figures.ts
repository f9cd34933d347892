/**
 * The four standard comparison figures, built from run-directory CSVs.
 */

import { readFile, readdir, writeFile } from "node:fs/promises";
import path from "node:path";

import { renderLineChart, Series, SERIES_COLORS } from "./chart.js";
import { parseRoundCsv, RoundRow } from "./csv.js";

export type Metric = "energy_cum" | "alive" | "dead" | "packets_bs_cum";

export const METRICS: Metric[] = ["energy_cum", "alive", "dead", "packets_bs_cum"];

const METRIC_COLUMN: Record<Metric, keyof RoundRow> = {
  energy_cum: "energy_cum_j",
  alive: "alive",
  dead: "dead",
  packets_bs_cum: "packets_bs_cum",
};

const METRIC_TITLE: Record<Metric, string> = {
  energy_cum: "Cumulative energy consumption",
  alive: "Alive nodes per round",
  dead: "Dead nodes per round",
  packets_bs_cum: "Cumulative packets received at the base station",
};

const METRIC_Y_LABEL: Record<Metric, string> = {
  energy_cum: "Energy consumed (J)",
  alive: "Alive nodes",
  dead: "Dead nodes",
  packets_bs_cum: "Packets at BS",
};

export interface SeriesInput {
  path: string;
  label: string;
}

export interface FigureSpec {
  metric: Metric;
  inputs: SeriesInput[];
  output: string;
  title?: string;
}

export function isMetric(name: string): name is Metric {
  return (METRICS as string[]).includes(name);
}

/** Render one figure; returns the number of points plotted per series. */
export async function render(spec: FigureSpec): Promise<number[]> {
  const column = METRIC_COLUMN[spec.metric];
  const series: Series[] = [];
  for (const [i, input] of spec.inputs.entries()) {
    const text = await readFile(input.path, "utf-8");
    const rows = parseRoundCsv(text, input.path);
    series.push({
      label: input.label,
      xs: rows.map((r) => r.round),
      ys: rows.map((r) => r[column]),
      color: SERIES_COLORS[i % SERIES_COLORS.length],
    });
  }
  const svg = renderLineChart({
    title: spec.title ?? METRIC_TITLE[spec.metric],
    xLabel: "Round",
    yLabel: METRIC_Y_LABEL[spec.metric],
    series,
  });
  await writeFile(spec.output, svg);
  return series.map((s) => s.xs.length);
}

const RUN_FILE = /^([a-z]+)_(\d+)\.csv$/;

/**
 * Pick the run to plot per protocol label: the highest seed found.
 * Grid-tagged sweep files (protocol_m*_a*_seed.csv) are ignored here;
 * point the CLI at a plain run directory for those.
 */
export async function latestRunPerProtocol(runDir: string): Promise<SeriesInput[]> {
  let names: string[];
  try {
    names = await readdir(runDir);
  } catch (err) {
    throw new Error(`cannot read run directory '${runDir}': ${(err as Error).message}`);
  }
  const best = new Map<string, number>();
  for (const name of names) {
    const match = RUN_FILE.exec(name);
    if (!match) continue;
    const [, protocol, seedText] = match;
    const seed = Number(seedText);
    if (!best.has(protocol) || seed > (best.get(protocol) as number)) {
      best.set(protocol, seed);
    }
  }
  if (best.size === 0) {
    throw new Error(`no run CSVs (protocol_seed.csv) found in '${runDir}'`);
  }
  return [...best.entries()]
    .sort(([a], [b]) => a.localeCompare(b))
    .map(([protocol, seed]) => ({
      path: path.join(runDir, `${protocol}_${seed}.csv`),
      label: protocol,
    }));
}

/** Render the four standard figures for a run directory. */
export async function renderAll(runDir: string, outDir?: string): Promise<string[]> {
  const inputs = await latestRunPerProtocol(runDir);
  const target = outDir ?? runDir;
  const outputs: string[] = [];
  for (const metric of METRICS) {
    const output = path.join(target, `fig_${metric}.svg`);
    await render({ metric, inputs, output });
    outputs.push(output);
  }
  return outputs;
}
