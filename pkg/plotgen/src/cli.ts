#!/usr/bin/env node
/**
 * plotgen <run-dir> [--metric M] [--out PATH]
 *
 * Renders the standard comparison figures from a simulator run directory.
 * With --metric, renders just that figure (--out names the SVG file);
 * otherwise all four (--out names the target directory).
 */

import { mkdir } from "node:fs/promises";
import path from "node:path";

import { isMetric, latestRunPerProtocol, METRICS, render, renderAll } from "./figures.js";

function usage(): string {
  return `usage: plotgen <run-dir> [--metric ${METRICS.join("|")}] [--out PATH]`;
}

export async function main(argv: string[]): Promise<number> {
  let runDir: string | undefined;
  let metric: string | undefined;
  let out: string | undefined;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--metric") {
      metric = argv[++i];
    } else if (arg === "--out") {
      out = argv[++i];
    } else if (arg === "--help" || arg === "-h") {
      console.log(usage());
      return 0;
    } else if (!runDir) {
      runDir = arg;
    } else {
      console.error(`plotgen: unexpected argument '${arg}'\n${usage()}`);
      return 2;
    }
  }
  if (!runDir) {
    console.error(`plotgen: missing run directory\n${usage()}`);
    return 2;
  }

  try {
    if (metric !== undefined) {
      if (!isMetric(metric)) {
        console.error(`plotgen: unknown metric '${metric}' (valid: ${METRICS.join(", ")})`);
        return 2;
      }
      const inputs = await latestRunPerProtocol(runDir);
      const output = out ?? path.join(runDir, `fig_${metric}.svg`);
      await render({ metric, inputs, output });
      console.log(output);
    } else {
      if (out) {
        await mkdir(out, { recursive: true });
      }
      for (const output of await renderAll(runDir, out)) {
        console.log(output);
      }
    }
  } catch (err) {
    console.error(`plotgen: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${path.resolve(process.argv[1])}`).href;

if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
