/**
 * Deterministic SVG line charts: same data in, same bytes out.
 */

export interface Series {
  label: string;
  xs: number[];
  ys: number[];
  color: string;
}

export interface ChartOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 84 };

const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

export const SERIES_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function extent(values: number[], fallback: [number, number]): [number, number] {
  if (values.length === 0) return fallback;
  let lo = values[0];
  let hi = values[0];
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

/** Round tick step to 1/2/5 times a power of ten. */
function niceStep(span: number, targetTicks: number): number {
  const raw = span / targetTicks;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const unit = raw / power;
  const factor = unit <= 1 ? 1 : unit <= 2 ? 2 : unit <= 5 ? 5 : 10;
  return factor * power;
}

function ticks(lo: number, hi: number, count: number): number[] {
  const step = niceStep(hi - lo, count);
  const start = Math.ceil(lo / step) * step;
  const values: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    values.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return values;
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e6 || abs < 1e-3) return value.toExponential(1).replace("e+", "e");
  const text = value.toPrecision(8);
  return text.includes(".") ? text.replace(/0+$/, "").replace(/\.$/, "") : text;
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderLineChart(opts: ChartOpts): string {
  const [xLo, xHi] = extent(opts.series.flatMap((s) => s.xs), [0, 1]);
  const [yLoRaw, yHi] = extent(opts.series.flatMap((s) => s.ys), [0, 1]);
  const yLo = Math.min(0, yLoRaw);

  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * PLOT_W;
  const sy = (y: number) => MARGIN.top + PLOT_H - ((y - yLo) / (yHi - yLo)) * PLOT_H;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="17" fill="#222">${escapeXml(opts.title)}</text>`
  );

  // Gridlines and axis ticks.
  for (const t of ticks(yLo, yHi, 6)) {
    const y = sy(t).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}" y2="${y}" stroke="#e0e0e0" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="12" fill="#444">${formatTick(t)}</text>`
    );
  }
  for (const t of ticks(xLo, xHi, 8)) {
    const x = sx(t).toFixed(2);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${HEIGHT - MARGIN.bottom}" stroke="#eeeeee" stroke-width="1"/>`
    );
    parts.push(
      `<text x="${x}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="12" fill="#444">${formatTick(t)}</text>`
    );
  }

  // Axes.
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="#222" stroke-width="1"/>`
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="#222" stroke-width="1"/>`
  );
  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13" fill="#222">${escapeXml(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="22" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="13" fill="#222" transform="rotate(-90 22 ${MARGIN.top + PLOT_H / 2})">${escapeXml(opts.yLabel)}</text>`
  );

  // Data series.
  for (const series of opts.series) {
    const points = series.xs
      .map((x, i) => `${sx(x).toFixed(2)},${sy(series.ys[i]).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${series.color}" stroke-width="1.6"/>`
    );
  }

  // Legend.
  opts.series.forEach((series, i) => {
    const y = MARGIN.top + 10 + i * 20;
    const x = MARGIN.left + 14;
    parts.push(`<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${series.color}" stroke-width="2.4"/>`);
    parts.push(
      `<text x="${x + 32}" y="${y + 4}" font-size="13" fill="#222">${escapeXml(series.label)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
