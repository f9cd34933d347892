/**
 * Parser for the simulator's frozen per-round CSV contract.
 *
 * The header must match byte for byte; a mismatch reports the first
 * offending column by name so a drifting producer is easy to spot.
 */

export const CSV_HEADER =
  "round,alive,dead,ch_count,energy_round_j,energy_cum_j,packets_bs_round,packets_bs_cum,packets_ch_round";

export const COLUMNS = CSV_HEADER.split(",");

export interface RoundRow {
  round: number;
  alive: number;
  dead: number;
  ch_count: number;
  energy_round_j: number;
  energy_cum_j: number;
  packets_bs_round: number;
  packets_bs_cum: number;
  packets_ch_round: number;
}

export class CsvFormatError extends Error {}

export function parseRoundCsv(text: string, source: string): RoundRow[] {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError(`${source}: empty file, expected header '${CSV_HEADER}'`);
  }
  const header = lines[0].split(",");
  for (let i = 0; i < COLUMNS.length; i++) {
    if (header[i] === undefined) {
      throw new CsvFormatError(`${source}: missing column '${COLUMNS[i]}'`);
    }
    if (header[i] !== COLUMNS[i]) {
      throw new CsvFormatError(
        `${source}: expected column '${COLUMNS[i]}' at position ${i + 1}, found '${header[i]}'`
      );
    }
  }
  if (header.length > COLUMNS.length) {
    throw new CsvFormatError(`${source}: unexpected column '${header[COLUMNS.length]}'`);
  }

  const rows: RoundRow[] = [];
  for (let lineNo = 1; lineNo < lines.length; lineNo++) {
    const cells = lines[lineNo].split(",");
    if (cells.length !== COLUMNS.length) {
      throw new CsvFormatError(
        `${source}: line ${lineNo + 1} has ${cells.length} fields, expected ${COLUMNS.length}`
      );
    }
    const row: Record<string, number> = {};
    for (let i = 0; i < COLUMNS.length; i++) {
      const value = Number(cells[i]);
      if (!Number.isFinite(value)) {
        throw new CsvFormatError(
          `${source}: line ${lineNo + 1}, column '${COLUMNS[i]}': not a number: '${cells[i]}'`
        );
      }
      row[COLUMNS[i]] = value;
    }
    rows.push(row as unknown as RoundRow);
  }
  return rows;
}
