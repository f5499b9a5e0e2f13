import { SchemaError } from "./errors";

export interface Table {
  header: string[];
  rows: number[][];
}

/**
 * Parse a one-line-header CSV of plain numeric columns (the only dialect
 * the upstream tool emits: comma separators, no quoting, \n or \r\n).
 */
export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("CSV is empty");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new SchemaError(
        `row ${i} has ${parts.length} fields, header has ${header.length}`,
      );
    }
    const row = parts.map((p) => Number(p));
    if (row.some((v) => Number.isNaN(v))) {
      throw new SchemaError(`row ${i} contains a non-numeric field`);
    }
    rows.push(row);
  }
  return { header, rows };
}

/** Column indices for the requested names; missing names are a SchemaError. */
export function requireColumns(table: Table, names: string[]): number[] {
  const missing = names.filter((n) => !table.header.includes(n));
  if (missing.length > 0) {
    throw new SchemaError(
      `missing required column(s): ${missing.join(", ")} (header: ${table.header.join(",")})`,
    );
  }
  if (table.rows.length === 0) {
    throw new SchemaError("CSV has a header but no data rows");
  }
  return names.map((n) => table.header.indexOf(n));
}

export function column(table: Table, index: number): number[] {
  return table.rows.map((r) => r[index]);
}
