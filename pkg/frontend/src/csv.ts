import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { SchemaMismatch } from "./errors.js";

/** A parsed numeric table: column name -> values, in file row order. */
export interface Table {
  columns: string[];
  data: Map<string, number[]>;
  nRows: number;
}

/**
 * Read a comma-separated numeric table with a header row and check that
 * every required column is present.
 */
export function readTable(path: string, required: string[]): Table {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, number>>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  for (const col of required) {
    if (!columns.includes(col)) throw new SchemaMismatch(col, path);
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (const row of parsed.data) {
    for (const c of columns) data.get(c)!.push(Number(row[c]));
  }
  return { columns, data, nRows: parsed.data.length };
}

/** Column accessor that reports the file path on a missing column. */
export function col(table: Table, name: string, path: string): number[] {
  const values = table.data.get(name);
  if (values === undefined) throw new SchemaMismatch(name, path);
  return values;
}
