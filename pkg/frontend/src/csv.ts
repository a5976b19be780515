/**
 * CSV loading for the figure renderer.
 *
 * Every accessor goes through named columns; a missing column raises
 * MissingColumnError carrying the column and file name.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class MissingColumnError extends Error {
  constructor(
    public readonly column: string,
    public readonly file: string,
  ) {
    super(`missing required column "${column}" in ${file}`);
    this.name = "MissingColumnError";
  }
}

export class EmptyCsvError extends Error {
  constructor(public readonly file: string) {
    super(`no data rows in ${file}`);
    this.name = "EmptyCsvError";
  }
}

export interface Table {
  file: string;
  columns: string[];
  rows: Record<string, string>[];
}

export function loadCsv(path: string): Table {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  if (parsed.data.length === 0) {
    throw new EmptyCsvError(path);
  }
  return { file: path, columns, rows: parsed.data };
}

export function hasColumn(table: Table, column: string): boolean {
  return table.columns.includes(column);
}

export function numericColumn(table: Table, column: string): number[] {
  if (!hasColumn(table, column)) {
    throw new MissingColumnError(column, table.file);
  }
  return table.rows.map((row) => Number(row[column]));
}
