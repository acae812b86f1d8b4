import { readFileSync } from "node:fs";

/** Raised when a CSV file does not match the expected schema. */
export class CsvError extends Error {}

/** Raised when an input file cannot be read. */
export class IoError extends Error {}

export interface Table {
  path: string;
  /** leading "# key: value" comment lines */
  meta: Record<string, string>;
  columns: string[];
  /** raw cells; convert with numberColumn so errors name the column */
  rows: string[][];
}

export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    const code = (err as NodeJS.ErrnoException).code ?? "error";
    throw new IoError(`cannot read ${path} (${code})`);
  }
  return parseTable(text, path);
}

export function parseTable(text: string, path = "<inline>"): Table {
  const meta: Record<string, string> = {};
  const lines = text.split(/\r?\n/);
  let i = 0;
  for (; i < lines.length; i++) {
    const line = lines[i];
    if (!line.startsWith("#")) break;
    const body = line.slice(1).trim();
    const sep = body.indexOf(":");
    if (sep > 0) meta[body.slice(0, sep).trim()] = body.slice(sep + 1).trim();
  }
  while (i < lines.length && lines[i].trim() === "") i++;
  if (i >= lines.length) throw new CsvError(`${path}: no header row`);
  const columns = lines[i].split(",").map((c) => c.trim());
  if (columns.some((c) => c === "")) throw new CsvError(`${path}: empty column name in header`);
  i++;
  const rows: string[][] = [];
  for (; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const cells = line.split(",").map((c) => c.trim());
    if (cells.length !== columns.length) {
      throw new CsvError(
        `${path}: row ${rows.length + 1} has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    rows.push(cells);
  }
  return { path, meta, columns, rows };
}

/** Throws a CsvError naming the first missing column. */
export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    if (!table.columns.includes(name)) {
      throw new CsvError(
        `${table.path}: missing column "${name}" (found: ${table.columns.join(", ")})`,
      );
    }
  }
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `${table.path}: missing column "${name}" (found: ${table.columns.join(", ")})`,
    );
  }
  return idx;
}

export function numberColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row, r) => {
    const cell = row[idx];
    const value = cell === "" ? NaN : Number(cell);
    if (!Number.isFinite(value)) {
      throw new CsvError(`${table.path}: column "${name}" row ${r + 1}: not a number (${JSON.stringify(cell)})`);
    }
    return value;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => row[idx]);
}

/** Subset of rows, same schema. */
export function filterRows(table: Table, keep: (row: string[]) => boolean): Table {
  return { ...table, rows: table.rows.filter(keep) };
}

export function columnsWithPrefix(table: Table, prefix: string): string[] {
  return table.columns.filter((c) => c.startsWith(prefix));
}
