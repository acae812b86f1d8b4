import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { buildChart, PALETTE, Series } from "./chart.js";
import { buildHeatmap } from "./heatmap.js";
import {
  columnsWithPrefix,
  CsvError,
  filterRows,
  IoError,
  numberColumn,
  readTable,
  requireColumns,
  Table,
} from "./csv.js";

export const FIGURE_KINDS = ["trace", "overlay", "sweep", "compare", "field-heatmap"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

/** Raised for bad figure requests (unknown kind, wrong input arity, bad output path). */
export class UsageError extends Error {}

export interface FigureSpec {
  kind: FigureKind;
  /** input CSV paths; trace, overlay and field-heatmap take exactly one */
  inputs: string[];
  output: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

function stem(path: string): string {
  return basename(path).replace(/\.csv$/i, "");
}

function metaSuffix(t: Table): string {
  const bits: string[] = [];
  if (t.meta["profile"]) bits.push(t.meta["profile"]);
  if (t.meta["T"] !== undefined) bits.push(`T=${t.meta["T"]}`);
  return bits.length > 0 ? ` (${bits.join(", ")})` : "";
}

function buildTrace(spec: FigureSpec): string {
  const t = readTable(spec.inputs[0]);
  requireColumns(t, ["t", "F_plus", "F_minus"]);
  const time = numberColumn(t, "t");
  const series: Series[] = [
    { label: "F_plus", x: time, y: numberColumn(t, "F_plus"), color: PALETTE[0] },
    { label: "F_minus", x: time, y: numberColumn(t, "F_minus"), color: PALETTE[1], dash: "5 3" },
  ];
  return buildChart({
    title: spec.title ?? `boundary traces${metaSuffix(t)}`,
    xLabel: spec.xLabel ?? "t",
    yLabel: spec.yLabel ?? "F(t)",
    series,
  });
}

function recColumns(t: Table): string[] {
  return columnsWithPrefix(t, "a_rec_");
}

function buildOverlay(spec: FigureSpec): string {
  const t = readTable(spec.inputs[0]);
  requireColumns(t, ["x", "a_true"]);
  const x = numberColumn(t, "x");
  const series: Series[] = [
    { label: "a_true", x, y: numberColumn(t, "a_true"), color: "#111827", width: 2.2 },
  ];
  // every reconstruction column in the file is drawn
  recColumns(t).forEach((name, i) => {
    series.push({ label: name, x, y: numberColumn(t, name), color: PALETTE[i % PALETTE.length] });
  });
  return buildChart({
    title: spec.title ?? `reconstruction overlay${metaSuffix(t)}`,
    xLabel: spec.xLabel ?? "x",
    yLabel: spec.yLabel ?? "a(x)",
    series,
  });
}

function buildSweep(spec: FigureSpec): string {
  const series: Series[] = [];
  let param: string | undefined;
  let color = 0;
  for (const path of spec.inputs) {
    const t = readTable(path);
    requireColumns(t, ["param_value", "rel_l2", "l_inf", "status"]);
    param = param ?? t.meta["param"];
    // rows that failed carry empty metric cells; only ok rows are plotted
    const ok = filterRows(t, (row) => row[t.columns.indexOf("status")] === "ok");
    const x = numberColumn(ok, "param_value");
    const prefix = spec.inputs.length > 1 ? `${stem(path)}:` : "";
    for (const metric of ["rel_l2", "l_inf"]) {
      series.push({
        label: `${prefix}${metric}`,
        x,
        y: numberColumn(ok, metric),
        color: PALETTE[color++ % PALETTE.length],
        markers: true,
      });
    }
  }
  return buildChart({
    title: spec.title ?? "parameter sweep",
    xLabel: spec.xLabel ?? param ?? "param_value",
    yLabel: spec.yLabel ?? "error",
    series,
    logY: true,
  });
}

function buildCompare(spec: FigureSpec): string {
  const series: Series[] = [];
  let color = 0;
  for (const path of spec.inputs) {
    const t = readTable(path);
    requireColumns(t, ["x", "a_true"]);
    const recs = recColumns(t);
    if (recs.length === 0) {
      throw new CsvError(`${t.path}: no a_rec_* columns to compare against a_true`);
    }
    const x = numberColumn(t, "x");
    const truth = numberColumn(t, "a_true");
    const prefix = spec.inputs.length > 1 ? `${stem(path)}:` : "";
    for (const name of recs) {
      const rec = numberColumn(t, name);
      series.push({
        label: `${prefix}${name.slice("a_rec_".length)}`,
        x,
        y: rec.map((v, i) => Math.abs(v - truth[i])),
        color: PALETTE[color++ % PALETTE.length],
      });
    }
  }
  return buildChart({
    title: spec.title ?? "pointwise reconstruction error",
    xLabel: spec.xLabel ?? "x",
    yLabel: spec.yLabel ?? "|a_rec - a_true|",
    series,
    logY: true,
  });
}

function buildFieldHeatmap(spec: FigureSpec): string {
  const t = readTable(spec.inputs[0]);
  requireColumns(t, ["x", "t", "u"]);
  return buildHeatmap({
    title: spec.title ?? `wave field${metaSuffix(t)}`,
    xLabel: spec.xLabel ?? "x",
    yLabel: spec.yLabel ?? "t",
    x: numberColumn(t, "x"),
    t: numberColumn(t, "t"),
    u: numberColumn(t, "u"),
    path: t.path,
  });
}

const SINGLE_INPUT: ReadonlySet<string> = new Set(["trace", "overlay", "field-heatmap"]);

/** Pure render: reads the inputs, returns the SVG text, writes nothing. */
export function buildFigure(spec: FigureSpec): string {
  if (!(FIGURE_KINDS as readonly string[]).includes(spec.kind)) {
    throw new UsageError(`unknown figure kind "${spec.kind}" (expected ${FIGURE_KINDS.join(", ")})`);
  }
  if (spec.inputs.length === 0) {
    throw new UsageError(`figure kind "${spec.kind}" needs at least one input CSV`);
  }
  if (SINGLE_INPUT.has(spec.kind) && spec.inputs.length !== 1) {
    throw new UsageError(
      `figure kind "${spec.kind}" takes exactly one input CSV, got ${spec.inputs.length}`,
    );
  }
  switch (spec.kind) {
    case "trace":
      return buildTrace(spec);
    case "overlay":
      return buildOverlay(spec);
    case "sweep":
      return buildSweep(spec);
    case "compare":
      return buildCompare(spec);
    case "field-heatmap":
      return buildFieldHeatmap(spec);
  }
}

/** Builds the figure, then writes it; a failed build leaves no partial output file. */
export function renderFigure(spec: FigureSpec): string {
  const svg = buildFigure(spec);
  try {
    writeFileSync(spec.output, svg, "utf8");
  } catch (err) {
    const code = (err as NodeJS.ErrnoException).code ?? "error";
    throw new IoError(`cannot write ${spec.output} (${code})`);
  }
  return svg;
}
