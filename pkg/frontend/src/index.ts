export {
  columnsWithPrefix,
  CsvError,
  filterRows,
  IoError,
  numberColumn,
  parseTable,
  readTable,
  requireColumns,
  stringColumn,
  type Table,
} from "./csv.js";
export { buildChart, esc, fmtTick, linearTicks, num, PALETTE, type ChartOpts, type Series } from "./chart.js";
export { buildHeatmap, diverging, type HeatmapOpts } from "./heatmap.js";
export {
  buildFigure,
  FIGURE_KINDS,
  renderFigure,
  UsageError,
  type FigureKind,
  type FigureSpec,
} from "./figures.js";
export { main, parseCli } from "./cli.js";
