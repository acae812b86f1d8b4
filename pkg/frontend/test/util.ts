import { fileURLToPath } from "node:url";

export function fixture(name: string): string {
  return fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
}

function escapeRe(s: string): string {
  return s.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}

/** numbers stored on the polyline with the given data-label */
export function readbackSeries(svg: string, label: string, attr: "data-x" | "data-y"): number[] {
  const tag = svg.match(new RegExp(`<polyline[^>]*data-label="${escapeRe(label)}"[^>]*>`));
  if (!tag) throw new Error(`no polyline labelled ${label}`);
  const m = tag[0].match(new RegExp(`${attr}="([^"]*)"`));
  if (!m) throw new Error(`polyline ${label} has no ${attr}`);
  return m[1].split(" ").map(Number);
}

/** numbers stored on the heatmap cell group */
export function readbackCells(svg: string, attr: "data-x" | "data-t" | "data-u"): number[] {
  const tag = svg.match(/<g class="cells"[^>]*>/);
  if (!tag) throw new Error("no cell group");
  const m = tag[0].match(new RegExp(`${attr}="([^"]*)"`));
  if (!m) throw new Error(`cell group has no ${attr}`);
  return m[1].split(" ").map(Number);
}

export function legendCount(svg: string, label: string): number {
  const re = new RegExp(`class="lg">${escapeRe(label)}</text>`, "g");
  return (svg.match(re) ?? []).length;
}

/** element-wise, distinguishing 0 from -0 and rejecting NaN */
export function sameNumbers(a: number[], b: number[]): boolean {
  if (a.length !== b.length) return false;
  return a.every((v, i) => Object.is(v, b[i]));
}
