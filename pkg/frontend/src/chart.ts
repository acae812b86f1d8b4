/** Shared SVG line-chart frame. Output is a plain string: deterministic, diffable. */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: string;
  markers?: boolean;
}

export interface ChartOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logY?: boolean;
  width?: number;
  height?: number;
}

export const PALETTE = [
  "#2563eb",
  "#dc2626",
  "#059669",
  "#d97706",
  "#7c3aed",
  "#0891b2",
  "#be185d",
  "#4b5563",
];

export const FONT = "Helvetica, Arial, sans-serif";

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Exact round-trip serialization; String(-0) would drop the sign. */
export function num(v: number): string {
  return Object.is(v, -0) ? "-0" : String(v);
}

function fin(values: number[]): number[] {
  return values.filter((v) => Number.isFinite(v));
}

/** spread-free so very long series stay under the call argument limit */
export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/** step from {1,2,5}*10^k so tick labels need few decimals */
function niceStep(span: number, maxTicks: number): number {
  const raw = span / Math.max(1, maxTicks - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const r = raw / mag;
  const m = r <= 1 ? 1 : r <= 2 ? 2 : r <= 5 ? 5 : 10;
  return m * mag;
}

export function linearTicks(lo: number, hi: number, maxTicks = 7): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep(hi - lo, maxTicks);
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-4) {
    return v.toExponential(1).replace(/\.0e/, "e");
  }
  const s = v.toPrecision(6);
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}

function fmtLogTick(exp: number): string {
  if (exp === 0) return "1";
  return `1e${exp}`;
}

interface Frame {
  lines: string[];
  xOf: (v: number) => number;
  yOf: (v: number) => number;
}

function pad(lo: number, hi: number): [number, number] {
  if (hi > lo) {
    const p = (hi - lo) * 0.05;
    return [lo - p, hi + p];
  }
  const p = Math.max(1, Math.abs(lo));
  return [lo - p, hi + p];
}

export function buildChart(o: ChartOpts): string {
  const W = o.width ?? 760;
  const H = o.height ?? 420;
  const ml = 72;
  const mr = 20;
  const mt = 46;
  const mb = 54;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  const xs = fin(o.series.flatMap((s) => s.x));
  let [xLo, xHi] = extent(xs);
  if (!Number.isFinite(xLo)) {
    xLo = 0;
    xHi = 1;
  }
  if (!(xHi > xLo)) [xLo, xHi] = pad(xLo, xHi);

  let yTicks: number[];
  let yTickLabels: string[];
  let yOf: (v: number) => number;
  if (o.logY) {
    const pos = fin(o.series.flatMap((s) => s.y)).filter((v) => v > 0);
    let eLo: number;
    let eHi: number;
    if (pos.length === 0) {
      eLo = -18;
      eHi = 0;
    } else {
      const [pLo, pHi] = extent(pos);
      eLo = Math.floor(Math.log10(pLo));
      eHi = Math.ceil(Math.log10(pHi));
      if (eHi <= eLo) eHi = eLo + 1;
    }
    const estep = Math.max(1, Math.ceil((eHi - eLo) / 6));
    yTicks = [];
    for (let e = eLo; e <= eHi; e += estep) yTicks.push(e);
    yTickLabels = yTicks.map(fmtLogTick);
    yOf = (v) => {
      const e = v > 0 ? Math.log10(v) : eLo;
      const c = Math.min(Math.max(e, eLo), eHi);
      return mt + ph * (1 - (c - eLo) / (eHi - eLo));
    };
  } else {
    const ys = fin(o.series.flatMap((s) => s.y));
    let [yLo, yHi] = extent(ys);
    if (!Number.isFinite(yLo)) {
      yLo = 0;
      yHi = 1;
    }
    [yLo, yHi] = pad(yLo, yHi);
    yTicks = linearTicks(yLo, yHi, 7);
    yTickLabels = yTicks.map(fmtTick);
    yOf = (v) => mt + ph * (1 - (v - yLo) / (yHi - yLo));
  }
  const xTicks = linearTicks(xLo, xHi, 8);
  const xOf = (v: number) => ml + (pw * (v - xLo)) / (xHi - xLo);

  const f: Frame = { lines: [], xOf, yOf };
  f.lines.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="${FONT}">`,
  );
  f.lines.push(`<rect width="${W}" height="${H}" fill="#ffffff"/>`);
  f.lines.push(
    `<text x="${ml}" y="26" font-size="15" font-weight="600" fill="#111827">${esc(o.title)}</text>`,
  );

  // grid + ticks
  for (let i = 0; i < yTicks.length; i++) {
    const y = yOf(o.logY ? Math.pow(10, yTicks[i]) : yTicks[i]).toFixed(2);
    f.lines.push(
      `<line x1="${ml}" y1="${y}" x2="${W - mr}" y2="${y}" stroke="#e5e7eb" stroke-width="1"/>`,
    );
    f.lines.push(
      `<text x="${ml - 8}" y="${y}" font-size="11" fill="#4b5563" text-anchor="end" dominant-baseline="middle">${esc(yTickLabels[i])}</text>`,
    );
  }
  for (const t of xTicks) {
    const x = xOf(t).toFixed(2);
    f.lines.push(
      `<line x1="${x}" y1="${mt}" x2="${x}" y2="${H - mb}" stroke="#e5e7eb" stroke-width="1"/>`,
    );
    f.lines.push(
      `<text x="${x}" y="${H - mb + 16}" font-size="11" fill="#4b5563" text-anchor="middle">${esc(fmtTick(t))}</text>`,
    );
  }
  f.lines.push(
    `<rect x="${ml}" y="${mt}" width="${pw}" height="${ph}" fill="none" stroke="#9ca3af" stroke-width="1"/>`,
  );

  // series
  for (const s of o.series) {
    const pts = s.x
      .map((x, i) => `${xOf(x).toFixed(2)},${yOf(s.y[i]).toFixed(2)}`)
      .join(" ");
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    const dataX = s.x.map(num).join(" ");
    const dataY = s.y.map(num).join(" ");
    f.lines.push(
      `<polyline fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.6}"${dash} points="${pts}" data-label="${esc(s.label)}" data-x="${dataX}" data-y="${dataY}"/>`,
    );
    if (s.markers) {
      for (let i = 0; i < s.x.length; i++) {
        f.lines.push(
          `<circle cx="${xOf(s.x[i]).toFixed(2)}" cy="${yOf(s.y[i]).toFixed(2)}" r="2.8" fill="${s.color}"/>`,
        );
      }
    }
  }

  // legend, one entry per series
  const lw = Math.max(...o.series.map((s) => s.label.length)) * 6.6 + 40;
  const lx = W - mr - lw - 6;
  let ly = mt + 10;
  f.lines.push(
    `<rect x="${lx - 6}" y="${ly - 12}" width="${lw}" height="${o.series.length * 16 + 8}" fill="#ffffff" fill-opacity="0.85" stroke="#d1d5db" stroke-width="0.5"/>`,
  );
  for (const s of o.series) {
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    f.lines.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${s.color}" stroke-width="2"${dash}/>`,
    );
    f.lines.push(
      `<text x="${lx + 28}" y="${ly}" font-size="11" fill="#111827" dominant-baseline="middle" class="lg">${esc(s.label)}</text>`,
    );
    ly += 16;
  }

  // axis labels
  f.lines.push(
    `<text x="${ml + pw / 2}" y="${H - 12}" font-size="12" fill="#111827" text-anchor="middle">${esc(o.xLabel)}</text>`,
  );
  f.lines.push(
    `<text x="18" y="${mt + ph / 2}" font-size="12" fill="#111827" text-anchor="middle" transform="rotate(-90 18 ${mt + ph / 2})">${esc(o.yLabel)}</text>`,
  );
  f.lines.push("</svg>");
  return f.lines.join("\n") + "\n";
}
