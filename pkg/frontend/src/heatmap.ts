import { esc, extent, fmtTick, linearTicks, num, FONT } from "./chart.js";
import { CsvError } from "./csv.js";

/** Long-form samples; the grid is reassembled from unique coordinates. */
export interface HeatmapOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  x: number[];
  t: number[];
  u: number[];
  path?: string;
  width?: number;
  height?: number;
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function hex2(v: number): string {
  return Math.round(v).toString(16).padStart(2, "0");
}

function lerp(a: number, b: number, w: number): number {
  return a + (b - a) * w;
}

/** diverging blue/white/red, s in [-1, 1] */
export function diverging(s: number): string {
  const neg = [0x21, 0x66, 0xac];
  const mid = [0xf7, 0xf7, 0xf7];
  const pos = [0xb2, 0x18, 0x2b];
  const c = Math.min(Math.max(s, -1), 1);
  const [from, to, w] = c < 0 ? [mid, neg, -c] : [mid, pos, c];
  return `#${hex2(lerp(from[0], to[0], w))}${hex2(lerp(from[1], to[1], w))}${hex2(lerp(from[2], to[2], w))}`;
}

export function buildHeatmap(o: HeatmapOpts): string {
  const where = o.path ?? "<data>";
  if (o.x.length !== o.t.length || o.x.length !== o.u.length) {
    throw new CsvError(`${where}: x, t, u lengths differ`);
  }
  if (o.x.length === 0) throw new CsvError(`${where}: no samples`);
  const xs = uniqueSorted(o.x);
  const ts = uniqueSorted(o.t);
  const nx = xs.length;
  const nt = ts.length;
  const xIdx = new Map(xs.map((v, i) => [v, i]));
  const tIdx = new Map(ts.map((v, i) => [v, i]));
  const grid = new Array<number>(nx * nt).fill(NaN);
  for (let r = 0; r < o.u.length; r++) {
    const gi = xIdx.get(o.x[r])! * nt + tIdx.get(o.t[r])!;
    if (!Number.isNaN(grid[gi])) {
      throw new CsvError(`${where}: duplicate sample at x=${num(o.x[r])}, t=${num(o.t[r])}`);
    }
    grid[gi] = o.u[r];
  }
  for (let i = 0; i < grid.length; i++) {
    if (Number.isNaN(grid[i])) {
      throw new CsvError(
        `${where}: incomplete grid, missing x=${num(xs[Math.floor(i / nt)])}, t=${num(ts[i % nt])}`,
      );
    }
  }

  const W = o.width ?? 760;
  const H = o.height ?? 460;
  const ml = 72;
  const mr = 92;
  const mt = 46;
  const mb = 54;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  const dx = nx > 1 ? (xs[nx - 1] - xs[0]) / (nx - 1) : 1;
  const dt = nt > 1 ? (ts[nt - 1] - ts[0]) / (nt - 1) : 1;
  const xLo = xs[0] - dx / 2;
  const xHi = xs[nx - 1] + dx / 2;
  const tLo = ts[0] - dt / 2;
  const tHi = ts[nt - 1] + dt / 2;
  const xOf = (v: number) => ml + (pw * (v - xLo)) / (xHi - xLo);
  const yOf = (v: number) => mt + ph * (1 - (v - tLo) / (tHi - tLo));
  const [, m] = extent(grid.map(Math.abs));

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="${FONT}">`,
  );
  out.push(`<rect width="${W}" height="${H}" fill="#ffffff"/>`);
  out.push(
    `<text x="${ml}" y="26" font-size="15" font-weight="600" fill="#111827">${esc(o.title)}</text>`,
  );

  // cells, x-major so data-u order is ix*nt+it
  out.push(
    `<g class="cells" data-order="x-major" data-x="${xs.map(num).join(" ")}" data-t="${ts.map(num).join(" ")}" data-u="${grid.map(num).join(" ")}">`,
  );
  const cw = pw / nx;
  const chh = ph / nt;
  for (let ix = 0; ix < nx; ix++) {
    for (let it = 0; it < nt; it++) {
      const v = grid[ix * nt + it];
      const fill = diverging(m > 0 ? v / m : 0);
      const cx = (ml + ix * cw).toFixed(2);
      const cy = (mt + (nt - 1 - it) * chh).toFixed(2);
      out.push(
        `<rect x="${cx}" y="${cy}" width="${(cw + 0.5).toFixed(2)}" height="${(chh + 0.5).toFixed(2)}" fill="${fill}"/>`,
      );
    }
  }
  out.push("</g>");

  // frame + ticks on top of cells
  out.push(
    `<rect x="${ml}" y="${mt}" width="${pw}" height="${ph}" fill="none" stroke="#9ca3af" stroke-width="1"/>`,
  );
  for (const tick of linearTicks(xLo, xHi, 8)) {
    const x = xOf(tick).toFixed(2);
    out.push(
      `<line x1="${x}" y1="${H - mb}" x2="${x}" y2="${H - mb + 5}" stroke="#4b5563" stroke-width="1"/>`,
    );
    out.push(
      `<text x="${x}" y="${H - mb + 18}" font-size="11" fill="#4b5563" text-anchor="middle">${esc(fmtTick(tick))}</text>`,
    );
  }
  for (const tick of linearTicks(tLo, tHi, 7)) {
    const y = yOf(tick).toFixed(2);
    out.push(
      `<line x1="${ml - 5}" y1="${y}" x2="${ml}" y2="${y}" stroke="#4b5563" stroke-width="1"/>`,
    );
    out.push(
      `<text x="${ml - 9}" y="${y}" font-size="11" fill="#4b5563" text-anchor="end" dominant-baseline="middle">${esc(fmtTick(tick))}</text>`,
    );
  }

  // colorbar
  const cbx = W - mr + 26;
  const steps = 48;
  for (let i = 0; i < steps; i++) {
    const s = 1 - (2 * i) / (steps - 1);
    const y = mt + (ph * i) / steps;
    out.push(
      `<rect x="${cbx}" y="${y.toFixed(2)}" width="14" height="${(ph / steps + 0.5).toFixed(2)}" fill="${diverging(s)}"/>`,
    );
  }
  out.push(
    `<rect x="${cbx}" y="${mt}" width="14" height="${ph}" fill="none" stroke="#9ca3af" stroke-width="0.5"/>`,
  );
  out.push(
    `<text x="${cbx + 18}" y="${mt + 4}" font-size="10" fill="#111827">${esc(fmtTick(m))}</text>`,
  );
  out.push(
    `<text x="${cbx + 18}" y="${mt + ph / 2}" font-size="10" fill="#111827" dominant-baseline="middle">0</text>`,
  );
  out.push(
    `<text x="${cbx + 18}" y="${mt + ph}" font-size="10" fill="#111827">${esc(fmtTick(-m))}</text>`,
  );

  out.push(
    `<text x="${ml + pw / 2}" y="${H - 12}" font-size="12" fill="#111827" text-anchor="middle">${esc(o.xLabel)}</text>`,
  );
  out.push(
    `<text x="18" y="${mt + ph / 2}" font-size="12" fill="#111827" text-anchor="middle" transform="rotate(-90 18 ${mt + ph / 2})">${esc(o.yLabel)}</text>`,
  );
  out.push("</svg>");
  return out.join("\n") + "\n";
}
