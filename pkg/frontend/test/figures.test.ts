import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  buildFigure,
  CsvError,
  IoError,
  numberColumn,
  readTable,
  renderFigure,
  UsageError,
  type FigureSpec,
} from "../src/index.js";
import { fixture, legendCount, readbackCells, readbackSeries, sameNumbers } from "./util.js";

const tmp = mkdtempSync(join(tmpdir(), "plotkit-test-"));

function spec(kind: FigureSpec["kind"], inputs: string[], name: string): FigureSpec {
  return { kind, inputs, output: join(tmp, name) };
}

describe("trace figure", () => {
  const svg = buildFigure(spec("trace", [fixture("trace.csv")], "t.svg"));

  it("renders a non-empty svg", () => {
    expect(svg.length).toBeGreaterThan(0);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("</svg>");
  });

  it("plots both boundary traces and reads them back exactly", () => {
    const t = readTable(fixture("trace.csv"));
    for (const col of ["F_plus", "F_minus"]) {
      expect(sameNumbers(readbackSeries(svg, col, "data-x"), numberColumn(t, "t"))).toBe(true);
      expect(sameNumbers(readbackSeries(svg, col, "data-y"), numberColumn(t, col))).toBe(true);
    }
  });

  it("legend lists each trace exactly once", () => {
    expect(legendCount(svg, "F_plus")).toBe(1);
    expect(legendCount(svg, "F_minus")).toBe(1);
  });

  it("title falls back to the file meta", () => {
    expect(svg).toContain("boundary traces (smooth, T=2)");
  });

  it("an all-zero trace still renders with finite coordinates", () => {
    const path = join(tmp, "zero.csv");
    writeFileSync(path, "# T: 1\nt,F_plus,F_minus\n0.0,0.0,0.0\n0.5,0.0,0.0\n1.0,0.0,0.0\n");
    const flat = buildFigure(spec("trace", [path], "zero.svg"));
    expect(flat).not.toContain("NaN");
    expect(flat).not.toContain("Infinity");
    expect(readbackSeries(flat, "F_plus", "data-y")).toEqual([0, 0, 0]);
  });

  it("feeding it a recon file is a schema error naming the column", () => {
    expect(() => buildFigure(spec("trace", [fixture("recon.csv")], "x.svg"))).toThrow(
      /missing column "t"/,
    );
  });
});

describe("overlay figure", () => {
  const svg = buildFigure(spec("overlay", [fixture("recon.csv")], "o.svg"));
  const t = readTable(fixture("recon.csv"));
  const cols = ["a_true", "a_rec_spectral", "a_rec_lsq", "a_rec_backward_fd"];

  it("draws the true profile and every reconstruction column", () => {
    for (const col of cols) {
      expect(sameNumbers(readbackSeries(svg, col, "data-x"), numberColumn(t, "x"))).toBe(true);
      expect(sameNumbers(readbackSeries(svg, col, "data-y"), numberColumn(t, col))).toBe(true);
    }
  });

  it("legend lists every plotted column exactly once", () => {
    for (const col of cols) expect(legendCount(svg, col)).toBe(1);
  });

  it("a truth-only file still renders the a_true series", () => {
    const path = join(tmp, "truthonly.csv");
    writeFileSync(path, "x,a_true\n-1.0,0.0\n0.0,1.0\n1.0,0.0\n");
    const solo = buildFigure(spec("overlay", [path], "solo.svg"));
    expect(legendCount(solo, "a_true")).toBe(1);
    expect(readbackSeries(solo, "a_true", "data-y")).toEqual([0, 1, 0]);
  });

  it("missing a_true is a schema error naming the column", () => {
    const path = join(tmp, "noatrue.csv");
    writeFileSync(path, "x,a_rec_spectral\n0.0,1.0\n");
    expect(() => buildFigure(spec("overlay", [path], "x.svg"))).toThrow(/missing column "a_true"/);
  });
});

describe("sweep figure", () => {
  it("plots both metrics against the swept parameter", () => {
    const svg = buildFigure(spec("sweep", [fixture("sweep.csv")], "s.svg"));
    const t = readTable(fixture("sweep.csv"));
    expect(sameNumbers(readbackSeries(svg, "rel_l2", "data-x"), numberColumn(t, "param_value"))).toBe(true);
    expect(sameNumbers(readbackSeries(svg, "rel_l2", "data-y"), numberColumn(t, "rel_l2"))).toBe(true);
    expect(sameNumbers(readbackSeries(svg, "l_inf", "data-y"), numberColumn(t, "l_inf"))).toBe(true);
    expect(legendCount(svg, "rel_l2")).toBe(1);
    expect(legendCount(svg, "l_inf")).toBe(1);
    expect(svg).toContain(">K</text>");
  });

  it("skips rows whose status is not ok", () => {
    const svg = buildFigure(spec("sweep", [fixture("sweep_with_error.csv")], "se.svg"));
    expect(readbackSeries(svg, "rel_l2", "data-x")).toEqual([10, 40]);
    expect(readbackSeries(svg, "rel_l2", "data-y").length).toBe(2);
  });

  it("uses decade ticks on the error axis", () => {
    const svg = buildFigure(spec("sweep", [fixture("sweep.csv")], "s2.svg"));
    expect(svg).toContain(">1e-3</text>");
  });

  it("prefixes labels with the file stem when overlaying several sweeps", () => {
    const svg = buildFigure(
      spec("sweep", [fixture("sweep.csv"), fixture("sweep_with_error.csv")], "sm.svg"),
    );
    for (const label of [
      "sweep:rel_l2",
      "sweep:l_inf",
      "sweep_with_error:rel_l2",
      "sweep_with_error:l_inf",
    ]) {
      expect(legendCount(svg, label)).toBe(1);
    }
    expect(readbackSeries(svg, "sweep_with_error:rel_l2", "data-x")).toEqual([10, 40]);
  });
});

describe("compare figure", () => {
  const svg = buildFigure(spec("compare", [fixture("recon.csv")], "c.svg"));
  const t = readTable(fixture("recon.csv"));

  it("plots the pointwise absolute error of every method", () => {
    const truth = numberColumn(t, "a_true");
    for (const col of ["a_rec_spectral", "a_rec_lsq", "a_rec_backward_fd"]) {
      const method = col.slice("a_rec_".length);
      const want = numberColumn(t, col).map((v, i) => Math.abs(v - truth[i]));
      expect(sameNumbers(readbackSeries(svg, method, "data-y"), want)).toBe(true);
      expect(legendCount(svg, method)).toBe(1);
    }
  });

  it("exact agreement (zero error) does not break the log axis", () => {
    const path = join(tmp, "exact.csv");
    writeFileSync(path, "x,a_true,a_rec_spectral\n-1.0,0.0,0.0\n0.0,1.0,1.0\n1.0,0.0,0.0\n");
    const flat = buildFigure(spec("compare", [path], "exact.svg"));
    expect(flat).not.toContain("NaN");
    expect(readbackSeries(flat, "spectral", "data-y")).toEqual([0, 0, 0]);
  });

  it("a file without reconstruction columns is a schema error", () => {
    const path = join(tmp, "norec.csv");
    writeFileSync(path, "x,a_true\n0.0,1.0\n");
    expect(() => buildFigure(spec("compare", [path], "x.svg"))).toThrow(/no a_rec_\* columns/);
  });
});

describe("field heatmap", () => {
  const svg = buildFigure(spec("field-heatmap", [fixture("field.csv")], "f.svg"));
  const t = readTable(fixture("field.csv"));

  it("stores the full grid for read-back in file order", () => {
    // the harness writes x-major rows, matching the embedded x-major order
    expect(sameNumbers(readbackCells(svg, "data-u"), numberColumn(t, "u"))).toBe(true);
    const xs = readbackCells(svg, "data-x");
    const ts = readbackCells(svg, "data-t");
    expect(xs.length).toBe(61);
    expect(ts.length).toBe(61);
    expect(xs[0]).toBe(-3);
    expect(xs[60]).toBe(3);
    expect(ts[0]).toBe(0);
  });

  it("draws one cell per sample", () => {
    const cells = svg.slice(svg.indexOf('<g class="cells"'), svg.indexOf("</g>"));
    expect((cells.match(/<rect /g) ?? []).length).toBe(61 * 61);
  });

  it("rejects duplicate samples", () => {
    const path = join(tmp, "dup.csv");
    writeFileSync(path, "x,t,u\n0.0,0.0,1.0\n0.0,0.0,2.0\n");
    expect(() => buildFigure(spec("field-heatmap", [path], "x.svg"))).toThrow(/duplicate sample/);
  });

  it("rejects an incomplete grid", () => {
    const path = join(tmp, "gap.csv");
    writeFileSync(path, "x,t,u\n0.0,0.0,1.0\n0.0,1.0,1.0\n1.0,0.0,1.0\n");
    expect(() => buildFigure(spec("field-heatmap", [path], "x.svg"))).toThrow(/incomplete grid/);
  });
});

describe("render contract", () => {
  it("writes exactly the returned svg and is idempotent", () => {
    const s = spec("trace", [fixture("trace.csv")], "w.svg");
    const first = renderFigure(s);
    expect(readFileSync(s.output, "utf8")).toBe(first);
    const second = renderFigure(s);
    expect(second).toBe(first);
    expect(readFileSync(s.output, "utf8")).toBe(first);
  });

  it("does not mutate its inputs", () => {
    const path = fixture("recon.csv");
    const before = readFileSync(path);
    renderFigure(spec("overlay", [path], "m.svg"));
    expect(readFileSync(path).equals(before)).toBe(true);
  });

  it("build output is deterministic across calls", () => {
    const s = spec("field-heatmap", [fixture("field.csv")], "d.svg");
    expect(buildFigure(s)).toBe(buildFigure(s));
  });

  it("an unwritable output path is an I/O error", () => {
    const s = spec("trace", [fixture("trace.csv")], "x.svg");
    expect(() => renderFigure({ ...s, output: "/no/such/dir/x.svg" })).toThrow(IoError);
  });

  it("a missing input is an I/O error and leaves no output file", () => {
    const out = join(tmp, "never.svg");
    expect(() => renderFigure({ kind: "trace", inputs: ["/nope.csv"], output: out })).toThrow(IoError);
    expect(() => readFileSync(out)).toThrow();
  });

  it("single-input kinds reject extra inputs", () => {
    const two = [fixture("trace.csv"), fixture("trace.csv")];
    expect(() => buildFigure({ kind: "trace", inputs: two, output: "x.svg" })).toThrow(UsageError);
    expect(() => buildFigure({ kind: "overlay", inputs: two, output: "x.svg" })).toThrow(/exactly one/);
  });

  it("rejects unknown kinds and empty input lists", () => {
    expect(() =>
      buildFigure({ kind: "pie" as never, inputs: ["a.csv"], output: "x.svg" }),
    ).toThrow(/unknown figure kind/);
    expect(() => buildFigure({ kind: "sweep", inputs: [], output: "x.svg" })).toThrow(UsageError);
  });

  it("schema errors are CsvError, not usage errors", () => {
    expect(() => buildFigure(spec("sweep", [fixture("recon.csv")], "x.svg"))).toThrow(CsvError);
    expect(() => buildFigure(spec("sweep", [fixture("recon.csv")], "x.svg"))).toThrow(
      /missing column "param_value"/,
    );
  });
});
