import { parseArgs } from "node:util";

import { CsvError, IoError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, FigureSpec, renderFigure, UsageError } from "./figures.js";

const USAGE = `usage: plotkit <kind> --in <csv> [--in <csv> ...] --out <figure.svg> [--title <text>] [--x-label <text>] [--y-label <text>]
kinds: ${FIGURE_KINDS.join(", ")}`;

/** Returns "help" for the help flags, otherwise a validated figure spec. */
export function parseCli(argv: string[]): FigureSpec | "help" {
  if (argv.length === 0) throw new UsageError(`missing figure kind\n${USAGE}`);
  if (argv[0] === "--help" || argv[0] === "-h") return "help";
  const kind = argv[0];
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new UsageError(`unknown figure kind "${kind}"\n${USAGE}`);
  }
  let parsed: ReturnType<typeof parseArgs>;
  try {
    parsed = parseArgs({
      args: argv.slice(1),
      options: {
        in: { type: "string", multiple: true },
        out: { type: "string" },
        title: { type: "string" },
        "x-label": { type: "string" },
        "y-label": { type: "string" },
        help: { type: "boolean" },
      },
      allowPositionals: false,
    });
  } catch (err) {
    throw new UsageError(`${(err as Error).message}\n${USAGE}`);
  }
  const v = parsed.values as {
    in?: string[];
    out?: string;
    title?: string;
    "x-label"?: string;
    "y-label"?: string;
    help?: boolean;
  };
  if (v.help) return "help";
  const inputs = v.in ?? [];
  if (inputs.length === 0) throw new UsageError(`missing --in\n${USAGE}`);
  if (!v.out) throw new UsageError(`missing --out\n${USAGE}`);
  const out = v.out;
  if (out.toLowerCase().endsWith(".png")) {
    throw new UsageError("png output is not built in; use an .svg output path");
  }
  if (!out.toLowerCase().endsWith(".svg")) {
    throw new UsageError(`output must be an .svg path, got "${out}"`);
  }
  return {
    kind: kind as FigureKind,
    inputs,
    output: out,
    title: v.title,
    xLabel: v["x-label"],
    yLabel: v["y-label"],
  };
}

/** exit status: 0 ok, 2 usage, 3 unreadable or malformed input */
export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    const parsed = parseCli(argv);
    if (parsed === "help") {
      console.log(USAGE);
      return 0;
    }
    spec = parsed;
    renderFigure(spec);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`plotkit: ${err.message}`);
      return 2;
    }
    if (err instanceof IoError || err instanceof CsvError) {
      console.error(`plotkit: ${err.message}`);
      return 3;
    }
    throw err;
  }
  console.log(`wrote ${spec.output}`);
  return 0;
}
