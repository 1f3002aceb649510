/**
 * CLI: render a propamp bench CSV into a multi-panel SVG figure.
 *
 * Usage:
 *   node dist/render.js --csv results.csv --property entropy --out figure.svg
 *
 * One panel per distribution family (3 columns), solid mean lines with
 * +-1 standard-deviation bands per estimator, dashed line at the truth.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseBenchCsv } from "./csv.js";
import { renderSvg } from "./figure.js";

interface Args {
  csv: string;
  property: string;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = { property: "entropy" };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      const v = argv[++i];
      if (v === undefined) throw new Error(`missing value for ${flag}`);
      return v;
    };
    switch (flag) {
      case "--csv":
        args.csv = next();
        break;
      case "--property":
        args.property = next();
        break;
      case "--out":
        args.out = next();
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!args.csv || !args.out) {
    throw new Error("required: --csv <path> --out <path> [--property entropy]");
  }
  return args as Args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const text = readFileSync(args.csv, "utf-8");
    const records = parseBenchCsv(text);
    const svg = renderSvg({ records, property: args.property });
    writeFileSync(args.out, svg + "\n", "utf-8");
    console.error(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("render.js")) {
  process.exit(main(process.argv.slice(2)));
}
