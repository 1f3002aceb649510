/**
 * Parser for the bench CSV schema:
 *
 *   property,family,estimator,n,trials,true_value,mean_estimate,mae,std_dev
 *
 * Fields may be double-quoted (family specs carry commas, e.g.
 * "zipf:k=1000,power=1"); quotes inside quoted fields are doubled.
 */

export interface BenchRecord {
  property: string;
  family: string;
  estimator: string;
  n: number;
  trials: number;
  true_value: number;
  mean_estimate: number;
  mae: number;
  std_dev: number;
}

export const CSV_HEADER = [
  "property",
  "family",
  "estimator",
  "n",
  "trials",
  "true_value",
  "mean_estimate",
  "mae",
  "std_dev",
];

function splitCsvLine(line: string): string[] {
  const fields: string[] = [];
  let cur = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          cur += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      fields.push(cur);
      cur = "";
    } else {
      cur += ch;
    }
  }
  if (quoted) {
    throw new Error(`unterminated quote in CSV line: ${line}`);
  }
  fields.push(cur);
  return fields;
}

function toNumber(raw: string, column: string, lineNo: number): number {
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new Error(`line ${lineNo}: column ${column} is not a finite number: ${raw}`);
  }
  return v;
}

export function parseBenchCsv(text: string): BenchRecord[] {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: missing schema header");
  }
  const header = splitCsvLine(lines[0]);
  if (header.length !== CSV_HEADER.length || header.some((h, i) => h !== CSV_HEADER[i])) {
    throw new Error(
      `CSV header does not match the bench schema (got: ${lines[0]})`,
    );
  }
  if (lines.length === 1) {
    throw new Error("no records: CSV contains only the schema header");
  }
  const records: BenchRecord[] = [];
  for (let i = 1; i < lines.length; i++) {
    const f = splitCsvLine(lines[i]);
    if (f.length !== CSV_HEADER.length) {
      throw new Error(`line ${i + 1}: expected ${CSV_HEADER.length} fields, got ${f.length}`);
    }
    records.push({
      property: f[0],
      family: f[1],
      estimator: f[2],
      n: toNumber(f[3], "n", i + 1),
      trials: toNumber(f[4], "trials", i + 1),
      true_value: toNumber(f[5], "true_value", i + 1),
      mean_estimate: toNumber(f[6], "mean_estimate", i + 1),
      mae: toNumber(f[7], "mae", i + 1),
      std_dev: toNumber(f[8], "std_dev", i + 1),
    });
  }
  return records;
}
