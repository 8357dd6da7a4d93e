import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { SchemaMismatch } from "./errors.js";
import { buildReport } from "./report.js";

const USAGE = `usage: pershock-plot plot <results-dir> --out report.html

Renders the CSV/JSON artifacts of one run directory (or a directory of
run subdirectories) into a single self-contained HTML report.`;

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: { out: { type: "string", default: "report.html" } },
    });
  } catch (err) {
    console.error(String(err));
    console.error(USAGE);
    return 2;
  }
  const [command, resultsDir] = parsed.positionals;
  if (command !== "plot" || resultsDir === undefined) {
    console.error(USAGE);
    return 2;
  }
  try {
    const html = buildReport(resultsDir);
    writeFileSync(parsed.values.out!, html);
    console.log(`wrote ${parsed.values.out}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      console.error(`schema mismatch: ${err.message}`);
    } else {
      console.error(String(err));
    }
    return 2;
  }
}
