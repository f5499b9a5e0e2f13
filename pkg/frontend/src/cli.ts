import { parseArgs } from "node:util";

import { SchemaError } from "./errors";
import { FigureKind, renderFile } from "./render";

const USAGE = "usage: render <fig1|fig3> --in <csv> --out <png>";

/** Returns the process exit code: 0 ok, 1 data/render error, 2 usage. */
export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  const [command, kind] = parsed.positionals;
  if (command !== "render" || (kind !== "fig1" && kind !== "fig3")) {
    console.error(USAGE);
    return 2;
  }
  const input = parsed.values.in;
  const output = parsed.values.out;
  if (!input || !output) {
    console.error(USAGE);
    return 2;
  }
  try {
    renderFile(kind as FigureKind, input, output);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`SchemaError: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
