import * as fs from "node:fs";
import * as path from "node:path";

import { renderFig1 } from "./fig1";
import { renderFig3 } from "./fig3";

export type FigureKind = "fig1" | "fig3";

const RENDERERS: Record<FigureKind, (csv: string) => Buffer> = {
  fig1: (csv) => renderFig1(csv),
  fig3: (csv) => renderFig3(csv),
};

/**
 * Render one figure from a CSV file to a PNG file. The input is never
 * touched; the output is written atomically (temp file + rename).
 */
export function renderFile(kind: FigureKind, csvPath: string, pngPath: string): void {
  const csvText = fs.readFileSync(csvPath, "utf8");
  const png = RENDERERS[kind](csvText);
  const tmp = path.join(
    path.dirname(pngPath),
    `.${path.basename(pngPath)}.tmp-${process.pid}`,
  );
  fs.writeFileSync(tmp, png);
  fs.renameSync(tmp, pngPath);
}
