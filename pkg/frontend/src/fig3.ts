import { column, parseCsv, requireColumns, Table } from "./csv";
import { drawFrame } from "./axes";
import { Canvas, Color } from "./raster";
import { encodePng } from "./png";

export const FIG3_COLUMNS = ["angle", "blochRadius", "purity_of_rho"];

/** Map state purity in [1/2, 1] onto a cool-to-warm marker color. */
function purityColor(purity: number): Color {
  const t = Math.min(Math.max((purity - 0.5) / 0.5, 0), 1);
  return [Math.round(60 + 180 * t), 60, Math.round(200 - 160 * t), 90];
}

export function renderFig3Table(table: Table, width = 800, height = 560): Buffer {
  const [angleIdx, radiusIdx, purityIdx] = requireColumns(table, FIG3_COLUMNS);
  const angle = column(table, angleIdx);
  const radius = column(table, radiusIdx);
  const purity = column(table, purityIdx);

  const canvas = new Canvas(width, height);
  const frame = drawFrame(
    canvas,
    0,
    Math.PI,
    0,
    1.02,
    "normalized uncertainty matrix purity vs incompatibility",
    "angle(n1, n2)",
    "blochRadius",
  );
  for (let i = 0; i < angle.length; i++) {
    canvas.dot(frame.x.toPixel(angle[i]), frame.y.toPixel(radius[i]), 3, purityColor(purity[i]));
  }
  return encodePng(canvas.width, canvas.height, canvas.pixels);
}

export function renderFig3(csvText: string, width = 800, height = 560): Buffer {
  return renderFig3Table(parseCsv(csvText), width, height);
}
