import { column, parseCsv, requireColumns, Table } from "./csv";
import { drawFrame } from "./axes";
import { Canvas, Color, DashPattern } from "./raster";
import { textWidth } from "./font";
import { encodePng } from "./png";

export const FIG1_COLUMNS = [
  "p",
  "sum_variances",
  "robertson",
  "theorem2_pb",
  "theorem4_reverse",
];

interface SeriesStyle {
  color: Color;
  dash: DashPattern;
  thickness: number;
}

// solid line for the variance sum, dashed for the Robertson floor,
// dash-dotted golden for the entropy bound, dotted red for the reverse bound
const STYLES: Record<string, SeriesStyle> = {
  sum_variances: { color: [34, 139, 34, 255], dash: [], thickness: 2 },
  robertson: { color: [30, 80, 200, 255], dash: [7, 5], thickness: 2 },
  theorem2_pb: { color: [218, 165, 32, 255], dash: [9, 4, 2, 4], thickness: 2 },
  theorem4_reverse: { color: [200, 30, 30, 255], dash: [2, 4], thickness: 2 },
};

export function renderFig1Table(table: Table, width = 800, height = 560): Buffer {
  const [pIdx, ...seriesIdx] = requireColumns(table, FIG1_COLUMNS);
  const p = column(table, pIdx);
  const series = FIG1_COLUMNS.slice(1).map((name, k) => ({
    name,
    values: column(table, seriesIdx[k]),
  }));

  const all = series.flatMap((s) => s.values);
  const yMin = Math.min(0, ...all);
  const yMax = Math.max(...all) * 1.05;
  const canvas = new Canvas(width, height);
  const frame = drawFrame(
    canvas,
    Math.min(...p),
    Math.max(...p),
    yMin,
    yMax,
    "variance sum and its bounds",
    "p",
    "value",
  );

  for (const s of series) {
    const style = STYLES[s.name];
    canvas.polyline(
      p.map(frame.x.toPixel),
      s.values.map(frame.y.toPixel),
      style.color,
      style.thickness,
      style.dash,
    );
  }

  // legend: line sample + column name, stacked in the upper right
  const labelW = Math.max(...series.map((s) => textWidth(s.name)));
  const legendW = labelW + 46;
  const legendX = frame.plot.left + frame.plot.width - legendW - 10;
  let legendY = frame.plot.top + 10;
  canvas.fillRect(legendX - 6, legendY - 6, legendW + 12, series.length * 14 + 10, [255, 255, 255, 230]);
  for (const s of series) {
    const style = STYLES[s.name];
    canvas.line(legendX, legendY + 3, legendX + 34, legendY + 3, style.color, style.thickness, style.dash);
    canvas.text(legendX + 40, legendY, s.name, [40, 40, 40, 255]);
    legendY += 14;
  }
  return encodePng(canvas.width, canvas.height, canvas.pixels);
}

export function renderFig1(csvText: string, width = 800, height = 560): Buffer {
  return renderFig1Table(parseCsv(csvText), width, height);
}
