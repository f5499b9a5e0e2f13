import { Canvas, Color } from "./raster";

export interface Rect {
  left: number;
  top: number;
  width: number;
  height: number;
}

export interface Scale {
  min: number;
  max: number;
  toPixel(v: number): number;
}

export function linearScale(min: number, max: number, pixelLo: number, pixelHi: number): Scale {
  if (!(max > min)) {
    // degenerate ranges get a symmetric pad so the data still lands inside
    const pad = Math.abs(min) > 0 ? Math.abs(min) * 0.1 : 1;
    min -= pad;
    max += pad;
  }
  const span = max - min;
  return {
    min,
    max,
    toPixel: (v: number) => pixelLo + ((v - min) / span) * (pixelHi - pixelLo),
  };
}

/** Tick positions at a "nice" step (1/2/5 times a power of ten). */
export function niceTicks(min: number, max: number, target = 5): number[] {
  if (!(max > min)) return [min];
  const rawStep = (max - min) / Math.max(target, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  const first = Math.ceil(min / step - 1e-9) * step;
  for (let v = first; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  const text = v.toFixed(a >= 10 ? 1 : 2);
  return text.replace(/\.?0+$/, "");
}

const AXIS_COLOR: Color = [40, 40, 40, 255];
const GRID_COLOR: Color = [225, 225, 225, 255];

export interface Frame {
  plot: Rect;
  x: Scale;
  y: Scale;
}

/** Draw the plot frame, grid, ticks and labels; return the data scales. */
export function drawFrame(
  canvas: Canvas,
  xMin: number,
  xMax: number,
  yMin: number,
  yMax: number,
  title: string,
  xLabel: string,
  yLabel: string,
): Frame {
  const plot: Rect = {
    left: 70,
    top: 34,
    width: canvas.width - 90,
    height: canvas.height - 88,
  };
  const x = linearScale(xMin, xMax, plot.left, plot.left + plot.width);
  const y = linearScale(yMin, yMax, plot.top + plot.height, plot.top);

  for (const t of niceTicks(x.min, x.max)) {
    const px = x.toPixel(t);
    canvas.line(px, plot.top, px, plot.top + plot.height, GRID_COLOR);
    canvas.line(px, plot.top + plot.height, px, plot.top + plot.height + 4, AXIS_COLOR);
    canvas.textCentered(px, plot.top + plot.height + 8, formatTick(t), AXIS_COLOR);
  }
  for (const t of niceTicks(y.min, y.max)) {
    const py = y.toPixel(t);
    canvas.line(plot.left, py, plot.left + plot.width, py, GRID_COLOR);
    canvas.line(plot.left - 4, py, plot.left, py, AXIS_COLOR);
    canvas.textRight(plot.left - 7, py - 3, formatTick(t), AXIS_COLOR);
  }
  // frame on top of the grid
  canvas.line(plot.left, plot.top, plot.left + plot.width, plot.top, AXIS_COLOR);
  canvas.line(plot.left, plot.top + plot.height, plot.left + plot.width, plot.top + plot.height, AXIS_COLOR);
  canvas.line(plot.left, plot.top, plot.left, plot.top + plot.height, AXIS_COLOR);
  canvas.line(plot.left + plot.width, plot.top, plot.left + plot.width, plot.top + plot.height, AXIS_COLOR);

  canvas.textCentered(plot.left + plot.width / 2, 12, title, AXIS_COLOR, 2);
  canvas.textCentered(plot.left + plot.width / 2, canvas.height - 24, xLabel, AXIS_COLOR);
  canvas.text(8, plot.top - 14, yLabel, AXIS_COLOR);
  return { plot, x, y };
}
