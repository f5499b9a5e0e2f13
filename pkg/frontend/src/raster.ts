import { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor, textWidth } from "./font";

export type Color = [number, number, number, number]; // RGBA, 0-255

/** Dash pattern in pixels: [on, off, on, off, ...]; empty means solid. */
export type DashPattern = number[];

/** Software RGBA canvas with the handful of primitives the figures need. */
export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels.set(background, i * 4);
    }
  }

  /** Alpha-blend a color onto one pixel; out-of-bounds is a no-op. */
  blend(x: number, y: number, color: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    const a = color[3] / 255;
    for (let c = 0; c < 3; c++) {
      this.pixels[i + c] = Math.round(color[c] * a + this.pixels[i + c] * (1 - a));
    }
    this.pixels[i + 3] = Math.max(this.pixels[i + 3], color[3]);
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.blend(x, y, color);
      }
    }
  }

  /** Anti-alias-free line with optional thickness and dash pattern. */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    color: Color,
    thickness = 1,
    dash: DashPattern = [],
  ): void {
    const dx = x1 - x0;
    const dy = y1 - y0;
    const steps = Math.max(Math.abs(dx), Math.abs(dy), 1);
    const period = dash.reduce((s, v) => s + v, 0);
    let travelled = 0;
    const stepLen = Math.hypot(dx, dy) / steps;
    for (let s = 0; s <= steps; s++) {
      if (period > 0) {
        let phase = travelled % period;
        let on = true;
        for (const seg of dash) {
          if (phase < seg) break;
          phase -= seg;
          on = !on;
        }
        if (!on) {
          travelled += stepLen;
          continue;
        }
      }
      const x = x0 + (dx * s) / steps;
      const y = y0 + (dy * s) / steps;
      this.dot(x, y, thickness, color);
      travelled += stepLen;
    }
  }

  polyline(xs: number[], ys: number[], color: Color, thickness = 1, dash: DashPattern = []): void {
    for (let i = 1; i < xs.length; i++) {
      this.line(xs[i - 1], ys[i - 1], xs[i], ys[i], color, thickness, dash);
    }
  }

  /** Filled disc of the given pixel diameter (1 => single pixel). */
  dot(cx: number, cy: number, diameter: number, color: Color): void {
    if (diameter <= 1) {
      this.blend(cx, cy, color);
      return;
    }
    const r = diameter / 2;
    for (let y = Math.floor(cy - r); y <= Math.ceil(cy + r); y++) {
      for (let x = Math.floor(cx - r); x <= Math.ceil(cx + r); x++) {
        if ((x - cx) ** 2 + (y - cy) ** 2 <= r * r) {
          this.blend(x, y, color);
        }
      }
    }
  }

  text(x: number, y: number, s: string, color: Color, scale = 1): void {
    let cx = x;
    for (const ch of s) {
      const glyph = glyphFor(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (glyph[gy][gx] === "#") {
            this.fillRect(cx + gx * scale, y + gy * scale, scale, scale, color);
          }
        }
      }
      cx += GLYPH_ADVANCE * scale;
    }
  }

  textRight(x: number, y: number, s: string, color: Color, scale = 1): void {
    this.text(x - textWidth(s, scale), y, s, color, scale);
  }

  textCentered(x: number, y: number, s: string, color: Color, scale = 1): void {
    this.text(x - textWidth(s, scale) / 2, y, s, color, scale);
  }

  /** Count of pixels that differ from the given background (test helper). */
  inkCount(background: Color = [255, 255, 255, 255]): number {
    let n = 0;
    for (let i = 0; i < this.width * this.height; i++) {
      const j = i * 4;
      if (
        this.pixels[j] !== background[0] ||
        this.pixels[j + 1] !== background[1] ||
        this.pixels[j + 2] !== background[2]
      ) {
        n++;
      }
    }
    return n;
  }
}
