import { describe, expect, it } from "vitest";

import { Canvas } from "../src/raster";

const BLACK: [number, number, number, number] = [0, 0, 0, 255];

describe("Canvas", () => {
  it("starts as solid background", () => {
    expect(new Canvas(10, 10).inkCount()).toBe(0);
  });

  it("draws a horizontal line of the expected length", () => {
    const c = new Canvas(20, 5);
    c.line(2, 2, 17, 2, BLACK);
    expect(c.inkCount()).toBe(16);
  });

  it("clips out-of-bounds drawing", () => {
    const c = new Canvas(5, 5);
    c.line(-10, 2, 20, 2, BLACK);
    expect(c.inkCount()).toBe(5);
  });

  it("dashes produce strictly less ink than solid", () => {
    const solid = new Canvas(120, 5);
    solid.line(0, 2, 119, 2, BLACK);
    const dashed = new Canvas(120, 5);
    dashed.line(0, 2, 119, 2, BLACK, 1, [4, 4]);
    expect(dashed.inkCount()).toBeGreaterThan(20);
    expect(dashed.inkCount()).toBeLessThan(solid.inkCount());
  });

  it("renders text ink that scales with glyph count", () => {
    const one = new Canvas(80, 12);
    one.text(1, 1, "a", BLACK);
    const four = new Canvas(80, 12);
    four.text(1, 1, "abcd", BLACK);
    expect(one.inkCount()).toBeGreaterThan(5);
    expect(four.inkCount()).toBeGreaterThan(2 * one.inkCount());
  });

  it("alpha blends toward the stroke color", () => {
    const c = new Canvas(3, 3);
    c.blend(1, 1, [0, 0, 0, 128]);
    const i = (1 * 3 + 1) * 4;
    expect(c.pixels[i]).toBeGreaterThan(100);
    expect(c.pixels[i]).toBeLessThan(160);
  });
});
