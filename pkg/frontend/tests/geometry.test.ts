import { describe, expect, it } from "vitest";

import { fitViewport, insideReachableDisk, pointInRing, toScreen, toWorld } from "../src/geometry.js";
import type { PolygonData, Vec } from "../src/protocol.js";

const DONUT: PolygonData = {
  outer: [
    [0, 0],
    [10, 0],
    [10, 10],
    [0, 10],
  ],
  holes: [
    [
      [4, 3],
      [4, 5],
      [6, 5],
      [6, 3],
    ],
  ],
};

describe("viewport", () => {
  it("round-trips screen and world coordinates", () => {
    const v = fitViewport(DONUT, 800, 600);
    const pts: Vec[] = [
      [0, 0],
      [10, 10],
      [3.25, 7.5],
    ];
    for (const p of pts) {
      const [wx, wy] = toWorld(v, toScreen(v, p));
      expect(wx).toBeCloseTo(p[0], 9);
      expect(wy).toBeCloseTo(p[1], 9);
    }
  });

  it("keeps a 5% margin around the polygon", () => {
    const v = fitViewport(DONUT, 800, 600);
    const [x0] = toScreen(v, [0, 0]);
    const [x1] = toScreen(v, [10, 0]);
    expect(Math.min(x0, x1)).toBeGreaterThanOrEqual(0.05 * 800 - 1e-6);
    expect(Math.max(x0, x1)).toBeLessThanOrEqual(0.95 * 800 + 1e-6);
  });

  it("y axis points up in world space", () => {
    const v = fitViewport(DONUT, 800, 600);
    const [, lowY] = toScreen(v, [5, 0]);
    const [, highY] = toScreen(v, [5, 10]);
    expect(highY).toBeLessThan(lowY);
  });
});

describe("point in ring", () => {
  it("classifies interior and exterior", () => {
    expect(pointInRing([1, 1], DONUT.outer)).toBe(true);
    expect(pointInRing([11, 1], DONUT.outer)).toBe(false);
    expect(pointInRing([5, 4], DONUT.holes[0])).toBe(true);
  });
});

describe("reachable disk pre-check", () => {
  const disk: Vec[] = [];
  for (let i = 0; i < 64; i++) {
    const th = (2 * Math.PI * i) / 64;
    disk.push([5 + Math.cos(th), 5 + Math.sin(th)]);
  }

  it("accepts points inside the disk", () => {
    expect(insideReachableDisk([5, 5], disk)).toBe(true);
    expect(insideReachableDisk([5.7, 5.1], disk)).toBe(true);
  });

  it("rejects points outside", () => {
    expect(insideReachableDisk([6.4, 5], disk)).toBe(false);
    expect(insideReachableDisk([0, 0], disk)).toBe(false);
  });

  it("accepts boundary points within tolerance", () => {
    expect(insideReachableDisk(disk[0], disk, 1e-9)).toBe(true);
  });

  it("rejects degenerate disks", () => {
    expect(insideReachableDisk([5, 5], [])).toBe(false);
  });
});
