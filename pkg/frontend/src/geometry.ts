// Screen mapping and the local click pre-check. The reachable disk arrives
// from the server as a 64-gon (geodesic disks are non-convex near holes, so
// the client must never approximate its own); the pre-check only saves a
// round trip for clearly-out clicks, the server stays authoritative.

import type { PolygonData, Vec } from "./protocol.js";

export interface Viewport {
  scale: number;
  ox: number;
  oy: number;
  height: number;
}

// Uniform scale + translate fitting the polygon bounding box with 5% margin.
export function fitViewport(polygon: PolygonData, width: number, height: number): Viewport {
  let xmin = Infinity, ymin = Infinity, xmax = -Infinity, ymax = -Infinity;
  for (const [x, y] of polygon.outer) {
    xmin = Math.min(xmin, x);
    ymin = Math.min(ymin, y);
    xmax = Math.max(xmax, x);
    ymax = Math.max(ymax, y);
  }
  const spanX = xmax - xmin || 1;
  const spanY = ymax - ymin || 1;
  const margin = 0.05;
  const scale = Math.min(
    (width * (1 - 2 * margin)) / spanX,
    (height * (1 - 2 * margin)) / spanY,
  );
  const ox = (width - scale * (xmin + xmax)) / 2;
  const oy = (height + scale * (ymin + ymax)) / 2;
  return { scale, ox, oy, height };
}

export function toScreen(v: Viewport, p: Vec): Vec {
  return [v.ox + v.scale * p[0], v.oy - v.scale * p[1]];
}

export function toWorld(v: Viewport, p: Vec): Vec {
  return [(p[0] - v.ox) / v.scale, (v.oy - p[1]) / v.scale];
}

// Ray-crossing point-in-polygon; boundary points count as inside (the
// engine's closed-region model) via a small epsilon-pad on the test.
export function pointInRing(p: Vec, ring: Vec[]): boolean {
  const [x, y] = p;
  let inside = false;
  for (let i = 0, j = ring.length - 1; i < ring.length; j = i++) {
    const [xi, yi] = ring[i];
    const [xj, yj] = ring[j];
    if (yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

export function distToRing(p: Vec, ring: Vec[]): number {
  let best = Infinity;
  for (let i = 0, j = ring.length - 1; i < ring.length; j = i++) {
    best = Math.min(best, distToSegment(p, ring[j], ring[i]));
  }
  return best;
}

function distToSegment(p: Vec, a: Vec, b: Vec): number {
  const dx = b[0] - a[0];
  const dy = b[1] - a[1];
  const L2 = dx * dx + dy * dy || 1e-30;
  let t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2;
  t = Math.max(0, Math.min(1, t));
  const qx = a[0] + t * dx;
  const qy = a[1] + t * dy;
  return Math.hypot(p[0] - qx, p[1] - qy);
}

export function insideReachableDisk(p: Vec, disk: Vec[], tol = 1e-9): boolean {
  if (disk.length < 3) return false;
  return pointInRing(p, disk) || distToRing(p, disk) <= tol;
}
