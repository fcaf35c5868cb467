// Canvas drawing of a server-validated state snapshot.

import type { StatePayload, Vec } from "./protocol.js";
import { toScreen, Viewport } from "./geometry.js";

const COLORS = {
  arena: "#f4f1e8",
  wall: "#3b3a36",
  hole: "#d8d2c0",
  evader: "#c0392b",
  pursuer: "#2c5f8a",
  disk: "rgba(192, 57, 43, 0.15)",
  diskEdge: "rgba(192, 57, 43, 0.5)",
  guard: "#7d3c98",
  projection: "#7d3c98",
};

function tracePath(ctx: CanvasRenderingContext2D, v: Viewport, ring: Vec[]) {
  ring.forEach((p, i) => {
    const [x, y] = toScreen(v, p);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.closePath();
}

function dot(ctx: CanvasRenderingContext2D, v: Viewport, p: Vec, r: number, color: string) {
  const [x, y] = toScreen(v, p);
  ctx.beginPath();
  ctx.arc(x, y, r, 0, 2 * Math.PI);
  ctx.fillStyle = color;
  ctx.fill();
}

export function render(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  state: StatePayload,
  banner: string,
) {
  const { width } = ctx.canvas;
  ctx.clearRect(0, 0, width, v.height);

  // arena with holes (even-odd fill)
  ctx.beginPath();
  tracePath(ctx, v, state.polygon.outer);
  for (const hole of state.polygon.holes) tracePath(ctx, v, hole);
  ctx.fillStyle = COLORS.arena;
  ctx.fill("evenodd");
  ctx.strokeStyle = COLORS.wall;
  ctx.lineWidth = 2;
  ctx.stroke();
  for (const hole of state.polygon.holes) {
    ctx.beginPath();
    tracePath(ctx, v, hole);
    ctx.fillStyle = COLORS.hole;
    ctx.fill();
    ctx.stroke();
  }

  // reachable disk (only while the human may move)
  if (!state.captured && state.reachable.length >= 3) {
    ctx.beginPath();
    tracePath(ctx, v, state.reachable);
    ctx.fillStyle = COLORS.disk;
    ctx.fill();
    ctx.strokeStyle = COLORS.diskEdge;
    ctx.lineWidth = 1;
    ctx.stroke();
  }

  // guard projections
  for (const guard of state.guards) {
    dot(ctx, v, guard.pt, 7, COLORS.projection);
    const [gx, gy] = toScreen(v, guard.pt);
    ctx.strokeStyle = COLORS.guard;
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(gx, gy, 11, 0, 2 * Math.PI);
    ctx.stroke();
  }

  // agents
  for (const p of state.pursuers) dot(ctx, v, p, 6, COLORS.pursuer);
  dot(ctx, v, state.evader, 6, COLORS.evader);

  // phase banner + turn counter
  ctx.fillStyle = COLORS.wall;
  ctx.font = "14px system-ui, sans-serif";
  ctx.fillText(`turn ${state.turn}  |  ${state.phase}  ${banner}`, 12, 20);
}
