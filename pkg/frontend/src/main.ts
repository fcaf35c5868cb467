// Wiring: live play against the session service, plus trace replay.

import { fitViewport, insideReachableDisk, pointInRing, toWorld, Viewport } from "./geometry.js";
import { Message, parseTrace, SessionClient, StatePayload, TraceRecord } from "./protocol.js";
import { render } from "./render.js";

const canvas = document.getElementById("arena") as HTMLCanvasElement;
const ctx = canvas.getContext("2d") as CanvasRenderingContext2D;
const hint = document.getElementById("hint") as HTMLElement;
const serverInput = document.getElementById("server") as HTMLInputElement;
const newButton = document.getElementById("new-game") as HTMLButtonElement;
const replayInput = document.getElementById("replay") as HTMLInputElement;
const stepButton = document.getElementById("step") as HTMLButtonElement;

let client = new SessionClient(serverInput.value);
let view: Viewport | null = null;
let state: StatePayload | null = null;
let banner = "";

// replay mode
let frames: TraceRecord[] = [];
let frameIdx = 0;
let replayPolygon: StatePayload["polygon"] | null = null;

function show(message: string, ms = 2500) {
  hint.textContent = message;
  if (ms > 0) setTimeout(() => (hint.textContent = ""), ms);
}

function draw() {
  if (!state) return;
  view = fitViewport(state.polygon, canvas.width, canvas.height);
  render(ctx, view, state, banner);
}

function apply(message: Message) {
  if (message.type === "reject") {
    show(`rejected: ${message.payload.reason ?? "unknown"}`);
    return;
  }
  state = message.payload;
  banner = message.type === "capture" || state.captured ? "CAPTURED — input disabled" : "your move";
  draw();
}

async function refresh() {
  try {
    apply(await client.state());
  } catch (err) {
    show(`server unreachable: ${err}`, 4000);
  }
}

canvas.addEventListener("click", async (ev) => {
  if (!state || !view || frames.length > 0) return;
  if (state.captured) {
    show("game over — press New game");
    return;
  }
  if (client.busy) return; // one in-flight move; extra clicks ignored
  const rect = canvas.getBoundingClientRect();
  const world = toWorld(view, [ev.clientX - rect.left, ev.clientY - rect.top]);
  for (const hole of state.polygon.holes) {
    if (pointInRing(world, hole)) {
      show("that's inside a hole");
      return;
    }
  }
  if (!insideReachableDisk(world, state.reachable, 1e-6)) {
    show("outside your reachable disk");
    return;
  }
  const reply = await client.submitMove(world[0], world[1]);
  if (reply) apply(reply);
});

newButton.addEventListener("click", async () => {
  frames = [];
  frameIdx = 0;
  client = new SessionClient(serverInput.value);
  apply(await client.newGame());
});

// replay: load a trace file and step through identical frames
replayInput.addEventListener("change", async () => {
  const file = replayInput.files?.[0];
  if (!file) return;
  frames = parseTrace(await file.text());
  const header = frames[0];
  replayPolygon = (header.polygon ?? null) as StatePayload["polygon"] | null;
  frameIdx = 1;
  showFrame();
});

stepButton.addEventListener("click", () => {
  if (frames.length === 0) return;
  frameIdx = Math.min(frameIdx + 1, frames.length - 1);
  showFrame();
});

function showFrame() {
  const rec = frames[frameIdx];
  if (!rec || !replayPolygon) return;
  state = {
    polygon: replayPolygon,
    turn: rec.t ?? 0,
    phase: rec.phase ?? "",
    evader: rec.e ?? [0, 0],
    pursuers: rec.p ?? [],
    guards: rec.guards ?? [],
    reachable: [],
    captured: rec.phase === "CAPTURED",
    your_turn: false,
    events: [],
  };
  banner = `replay frame ${frameIdx}/${frames.length - 1} (${rec.half ?? ""})`;
  draw();
}

refresh();
