// Session protocol types and client. Every exchange is one JSON message
// {type, payload}; the server is authoritative and the client never
// simulates moves locally.

export type Vec = [number, number];

export interface PolygonData {
  outer: Vec[];
  holes: Vec[][];
}

export interface GuardInfo {
  label: string;
  pursuer: number;
  s: number;
  pt: Vec;
}

export interface StatePayload {
  polygon: PolygonData;
  turn: number;
  phase: string;
  evader: Vec;
  pursuers: Vec[];
  guards: GuardInfo[];
  reachable: Vec[];
  captured: boolean;
  your_turn: boolean;
  events: { type: string }[];
}

export interface Message {
  type: "state" | "move" | "reject" | "capture";
  payload: StatePayload & { reason?: string };
}

export class SessionClient {
  private inFlight = false;

  constructor(private base: string) {}

  get busy(): boolean {
    return this.inFlight;
  }

  async state(): Promise<Message> {
    const r = await fetch(this.base + "/state");
    return (await r.json()) as Message;
  }

  async newGame(): Promise<Message> {
    const r = await fetch(this.base + "/new", { method: "POST", body: "{}" });
    return (await r.json()) as Message;
  }

  // One in-flight move: concurrent submissions resolve to null locally.
  async submitMove(x: number, y: number): Promise<Message | null> {
    if (this.inFlight) return null;
    this.inFlight = true;
    try {
      const r = await fetch(this.base + "/move", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ type: "move", payload: { x, y } }),
      });
      return (await r.json()) as Message;
    } finally {
      this.inFlight = false;
    }
  }

  async trace(): Promise<string> {
    const r = await fetch(this.base + "/trace");
    return await r.text();
  }
}

export interface TraceRecord {
  type: string;
  t?: number;
  half?: string;
  e?: Vec;
  p?: Vec[];
  phase?: string;
  guards?: GuardInfo[];
  polygon?: PolygonData;
}

// Trace files are JSON lines: a header record then per-half-turn records.
export function parseTrace(text: string): TraceRecord[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0)
    .map((line) => JSON.parse(line) as TraceRecord);
}
