"""Interactive human-evader session service over HTTP.

Every exchange is one length-delimited JSON message (the HTTP content-length
framing) of the form {"type": ..., "payload": ...}:

  GET  /state          -> {"type": "state", "payload": {...}}
  POST /move {x, y}    -> state | {"type": "reject"} | {"type": "capture"}
  POST /new            -> fresh game, state reply
  GET  /trace          -> the finished (or running) trace as JSON lines

State payloads carry the polygon, positions, phase, guard projections, the
evader's reachable-disk polygon (a 64-gon radial approximation; clients must
not approximate it locally) and the turn counter. The engine stays
authoritative: one in-flight move per session, everything else rejected.
"""

from __future__ import annotations

import json
import os
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .adversary import RecordedEvader, unit_disk_candidates
from .geom import Point, PolygonEnv
from .harness import Game, GameConfig, IllegalMove, save_trace, trace_bytes


class Session:
    """One game owned by one client; all access serialized by a lock."""

    def __init__(self, env: PolygonEnv, n_pursuers: int = 3, trace_dir: str = "."):
        self.env = env
        self.n_pursuers = n_pursuers
        self.trace_dir = trace_dir
        self.lock = threading.Lock()
        self.busy = False
        self.reset()

    def reset(self):
        self.game = Game(
            self.env,
            RecordedEvader([]),  # moves arrive over the wire
            config=GameConfig(n_pursuers=self.n_pursuers),
        )
        self.saved_path = None

    def reachable_disk(self) -> list[list[float]]:
        """64-gon radial approximation of the geodesic unit disk."""
        import math as _m

        e = self.game.e
        shape = self.env.shape
        out = []
        for i in range(64):
            th = 2.0 * _m.pi * i / 64
            d = (_m.cos(th), _m.sin(th))
            t = max(0.0, min(shape.ray_clip(e, d, 1.0), 1.0) - 1e-9)
            out.append([e.x + t * d[0], e.y + t * d[1]])
        return out

    def state_payload(self, extra_events=()) -> dict:
        g = self.game
        return {
            "polygon": self.env.to_json(),
            "turn": g.turn,
            "phase": g.policy.phase,
            "evader": [g.e.x, g.e.y],
            "pursuers": [[p.x, p.y] for p in g.pursuers],
            "guards": g._guard_snapshot(),
            "reachable": self.reachable_disk(),
            "captured": g.captured,
            "your_turn": not g.captured,
            "events": list(extra_events),
        }

    def submit_move(self, x: float, y: float) -> dict:
        with self.lock:
            if self.busy:
                return {"type": "reject", "payload": {"reason": "not your turn (move in flight)"}}
            if self.game.captured:
                return {"type": "reject", "payload": {"reason": "game is over"}}
            self.busy = True
        try:
            with self.lock:
                target = Point(float(x), float(y))
                try:
                    n_before = len(self.game.policy.events)
                    self.game.step(target)
                except IllegalMove as ex:
                    return {"type": "reject", "payload": {"reason": ex.reason}}
                events = self.game.policy.events[n_before:]
                if self.game.captured:
                    self._persist()
                    return {"type": "capture", "payload": self.state_payload(events)}
                return {"type": "state", "payload": self.state_payload(events)}
        finally:
            self.busy = False

    def _persist(self):
        name = f"session-{int(time.time())}-{self.game.turn}.trace.jsonl"
        path = os.path.join(self.trace_dir, name)
        save_trace(self.game.trace, path)
        self.saved_path = path


def make_handler(session: Session):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _reply(self, message: dict, status: int = 200):
            body = json.dumps(message, sort_keys=True).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if self.path == "/state":
                with session.lock:
                    self._reply({"type": "state", "payload": session.state_payload()})
            elif self.path == "/trace":
                body = trace_bytes(session.game.trace)
                self.send_response(200)
                self.send_header("Content-Type", "application/jsonl")
                self.send_header("Content-Length", str(len(body)))
                self.send_header("Access-Control-Allow-Origin", "*")
                self.end_headers()
                self.wfile.write(body)
            elif self.path == "/" or self.path == "/index.html":
                self._reply({"type": "state", "payload": session.state_payload()})
            else:
                self._reply({"type": "reject", "payload": {"reason": f"unknown path {self.path}"}}, 404)

        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length) if length else b"{}"
            if self.path == "/move":
                try:
                    data = json.loads(raw)
                    payload = data.get("payload", data)
                    x, y = float(payload["x"]), float(payload["y"])
                except (ValueError, KeyError, TypeError) as ex:
                    self._reply({"type": "reject", "payload": {"reason": f"malformed move: {ex}"}}, 400)
                    return
                self._reply(session.submit_move(x, y))
            elif self.path == "/new":
                with session.lock:
                    session.reset()
                    self._reply({"type": "state", "payload": session.state_payload()})
            else:
                self._reply({"type": "reject", "payload": {"reason": f"unknown path {self.path}"}}, 404)

    return Handler


def make_server(env: PolygonEnv, port: int = 0, trace_dir: str = ".", n_pursuers: int = 3):
    session = Session(env, n_pursuers=n_pursuers, trace_dir=trace_dir)
    server = ThreadingHTTPServer(("127.0.0.1", port), make_handler(session))
    server.session = session
    return server


def serve_session(env: PolygonEnv, port: int = 8733, trace_dir: str = ".", n_pursuers: int = 3):
    server = make_server(env, port=port, trace_dir=trace_dir, n_pursuers=n_pursuers)
    print(f"session service on http://127.0.0.1:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
