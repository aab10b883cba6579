"""Session-oriented HTTP API for interactive play.

One session holds a graph and a firing history; the current position is
always reproducible by replaying the history from the initial position.
Sessions persist as append-only JSON-line logs (one header line, one
line per event) so a restarted service can replay them; the in-memory
cache is written through on every mutation.  Mutations on a session are
serialized by a per-session lock.

All request and response node indices are 1-based.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import corpus
from .errors import GraphError
from .families import classify
from .game import Status, fire_unchecked, fireable, play, snap, snap_scale
from .graphs import EGCMGraph
from .words import is_reduced

DEFAULT_STEP_CAP = 10_000


class ApiError(Exception):
    def __init__(self, status_code: int, code: str, message: str):
        self.status_code = status_code
        self.code = code
        self.message = message
        super().__init__(message)


@dataclass
class Session:
    id: str
    graph: EGCMGraph
    graph_doc: dict
    initial: tuple
    firings: list = field(default_factory=list)
    step_cap: int = DEFAULT_STEP_CAP
    expected_total: int = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def eps(self) -> float:
        return snap_scale(self.initial)

    def replay(self) -> list:
        """All intermediate positions, initial included."""
        eps = self.eps
        lam = snap(self.initial, eps)
        out = [lam]
        for i in self.firings:
            lam = snap(fire_unchecked(self.graph, lam, i), eps)
            out.append(lam)
        return out

    @property
    def current(self) -> tuple:
        return self.replay()[-1]

    def status(self) -> str:
        current = self.current
        moves = fireable(self.graph, current, self.eps)
        if not moves:
            return "Terminal"
        if len(self.firings) >= self.step_cap:
            return "BoundExceeded"
        return "Active"


class SessionStore:
    def __init__(self, directory=None):
        if directory is None:
            directory = os.environ.get(
                "NUMBERSGAME_SESSION_DIR",
                os.path.join(tempfile.gettempdir(), "numbersgame-sessions"),
            )
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.sessions: dict = {}

    def _log_path(self, sid: str) -> Path:
        return self.directory / f"{sid}.jsonl"

    def create(self, graph: EGCMGraph, graph_doc: dict, position, step_cap: int) -> Session:
        sid = uuid.uuid4().hex[:12]
        session = Session(id=sid, graph=graph, graph_doc=graph_doc,
                          initial=tuple(position), step_cap=step_cap)
        if classify(graph).matched and all(v >= 0 for v in position):
            rec = play(graph, position, step_cap=step_cap)
            if rec.status is Status.TERMINAL:
                session.expected_total = len(rec.firings)
        self.sessions[sid] = session
        with open(self._log_path(sid), "w") as fh:
            fh.write(json.dumps({"graph": graph_doc, "initial": list(position),
                                 "step_cap": step_cap}) + "\n")
        return session

    def append(self, session: Session, event: dict) -> None:
        with open(self._log_path(session.id), "a") as fh:
            fh.write(json.dumps(event) + "\n")

    def get(self, sid: str) -> Session:
        if sid in self.sessions:
            return self.sessions[sid]
        path = self._log_path(sid)
        if not path.exists():
            raise ApiError(404, "UnknownSession", f"no session {sid}")
        session = self._load(sid, path)
        self.sessions[sid] = session
        return session

    def _load(self, sid: str, path: Path) -> Session:
        with open(path) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
        header = lines[0]
        graph = EGCMGraph.from_json(header["graph"])
        session = Session(id=sid, graph=graph, graph_doc=header["graph"],
                          initial=tuple(header["initial"]),
                          step_cap=header.get("step_cap", DEFAULT_STEP_CAP))
        for event in lines[1:]:
            if "fire" in event:
                session.firings.append(event["fire"] - 1)
            elif event.get("undo"):
                session.firings.pop()
        if classify(graph).matched and all(v >= 0 for v in session.initial):
            rec = play(graph, session.initial, step_cap=session.step_cap)
            if rec.status is Status.TERMINAL:
                session.expected_total = len(rec.firings)
        return session


def _analysis(session: Session) -> dict:
    g = session.graph
    positions = session.replay()
    current = positions[-1]
    eps = session.eps
    word = tuple(session.firings)
    assert is_reduced(g, word), "session history stopped being a reduced word"
    fired_values = [positions[k][i] for k, i in enumerate(session.firings)]
    adjacency_flag = any(
        current[i] > eps and current[j] > eps for i, j in g.edges
    )
    prediction = None
    if session.expected_total is not None:
        prediction = session.expected_total - len(session.firings)
    return {
        "fireable": [i + 1 for i in fireable(g, current, eps)],
        "word_so_far": [i + 1 for i in word],
        "is_reduced": True,
        "adjacency_flag": adjacency_flag,
        "functional_values": fired_values,
        "terminal_prediction": prediction,
    }


def _session_view(session: Session) -> dict:
    g = session.graph
    positions = session.replay()
    return {
        "id": session.id,
        "status": session.status(),
        "n": g.n,
        "graph": {
            "n": g.n,
            "amplitudes": [list(row) for row in g.rows],
            "edges": [
                {
                    "i": i + 1,
                    "j": j + 1,
                    "p": -g.amplitudes[i, j],
                    "q": -g.amplitudes[j, i],
                    "m": "inf" if g.label(i, j) == float("inf") else g.label(i, j),
                }
                for i, j in g.edges
            ],
        },
        "initial": list(positions[0]),
        "current": list(positions[-1]),
        "history": [
            {"node": i + 1, "position": list(positions[k + 1])}
            for k, i in enumerate(session.firings)
        ],
        "fireable": [i + 1 for i in fireable(g, positions[-1], session.eps)],
        "analysis": _analysis(session),
    }


def create_app(store_dir=None, step_cap: int = DEFAULT_STEP_CAP) -> FastAPI:
    app = FastAPI(title="numbersgame session service")
    store = SessionStore(store_dir)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code,
                            content={"error": exc.code, "message": exc.message})

    def parse_node(session: Session, body: dict) -> int:
        node = body.get("node")
        if not isinstance(node, int) or not (1 <= node <= session.graph.n):
            raise ApiError(409, "NodeNotFireable", f"bad node {node!r}")
        return node - 1

    @app.post("/sessions")
    async def create_session(body: dict):
        try:
            if "preset" in body:
                pid = body["preset"]
                try:
                    graph = corpus.load_graph(pid)
                except KeyError:
                    raise ApiError(404, "UnknownPreset", f"no preset {pid!r}")
                doc = graph.to_json()
                position = body.get("position") or list(corpus.default_position(pid, graph))
            else:
                doc = body.get("graph")
                if doc is None:
                    raise ApiError(400, "ValidationError", "need 'graph' or 'preset'")
                graph = EGCMGraph.from_json(doc)
                position = body.get("position")
            if position is None or len(position) != graph.n:
                raise ApiError(400, "ValidationError",
                               f"position must have {graph.n} entries")
            position = [float(v) for v in position]
        except (GraphError, TypeError, ValueError) as exc:
            raise ApiError(400, "ValidationError", str(exc))
        session = store.create(graph, doc, position, step_cap)
        return _session_view(session)

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return _session_view(store.get(sid))

    @app.get("/sessions/{sid}/analysis")
    async def get_analysis(sid: str):
        return _analysis(store.get(sid))

    @app.post("/sessions/{sid}/fire")
    async def fire_node(sid: str, body: dict):
        session = store.get(sid)
        with session.lock:
            node = parse_node(session, body)
            if session.status() == "BoundExceeded":
                raise ApiError(409, "BoundExceeded",
                               f"session reached its step cap {session.step_cap}")
            current = session.current
            if node not in fireable(session.graph, current, session.eps):
                raise ApiError(409, "NodeNotFireable",
                               f"node {node + 1} holds {current[node]}")
            session.firings.append(node)
            store.append(session, {"fire": node + 1})
            return _session_view(session)

    @app.post("/sessions/{sid}/whatif")
    async def whatif(sid: str, body: dict):
        session = store.get(sid)
        node = parse_node(session, body)
        current = session.current
        if node not in fireable(session.graph, current, session.eps):
            raise ApiError(409, "NodeNotFireable",
                           f"node {node + 1} holds {current[node]}")
        preview = snap(fire_unchecked(session.graph, current, node), session.eps)
        return {"position": list(preview)}

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        session = store.get(sid)
        with session.lock:
            if not session.firings:
                raise ApiError(409, "NothingToUndo", "history is empty")
            session.firings.pop()
            store.append(session, {"undo": True})
            return _session_view(session)

    @app.post("/sessions/{sid}/autoplay")
    async def autoplay(sid: str, body: dict):
        session = store.get(sid)
        with session.lock:
            strategy = body.get("strategy", "greedy")
            if strategy not in ("greedy", "random"):
                raise ApiError(400, "UnknownStrategy", f"unknown strategy {strategy!r}")
            steps = body.get("steps", 0)
            if not isinstance(steps, int) or steps < 0:
                raise ApiError(400, "ValidationError", f"bad steps {steps!r}")
            seed = body.get("seed", 0)
            budget = min(steps, session.step_cap - len(session.firings))
            rec = play(session.graph, session.current, strategy=strategy, seed=seed,
                       step_cap=max(budget, 0))
            for node in rec.firings:
                session.firings.append(node)
                store.append(session, {"fire": node + 1})
            return _session_view(session)

    @app.get("/presets")
    async def presets():
        out = []
        for pid, (name, description, _) in corpus.preset_specs().items():
            g = corpus.load_graph(pid)
            tag = classify(g) if g.is_connected() else None
            out.append({
                "id": pid,
                "name": name,
                "description": description,
                "n": g.n,
                "family": tag.name if tag else None,
                "default_position": list(corpus.default_position(pid, g)),
            })
        return {"presets": out}

    return app


app = create_app()
