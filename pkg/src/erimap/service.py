"""HTTP service: live observation ingest, belief queries, snapshot push.

All endpoints are versioned under ``/v1``. Observation entry is
request/response (POST, acknowledged and ordered); belief snapshots are
pushed to subscribers over a server-sent-event stream. Rejections map to
machine-readable codes: 400 for validation and classification failures,
409 for hard-evidence conflicts, 410 once the engine has halted.

Accepted observations can be appended to a JSONL audit log, replayable as
a script.
"""

from __future__ import annotations

import asyncio
import json
import logging
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .bundle import ScenarioBundle
from .errors import EngineHalted, ErimapError, HardEvidenceConflict, ParseError
from .observations import parse_observation
from .pipeline import Engine
from .spatial import beliefs_to_geojson

logger = logging.getLogger(__name__)

SSE_HEARTBEAT_SECONDS = 15.0


def _status_for(exc: ErimapError) -> int:
    if isinstance(exc, HardEvidenceConflict):
        return 409
    if isinstance(exc, EngineHalted):
        return 410
    return 400


def _error_body(exc: ErimapError) -> dict:
    return {"error": {"code": exc.code, "message": str(exc)}}


def create_app(bundle: ScenarioBundle, engine: Engine, obs_log: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="erimap", version="1")
    subscribers: set[asyncio.Queue] = set()
    log_path = Path(obs_log) if obs_log else None

    def snapshot_doc(snap) -> dict:
        return snap.to_json_dict(engine.net)

    def broadcast(snaps) -> None:
        for snap in snaps:
            doc = snapshot_doc(snap)
            for q in subscribers:
                q.put_nowait(doc)

    def ingest_one(record: dict) -> tuple[dict, int]:
        try:
            obs = parse_observation(record, default_id=f"obs-{uuid.uuid4().hex[:12]}")
            snaps = engine.ingest(obs)
        except ErimapError as exc:
            body = _error_body(exc)
            body["accepted"] = False
            if isinstance(record, dict) and record.get("id"):
                body["observation_id"] = record["id"]
            return body, _status_for(exc)
        if log_path is not None:
            with open(log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(obs.to_json_dict()) + "\n")
        broadcast(snaps)
        return (
            {
                "accepted": True,
                "observation_id": obs.id,
                "snapshots": [snapshot_doc(s) for s in snaps],
            },
            200,
        )

    @app.get("/v1/health")
    async def health() -> dict:
        return {"status": "ok", "halted": engine.halted, "areas": len(engine.areas)}

    @app.get("/v1/metadata")
    async def metadata() -> dict:
        nodes = [
            {
                "id": n,
                "states": list(engine.net.states(n)),
                "critical_states": list(engine.net.node(n).critical_states),
            }
            for n in engine.net.node_ids
        ]
        target_node, target_state = bundle.map_target
        return {
            "nodes": nodes,
            "key_nodes": list(engine.key_nodes),
            "tiers": sorted(engine.rs_table.keys()),
            "areas": [
                {"id": a.id, "attributes": a.attributes} for a in bundle.areas
            ],
            "map_target": {"node": target_node, "state": target_state},
        }

    @app.post("/v1/observations")
    async def observations(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            err = ParseError(f"request body is not valid JSON: {exc}")
            return JSONResponse(_error_body(err), status_code=400)
        if isinstance(body, list):
            results = []
            for record in body:
                doc, status = ingest_one(record)
                doc["status"] = status
                results.append(doc)
            return {"results": results}
        doc, status = ingest_one(body)
        return JSONResponse(doc, status_code=status)

    @app.get("/v1/areas")
    async def areas(node: str | None = None, state: str | None = None):
        target_node, target_state = bundle.map_target
        node = node or target_node
        try:
            if state is None:
                if node == target_node:
                    state = target_state
                else:
                    spec = engine.net.node(node)
                    state = spec.critical_states[0] if spec.critical_states else spec.states[0]
            doc = beliefs_to_geojson(
                bundle.areas,
                {a: engine.area_state(a) for a in engine.areas},
                engine.net,
                node,
                state,
            )
        except ErimapError as exc:
            return JSONResponse(_error_body(exc), status_code=400)
        return doc

    @app.get("/v1/areas/{area_id}/beliefs")
    async def area_beliefs(area_id: str):
        try:
            marginals = engine.current_beliefs(area_id)
        except ErimapError as exc:
            return JSONResponse(_error_body(exc), status_code=_status_for(exc))
        return {
            "area_id": area_id,
            "confirmed": sorted(engine.area_state(area_id).confirmed),
            "marginals": {
                n: dist.as_dict(engine.net.states(n)) for n, dist in marginals.items()
            },
        }

    @app.get("/v1/areas/{area_id}/timeline")
    async def area_timeline(area_id: str):
        try:
            snaps = engine.area_timeline(area_id)
        except ErimapError as exc:
            return JSONResponse(_error_body(exc), status_code=_status_for(exc))
        return {"area_id": area_id, "snapshots": [snapshot_doc(s) for s in snaps]}

    @app.get("/v1/snapshots")
    async def snapshots(seq: int = 0):
        """Site state at per-area sequence ``seq``: for each area, its
        snapshot at or before that sequence number."""
        view: dict[str, dict] = {}
        for snap in engine.timeline:
            if snap.seq <= seq:
                view[snap.area_id] = snapshot_doc(snap)
        max_seq = max((s.seq for s in engine.timeline), default=0)
        return {"seq": seq, "max_seq": max_seq, "areas": view}

    @app.get("/v1/events")
    async def events(request: Request, since: int = -1, max_events: int = 0):
        """Server-sent snapshot stream.

        ``since``: replay the global timeline from this index (inclusive)
        before going live; -1 skips history. ``max_events``: close the
        stream after this many events (0 = never; polling/test clients).
        """
        queue: asyncio.Queue = asyncio.Queue()
        subscribers.add(queue)
        backlog = [snapshot_doc(s) for s in engine.timeline[since:]] if since >= 0 else []

        async def stream():
            sent = 0
            try:
                for doc in backlog:
                    yield f"event: snapshot\ndata: {json.dumps(doc)}\n\n"
                    sent += 1
                    if max_events and sent >= max_events:
                        return
                while True:
                    if await request.is_disconnected():
                        return
                    try:
                        doc = await asyncio.wait_for(queue.get(), timeout=SSE_HEARTBEAT_SECONDS)
                    except asyncio.TimeoutError:
                        yield ": heartbeat\n\n"
                        continue
                    yield f"event: snapshot\ndata: {json.dumps(doc)}\n\n"
                    sent += 1
                    if max_events and sent >= max_events:
                        return
            finally:
                subscribers.discard(queue)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
