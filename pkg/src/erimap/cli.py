"""Command line surface: bundle validation, scenario replay, live service.

    erimap validate --bundle scenarios/henkel
    erimap replay --bundle scenarios/henkel --script scenarios/henkel/scenario1.jsonl --out out/s1
    erimap serve --bundle scenarios/henkel --port 8080

``ERIMAP_LOG`` selects log verbosity (DEBUG/INFO/WARNING/ERROR).
"""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from .bundle import load_bundle, load_script
from .errors import ErimapError
from .pipeline import timeline_to_csv, timeline_to_series
from .spatial import beliefs_to_geojson

logger = logging.getLogger(__name__)


def _setup_logging() -> None:
    level = os.environ.get("ERIMAP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


@click.group()
def main() -> None:
    """Spatial belief mapping engine for emergency response."""
    _setup_logging()


@main.command()
@click.option("--bundle", "bundle_dir", required=True, type=click.Path(exists=True, file_okay=False))
def validate(bundle_dir: str) -> None:
    """Parse and cross-validate a scenario bundle."""
    try:
        bundle, engine = load_bundle(bundle_dir)
    except ErimapError as exc:
        click.echo(f"INVALID: {exc}", err=True)
        sys.exit(1)
    click.echo(
        f"OK: {len(bundle.areas)} areas, {len(bundle.net.node_ids)} nodes, "
        f"{len(bundle.zones)} threat zones, {len(bundle.scripts)} scripts"
    )


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


@main.command()
@click.option("--bundle", "bundle_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--script", "script_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--node", "node_id", default=None, help="Choropleth target node (default: first key node).")
@click.option("--state", "state", default=None, help="Choropleth target state (default: first critical state).")
def replay(bundle_dir: str, script_path: str, out_dir: str, node_id: str | None, state: str | None) -> None:
    """Replay an observation script, writing CSV, panels, and time series."""
    try:
        bundle, engine = load_bundle(bundle_dir)
        observations = load_script(Path(script_path))
    except ErimapError as exc:
        click.echo(f"ERROR: {exc}", err=True)
        sys.exit(1)

    default_node, default_state = bundle.map_target
    node_id = node_id or default_node
    if state is None:
        spec = bundle.net.node(node_id)
        state = spec.critical_states[0] if spec.critical_states else spec.states[0]

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    panels: list[Path] = []

    def render_panel(time, _snaps) -> None:
        doc = beliefs_to_geojson(
            bundle.areas, {a: engine.area_state(a) for a in engine.areas}, engine.net, node_id, state
        )
        doc["panel"] = len(panels)
        doc["time"] = time.strftime("%Y-%m-%dT%H:%M:%SZ") if time else None
        path = out / f"panel_{len(panels):03d}.geojson"
        _write_json(path, doc)
        panels.append(path)

    try:
        result = engine.replay(observations, on_time_group=render_panel)
        if not panels:
            render_panel(None, [])  # no observations: single prior panel
        (out / "timeline.csv").write_text(
            timeline_to_csv(result.snapshots, engine.net), encoding="utf-8"
        )
        _write_json(out / "timeseries.json", timeline_to_series(result.snapshots, engine.net))
    except ErimapError as exc:
        click.echo(f"ERROR: {exc}", err=True)
        sys.exit(1)

    if result.errors:
        _write_json(
            out / "rejected.json",
            {"rejected": [{"id": i, "code": c, "message": m} for i, c, m in result.errors]},
        )
        for obs_id, code, message in result.errors:
            click.echo(f"rejected {obs_id}: {code}: {message}", err=True)

    click.echo(
        f"replayed {len(observations) - len(result.errors)}/{len(observations)} observations, "
        f"{len(panels)} panels, {len(result.snapshots)} snapshots -> {out}"
    )


@main.command()
@click.option("--bundle", "bundle_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8080, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--obs-log", "obs_log", default=None, type=click.Path(dir_okay=False),
              help="Append accepted observations to this JSONL file (replayable as a script).")
def serve(bundle_dir: str, port: int, host: str, obs_log: str | None) -> None:
    """Run the live ingest/query service."""
    import uvicorn

    from .service import create_app

    try:
        bundle, engine = load_bundle(bundle_dir)
    except ErimapError as exc:
        click.echo(f"ERROR: {exc}", err=True)
        sys.exit(1)
    app = create_app(bundle, engine, obs_log=obs_log)
    uvicorn.run(app, host=host, port=port, log_level=os.environ.get("ERIMAP_LOG", "warning").lower())


if __name__ == "__main__":
    main()
