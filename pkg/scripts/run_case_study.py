#!/usr/bin/env python3
"""Replay the three case-study scripts and summarise the headline numbers.

Writes panels/CSV/time series for each script under out/<name>/ and prints
the per-step beliefs for building 17 plus the top buildings of each final
panel.

Run from the repository root:  python3 scripts/run_case_study.py
"""

import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
BUNDLE = ROOT / "scenarios" / "henkel"
OUT = ROOT / "out"

AFFECTED = "People in Building Affected"


def replay(name: str) -> Path:
    out = OUT / name
    cmd = [
        sys.executable, "-m", "erimap.cli", "replay",
        "--bundle", str(BUNDLE),
        "--script", str(BUNDLE / f"{name}.jsonl"),
        "--out", str(out),
    ]
    subprocess.run(cmd, check=True, cwd=ROOT)
    return out


def main() -> None:
    b17 = replay("building17")
    series = json.loads((b17 / "timeseries.json").read_text())
    print("\nbuilding 17 walkthrough (P(True) per key node):")
    for snap in series["areas"]["17"]:
        marginals = {n: round(d["True"], 3) for n, d in snap["marginals"].items()}
        print(f"  seq {snap['seq']:>2}  {snap['time'] or 'prior':<22} {marginals}")

    for name in ("scenario1", "scenario2"):
        out = replay(name)
        final = sorted(out.glob("panel_*.geojson"))[-1]
        doc = json.loads(final.read_text())
        ranked = sorted(
            ((f["properties"]["probability"], f["properties"]["area_id"]) for f in doc["features"]),
            reverse=True,
        )
        print(f"\n{name}: {final.name}, top buildings by P({AFFECTED}=True):")
        for prob, area_id in ranked[:5]:
            print(f"  building {area_id:>2}: {prob:.3f}")


if __name__ == "__main__":
    main()
