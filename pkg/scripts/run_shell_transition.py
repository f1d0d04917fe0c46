#!/usr/bin/env python3
"""Sweep the reference starts of both regimes and render the nests.

Writes one CSV and one SVG per orbit into out/shells/, plus a JSON summary
of the shell verdicts.  The B/A = 1 runs sweep spherical shells; nudging
A to 2.9851 turns every one of them into a toroidal scroll.
"""

import pathlib
import sys
import time

from toposurge.dynamics import SystemParams
from toposurge.integrate import integrate
from toposurge.orbits import classify_shell
from toposurge.serialize import (
    atomic_write_text,
    dumps,
    read_trajectory_csv,
    trajectory_csv,
)
from toposurge.svgplot import trajectory_svg

CASES = [
    ("a", SystemParams(3.0, 3.0, 3.0), 200.0,
     [(1.0, 1.59, 0.81), (1.0, 1.3, 0.89), (1.0, 1.18, 0.95), (1.0, 1.08, 0.98), (1.0, 1.0, 1.0)]),
    ("b", SystemParams(2.9851, 3.0, 3.0), 2000.0,
     [(1.1075, 1.0, 1.0), (1.0, 1.0, 0.95), (1.0, 1.0, 0.9), (1.0, 1.0, 1.0)]),
]


def main(out_dir="out/shells"):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    for tag, params, t_end, ics in CASES:
        for k, ic in enumerate(ics):
            t0 = time.perf_counter()
            traj = integrate(params, ic, t_end)
            verdict = classify_shell(traj)
            stem = f"regime_{tag}_orbit{k}"
            csv_text = trajectory_csv(traj, resample_n=4000)
            atomic_write_text(str(out / f"{stem}.csv"), csv_text)
            rows = read_trajectory_csv(csv_text)
            svg = trajectory_svg(rows, projection="iso")
            atomic_write_text(str(out / f"{stem}.svg"), svg)
            summary.append(
                {
                    "regime": tag,
                    "ic": list(ic),
                    "t_end": t_end,
                    "verdict": verdict.verdict,
                    "tube_turns": verdict.evidence.get("tube_turns"),
                    "seconds": round(time.perf_counter() - t0, 2),
                }
            )
            print(f"{stem}: {verdict.verdict}  ({summary[-1]['seconds']}s)")
    atomic_write_text(str(out / "summary.json"), dumps(summary))
    print(f"wrote {len(summary)} orbits to {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
