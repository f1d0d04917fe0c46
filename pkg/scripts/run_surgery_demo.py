#!/usr/bin/env python3
"""Walk the cut-and-glue zoo once and leave the artifacts in out/surgery/.

Covers: circle splitting and its twisted variant, drilling a sphere into a
torus and cutting it back, the genus ladder, the layered families with
their limit rules, and the level-set frames of the reconnection.
"""

import pathlib
import sys

from toposurge.manifolds import build_standard, globe, globe_band, globe_north_cap, globe_south_cap, invariants
from toposurge.morse import morse_frames
from toposurge.serialize import (
    atomic_write_text,
    complex_to_dict,
    dumps,
    family_to_dict,
    frame_to_dict,
    invariants_to_dict,
)
from toposurge.solid import cross_section_check, solid_surgery
from toposurge.surgery import (
    AnnulusSite,
    CurveSite,
    DiscPairSite,
    GluingMap,
    attach_tube,
    surgery_1d_0,
    surgery_2d_1,
)
from toposurge.svgplot import frame_svg


def main(out_dir="out/surgery"):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    log = []

    def record(name, m):
        rep = invariants(m)
        log.append({"step": name, "invariants": invariants_to_dict(rep)})
        atomic_write_text(
            str(out / f"{name}.json"),
            dumps({"complex": complex_to_dict(m), "invariants": invariants_to_dict(rep)}),
        )
        print(f"{name}: {rep}")

    c = build_standard("circle", 8)
    record("circle", c)
    record("circle_split", surgery_1d_0(c, CurveSite((1, 5)), GluingMap()))
    record("circle_twisted", surgery_1d_0(c, CurveSite((1, 5)), GluingMap(orientation_flip=True)))

    sph = globe(3, 6)
    record("sphere", sph)
    polar = DiscPairSite(globe_north_cap(6), globe_south_cap(3, 6))
    torus, tube = attach_tube(sph, polar, GluingMap())
    record("sphere_drilled", torus)
    record("torus_cut_back", surgery_2d_1(torus, AnnulusSite(tube), GluingMap()))
    record("sphere_split", surgery_2d_1(sph, AnnulusSite(globe_band(1, 6)), GluingMap()))

    for g in range(4):
        record(f"genus_{g}", build_standard("genus_g", g))

    for kind in ("solid_1d_0", "solid_2d_0", "solid_2d_1"):
        fam_in, fam_out = solid_surgery(kind, 4)
        doc = {
            "input": family_to_dict(fam_in),
            "output": family_to_dict(fam_out),
            "sections_match": cross_section_check(fam_out).match,
        }
        atomic_write_text(str(out / f"{kind}.json"), dumps(doc))
        print(f"{kind}: limit {fam_in.limit} -> {fam_out.limit}")

    frames = morse_frames([-1.0, -0.5, 0.0, 0.5, 1.0])
    for i, f in enumerate(frames):
        atomic_write_text(str(out / f"levelset_{i}.svg"), frame_svg(f))
    atomic_write_text(
        str(out / "levelsets.json"), dumps({"frames": [frame_to_dict(f) for f in frames]})
    )
    atomic_write_text(str(out / "log.json"), dumps(log))
    print(f"artifacts in {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
