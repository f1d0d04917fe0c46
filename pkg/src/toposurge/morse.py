"""Level sets of the saddle x^2 - y^2 = t, extracted by marching squares.

The sweep over t shows the reconnection event of a 0-surgery: two branches
for t < 0, the singular crossing at t = 0, two branches again for t > 0 but
rotated a quarter turn.  The grid extraction cannot represent the exact
node, so frames within grid tolerance of the saddle value are flagged
``degenerate`` instead of being given a fake branch count.
"""

from __future__ import annotations

from dataclasses import dataclass

Point = tuple[float, float]


@dataclass(frozen=True)
class LevelSetFrame:
    t: float
    box: float
    resolution: int
    polylines: tuple[tuple[Point, ...], ...]
    degenerate: bool

    @property
    def branch_count(self) -> int:
        return len(self.polylines)

    @property
    def grid_tolerance(self) -> float:
        h = 2.0 * self.box / self.resolution
        return h * h


def _saddle(x: float, y: float) -> float:
    return x * x - y * y


def morse_frames(
    t_values: list[float], box: float = 2.0, resolution: int = 64
) -> list[LevelSetFrame]:
    """Marching-squares extraction of {x^2 - y^2 = t} inside [-box, box]^2."""
    if not t_values:
        raise ValueError("empty t list")
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    if box <= 0:
        raise ValueError("box must be positive")
    return [_extract_frame(t, box, resolution) for t in t_values]


def _extract_frame(t: float, box: float, resolution: int) -> LevelSetFrame:
    n = resolution
    h = 2.0 * box / n
    xs = [-box + i * h for i in range(n + 1)]

    # corner values; exact zeros are nudged positive so contours never pass
    # through grid nodes (keeps segment chaining unambiguous)
    tiny = 1e-300
    vals = [[(_saddle(x, y) - t) or tiny for y in xs] for x in xs]

    # segments keyed by the grid edges they end on
    segments: list[tuple[tuple, tuple]] = []

    def interp(i0, j0, i1, j1):
        v0 = vals[i0][j0]
        v1 = vals[i1][j1]
        s = v0 / (v0 - v1)
        return (xs[i0] + s * (xs[i1] - xs[i0]), xs[j0] + s * (xs[j1] - xs[j0]))

    for i in range(n):
        for j in range(n):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            signs = [vals[a][b] > 0 for a, b in corners]
            if all(signs) or not any(signs):
                continue
            # cell edges: (corner index pair, edge id)
            cell_edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
            crossings = []
            for ca, cb in cell_edges:
                (ia, ja), (ib, jb) = corners[ca], corners[cb]
                if signs[ca] != signs[cb]:
                    eid = ((ia, ja), (ib, jb)) if (ia, ja) < (ib, jb) else ((ib, jb), (ia, ja))
                    crossings.append((eid, interp(ia, ja, ib, jb), ca))
            if len(crossings) == 2:
                segments.append((crossings[0][:2], crossings[1][:2]))
            elif len(crossings) == 4:
                # ambiguous saddle cell: split by the sign of the centre value
                cx = 0.25 * sum(vals[a][b] for a, b in corners)
                # order crossings by the cell edge they lie on (0..3)
                crossings.sort(key=lambda c: c[2])
                if (cx > 0) == signs[0]:
                    pairing = [(0, 3), (1, 2)]
                else:
                    pairing = [(0, 1), (2, 3)]
                for p, q in pairing:
                    segments.append((crossings[p][:2], crossings[q][:2]))

    polylines = _chain(segments)
    tol = h * h
    return LevelSetFrame(
        t=t,
        box=box,
        resolution=resolution,
        polylines=tuple(polylines),
        degenerate=abs(t) <= tol,
    )


def _chain(segments) -> list[tuple[Point, ...]]:
    """Join segments endpoint-to-endpoint via shared grid-edge keys."""
    by_edge: dict[tuple, list[int]] = {}
    for si, (a, b) in enumerate(segments):
        by_edge.setdefault(a[0], []).append(si)
        by_edge.setdefault(b[0], []).append(si)

    used = [False] * len(segments)
    polylines: list[tuple[Point, ...]] = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        (e0, p0), (e1, p1) = segments[start]
        left = _extend(segments, by_edge, used, e0)
        right = _extend(segments, by_edge, used, e1)
        pts = [p for _, p in reversed(left)] + [p0, p1] + [p for _, p in right]
        polylines.append(tuple(pts))
    polylines.sort(key=lambda pl: (len(pl), pl))
    return polylines


def _extend(segments, by_edge, used, edge_key) -> list[tuple]:
    out = []
    current = edge_key
    while True:
        nxt = None
        for si in by_edge.get(current, []):
            if not used[si]:
                nxt = si
                break
        if nxt is None:
            return out
        used[nxt] = True
        (ea, pa), (eb, pb) = segments[nxt]
        if ea == current:
            out.append((eb, pb))
            current = eb
        else:
            out.append((ea, pa))
            current = ea
