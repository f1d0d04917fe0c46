"""Cut-and-glue operations on combinatorial manifolds.

1-dimensional 0-surgery removes two arcs from a curve and reconnects the
four loose ends either straight (two circles from one) or crosswise (one
circle).  2-dimensional 0-surgery swaps a pair of disc sites for a tube;
2-dimensional 1-surgery swaps an annulus site for two cone caps.  Gluings
carry a rotation offset and an optional orientation reversal; the reversal
is an extension beyond the rotations the source material uses (it produces
non-orientable results and exists as a deliberate negative test surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .manifolds import (
    OneManifold,
    Surface,
    Triangle,
    _edges_of,
    _ukey,
    compact_surface,
)


class InvalidSite(ValueError):
    """Raised when a surgery site fails validation."""


MAX_BOUNDARY_SUBDIVISIONS = 64


@dataclass(frozen=True)
class GluingMap:
    """Boundary identification: rotate by ``rotation`` arcs/edges and
    reverse direction iff ``orientation_flip``."""

    rotation: int = 0
    orientation_flip: bool = False

    def normalized(self, boundary_len: int) -> "GluingMap":
        return GluingMap(self.rotation % boundary_len, self.orientation_flip)

    def inverse(self, boundary_len: int) -> "GluingMap":
        if self.orientation_flip:
            return self  # a flip composed with itself is the identity
        return GluingMap((-self.rotation) % boundary_len, False)


@dataclass(frozen=True)
class CurveSite:
    """The two removed arcs of a 1-dimensional 0-surgery."""

    arcs: tuple[int, int]


@dataclass(frozen=True)
class DiscPairSite:
    """Two disjoint disc-shaped triangle sets (indices into the surface)."""

    disc_a: tuple[int, ...]
    disc_b: tuple[int, ...]


@dataclass(frozen=True)
class AnnulusSite:
    """An annulus-shaped triangle set (indices into the surface)."""

    triangles: tuple[int, ...]


# ---------------------------------------------------------------------------
# 1-dimensional 0-surgery
# ---------------------------------------------------------------------------

def surgery_1d_0(m: OneManifold, site: CurveSite, g: GluingMap) -> OneManifold:
    """Remove the two site arcs and reconnect the four endpoints.

    With ``orientation_flip=False`` each loose piece is closed straight
    (one circle becomes two); with ``orientation_flip=True`` the ends are
    joined crosswise (one circle stays one circle, with a half twist).
    """
    a, b = site.arcs
    if a == b:
        raise InvalidSite("site arcs must be distinct")
    arcs = m.arcs
    if a not in arcs or b not in arcs:
        raise InvalidSite("site arcs missing from the manifold")

    # node graph: junction ids are assigned per container
    next_node = 0
    ends: dict[int, tuple[int, int]] = {}  # arc -> (tail node, head node)
    boundary_nodes: list[int] = []
    for cyc in m.cycles:
        base = next_node
        n = len(cyc)
        for k, arc in enumerate(cyc):
            ends[arc] = (base + k, base + (k + 1) % n)
        next_node += n
    for ch in m.chains:
        base = next_node
        for k, arc in enumerate(ch):
            ends[arc] = (base + k, base + k + 1)
        next_node += len(ch) + 1
        boundary_nodes.extend((base, base + len(ch)))

    u1, u2 = ends[a]
    u3, u4 = ends[b]
    if {u1, u2} & {u3, u4}:
        raise InvalidSite("site arcs are adjacent; removed segments must be disjoint")

    fresh = max(arcs) + 1
    adj: dict[int, list[tuple[int, int]]] = {}  # node -> [(arc, other node)]
    for arc, (t, h) in ends.items():
        if arc in (a, b):
            continue
        adj.setdefault(t, []).append((arc, h))
        adj.setdefault(h, []).append((arc, t))
    if g.orientation_flip:
        joins = [(u1, u3), (u2, u4)]
    else:
        joins = [(u2, u3), (u4, u1)]
    for arc_id, (x, y) in zip((fresh, fresh + 1), joins):
        adj.setdefault(x, []).append((arc_id, y))
        adj.setdefault(y, []).append((arc_id, x))

    return _rebuild_curve(adj)


def _rebuild_curve(adj: dict[int, list[tuple[int, int]]]) -> OneManifold:
    cycles: list[tuple[int, ...]] = []
    chains: list[tuple[int, ...]] = []
    visited_arcs: set[int] = set()

    degree = {n: len(v) for n, v in adj.items()}
    # walk open paths first (starting at degree-1 nodes), then leftover cycles
    starts = sorted(n for n, d in degree.items() if d == 1)
    for s in starts:
        path = _walk(adj, s, visited_arcs)
        if path:
            chains.append(_canonical_chain(path))
    for n in sorted(adj):
        for arc, _ in adj[n]:
            if arc not in visited_arcs:
                cyc = _walk(adj, n, visited_arcs)
                cycles.append(_canonical_cycle(cyc))
    cycles.sort()
    chains.sort()
    return OneManifold(tuple(cycles), tuple(chains))


def _walk(adj, start: int, visited_arcs: set[int]) -> list[int]:
    out: list[int] = []
    node = start
    while True:
        step = None
        for arc, other in sorted(adj[node]):
            if arc not in visited_arcs:
                step = (arc, other)
                break
        if step is None:
            return out
        visited_arcs.add(step[0])
        out.append(step[0])
        node = step[1]


def _canonical_cycle(cyc: list[int]) -> tuple[int, ...]:
    best = None
    n = len(cyc)
    for seq in (cyc, cyc[::-1]):
        for i in range(n):
            cand = tuple(seq[i:] + seq[:i])
            if best is None or cand < best:
                best = cand
    return best


def _canonical_chain(ch: list[int]) -> tuple[int, ...]:
    rev = ch[::-1]
    return tuple(min(ch, rev))


# ---------------------------------------------------------------------------
# site validation on surfaces
# ---------------------------------------------------------------------------

def _subcomplex_boundary(tris: Sequence[Triangle]) -> list[list[int]]:
    """Directed boundary cycles of a sub-complex, or raise if malformed."""
    count: dict[tuple[int, int], int] = {}
    for t in tris:
        for u, v in _edges_of(t):
            k = _ukey(u, v)
            count[k] = count.get(k, 0) + 1
    if any(c > 2 for c in count.values()):
        raise InvalidSite("site sub-complex has an edge in more than 2 triangles")
    # directed boundary edges follow the triangle orientation
    succ: dict[int, int] = {}
    for t in tris:
        for u, v in _edges_of(t):
            if count[_ukey(u, v)] == 1:
                if u in succ:
                    raise InvalidSite("site boundary is not a disjoint union of simple cycles")
                succ[u] = v
    cycles: list[list[int]] = []
    remaining = dict(succ)
    while remaining:
        start = min(remaining)
        cyc = [start]
        node = remaining.pop(start)
        while node != start:
            cyc.append(node)
            if node not in remaining:
                raise InvalidSite("site boundary does not close up")
            node = remaining.pop(node)
        cycles.append(cyc)
    return cycles


def _subcomplex_chi(tris: Sequence[Triangle]) -> int:
    verts = {v for t in tris for v in t}
    edges = {_ukey(u, v) for t in tris for u, v in _edges_of(t)}
    return len(verts) - len(edges) + len(tris)


def _connected(tris: Sequence[Triangle]) -> bool:
    if not tris:
        return False
    idx_of: dict[tuple[int, int], list[int]] = {}
    for i, t in enumerate(tris):
        for u, v in _edges_of(t):
            idx_of.setdefault(_ukey(u, v), []).append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for u, v in _edges_of(tris[i]):
            for j in idx_of[_ukey(u, v)]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(tris)


def _check_disc(tris: Sequence[Triangle], label: str) -> list[int]:
    if not tris:
        raise InvalidSite(f"{label}: empty triangle set")
    if not _connected(tris):
        raise InvalidSite(f"{label}: not edge-connected")
    if _subcomplex_chi(tris) != 1:
        raise InvalidSite(f"{label}: Euler characteristic != 1, not a disc")
    cycles = _subcomplex_boundary(tris)
    if len(cycles) != 1:
        raise InvalidSite(f"{label}: expected a single boundary cycle")
    return cycles[0]


def validate_disc_pair(s: Surface, site: DiscPairSite) -> tuple[list[int], list[int]]:
    """Check the two-disc site and return the two boundary cycles, directed
    as the *removed* discs see them (i.e. following disc orientation)."""
    for idx in site.disc_a + site.disc_b:
        if not (0 <= idx < len(s.triangles)):
            raise InvalidSite(f"triangle index {idx} out of range")
    if set(site.disc_a) & set(site.disc_b):
        raise InvalidSite("the two discs share triangles")
    tris_a = [s.triangles[i] for i in site.disc_a]
    tris_b = [s.triangles[i] for i in site.disc_b]
    cyc_a = _check_disc(tris_a, "disc A")
    cyc_b = _check_disc(tris_b, "disc B")
    va = {v for t in tris_a for v in t}
    vb = {v for t in tris_b for v in t}
    if va & vb:
        raise InvalidSite("discs share vertices")
    for u, v in (e for t in s.triangles for e in _edges_of(t)):
        if (u in va and v in vb) or (u in vb and v in va):
            raise InvalidSite("discs are adjacent (an edge joins them)")
    return cyc_a, cyc_b


def validate_annulus(s: Surface, site: AnnulusSite) -> tuple[list[int], list[int]]:
    for idx in site.triangles:
        if not (0 <= idx < len(s.triangles)):
            raise InvalidSite(f"triangle index {idx} out of range")
    tris = [s.triangles[i] for i in site.triangles]
    if not tris:
        raise InvalidSite("annulus: empty triangle set")
    if not _connected(tris):
        raise InvalidSite("annulus: not edge-connected")
    if _subcomplex_chi(tris) != 0:
        raise InvalidSite("annulus: Euler characteristic != 0")
    cycles = _subcomplex_boundary(tris)
    if len(cycles) != 2:
        raise InvalidSite("annulus: expected exactly two boundary cycles")
    if set(cycles[0]) & set(cycles[1]):
        raise InvalidSite("annulus: boundary cycles share vertices")
    return cycles[0], cycles[1]


# ---------------------------------------------------------------------------
# 2-dimensional surgeries
# ---------------------------------------------------------------------------

def _hole_cycles(remaining: Sequence[Triangle]) -> dict[int, list[int]]:
    """Map 'first vertex' -> directed boundary cycle of the holes, following
    the orientation of the remaining triangles."""
    cycles = _subcomplex_boundary(remaining)
    return {min(c): c for c in cycles}


def _rotate_to(cyc: list[int], first: int) -> list[int]:
    i = cyc.index(first)
    return cyc[i:] + cyc[:i]


def _subdivide_hole_edge(
    tris: list[Triangle], u: int, v: int, new_vertex: int
) -> None:
    """Split boundary edge (u, v) of the hole; exactly one triangle holds it."""
    for i, t in enumerate(tris):
        for x, y in _edges_of(t):
            if _ukey(x, y) == _ukey(u, v):
                a, b, c = t
                # rewrite the triangle with the edge split at new_vertex
                if (a, b) in ((u, v), (v, u)):
                    tris[i] = (a, new_vertex, c)
                    tris.append((new_vertex, b, c))
                elif (b, c) in ((u, v), (v, u)):
                    tris[i] = (a, b, new_vertex)
                    tris.append((a, new_vertex, c))
                else:
                    tris[i] = (new_vertex, b, c)
                    tris.append((a, b, new_vertex))
                return
    raise InvalidSite("boundary edge to subdivide not found")


def _match_cycle_lengths(
    tris: list[Triangle],
    cyc_short: list[int],
    cyc_long: list[int],
    next_vertex: int,
) -> tuple[list[int], int]:
    """Subdivide edges of the shorter hole cycle until lengths match."""
    needed = len(cyc_long) - len(cyc_short)
    if needed > MAX_BOUNDARY_SUBDIVISIONS:
        raise InvalidSite(
            f"boundary length mismatch needs {needed} subdivisions "
            f"(cap {MAX_BOUNDARY_SUBDIVISIONS})"
        )
    k = 0
    while len(cyc_short) < len(cyc_long):
        u = cyc_short[k % len(cyc_short)]
        v = cyc_short[(k + 1) % len(cyc_short)]
        _subdivide_hole_edge(tris, u, v, next_vertex)
        cyc_short = cyc_short[: k % len(cyc_short) + 1] + [next_vertex] + cyc_short[k % len(cyc_short) + 1 :]
        next_vertex += 1
        k += 2  # spread the subdivisions around the cycle
    return cyc_short, next_vertex


def _tube_triangles(
    cycle_a: list[int], cycle_b: list[int], g: GluingMap
) -> list[Triangle]:
    """Triangulated cylinder joining two equal-length directed hole cycles.

    Both cycles are directed by the remaining surface, so the tube traverses
    cycle A reversed; with ``orientation_flip`` the B side is traversed the
    same way as the surface, which breaks coherent orientability.
    """
    n = len(cycle_a)
    assert len(cycle_b) == n
    a = [cycle_a[(-i) % n] for i in range(n)]
    if g.orientation_flip:
        b = [cycle_b[(g.rotation - i) % n] for i in range(n)]
    else:
        b = [cycle_b[(g.rotation + i) % n] for i in range(n)]
    tris: list[Triangle] = []
    for i in range(n):
        j = (i + 1) % n
        tris.append((a[i], a[j], b[i]))
        tris.append((a[j], b[j], b[i]))
    return tris


def attach_tube(
    s: Surface, site: DiscPairSite, g: GluingMap
) -> tuple[Surface, tuple[int, ...]]:
    """2-dimensional 0-surgery returning also the tube's triangle indices
    (valid in the returned surface; handy for the inverse surgery)."""
    cyc_a_site, cyc_b_site = validate_disc_pair(s, site)
    removed = set(site.disc_a) | set(site.disc_b)
    remaining = [t for i, t in enumerate(s.triangles) if i not in removed]

    holes = _hole_cycles(remaining)
    # the hole cycles correspond to the disc boundary cycles (same vertex sets)
    key_a = min(cyc_a_site)
    key_b = min(cyc_b_site)
    if key_a not in holes or key_b not in holes:
        raise InvalidSite("disc boundaries do not match holes in the complement")
    cyc_a = holes[key_a]
    cyc_b = holes[key_b]

    nv = s.n_vertices
    if len(cyc_a) < len(cyc_b):
        cyc_a, nv = _match_cycle_lengths(remaining, cyc_a, cyc_b, nv)
    elif len(cyc_b) < len(cyc_a):
        cyc_b, nv = _match_cycle_lengths(remaining, cyc_b, cyc_a, nv)

    gm = g.normalized(len(cyc_a))
    tube = _tube_triangles(cyc_a, cyc_b, gm)
    all_tris = remaining + tube
    result = compact_surface(nv, all_tris)
    band = tuple(range(len(remaining), len(all_tris)))
    return result, band


def surgery_2d_0(s: Surface, site: DiscPairSite, g: GluingMap) -> Surface:
    """Remove two disc sites and glue a tube between the boundary circles."""
    return attach_tube(s, site, g)[0]


def surgery_2d_1(s: Surface, site: AnnulusSite, g: GluingMap) -> Surface:
    """Remove an annulus site and cap the two boundary circles with discs.

    The gluing rotation is accepted for symmetry with the 0-surgery but a
    rotated cone cap is the same complex, so it cannot change the result.
    """
    validate_annulus(s, site)
    removed = set(site.triangles)
    remaining = [t for i, t in enumerate(s.triangles) if i not in removed]

    holes = list(_hole_cycles(remaining).values())
    if len(holes) != 2:
        raise InvalidSite("removing the annulus did not leave two holes")
    nv = s.n_vertices
    tris = list(remaining)
    for cyc in holes:
        apex = nv
        nv += 1
        n = len(cyc)
        for i in range(n):
            tris.append((apex, cyc[(i + 1) % n], cyc[i]))
    return compact_surface(nv, tris)


# ---------------------------------------------------------------------------
# site search helpers
# ---------------------------------------------------------------------------

def find_disc_pair(s: Surface) -> DiscPairSite:
    """First pair of single-triangle discs that are vertex-disjoint and
    non-adjacent; deterministic scan order."""
    vsets = [set(t) for t in s.triangles]
    neighbours: dict[int, set[int]] = {v: set() for v in range(s.n_vertices)}
    for t in s.triangles:
        for u, v in _edges_of(t):
            neighbours[u].add(v)
            neighbours[v].add(u)
    for i in range(len(s.triangles)):
        for j in range(i + 1, len(s.triangles)):
            if vsets[i] & vsets[j]:
                continue
            if any(neighbours[x] & vsets[j] for x in vsets[i]):
                continue
            return DiscPairSite((i,), (j,))
    raise InvalidSite("no valid disc pair on this surface; refine it first")


def all_disc_pairs(s: Surface) -> list[DiscPairSite]:
    """Every valid single-triangle disc pair (for exhaustive checks)."""
    out = []
    vsets = [set(t) for t in s.triangles]
    neighbours: dict[int, set[int]] = {v: set() for v in range(s.n_vertices)}
    for t in s.triangles:
        for u, v in _edges_of(t):
            neighbours[u].add(v)
            neighbours[v].add(u)
    for i in range(len(s.triangles)):
        for j in range(i + 1, len(s.triangles)):
            if vsets[i] & vsets[j]:
                continue
            if any(neighbours[x] & vsets[j] for x in vsets[i]):
                continue
            out.append(DiscPairSite((i,), (j,)))
    return out
