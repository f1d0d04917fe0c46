"""Combinatorial 1-manifolds and triangulated closed surfaces.

Curves are cyclic (or open) sequences of abstract arc identifiers; surfaces
are oriented triangle lists over integer vertices.  Everything here is pure
combinatorics: no coordinates, no geometry.  Validity is checked eagerly on
construction so that downstream cut-and-glue code can assume manifoldness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


class InvalidManifold(ValueError):
    """Raised when a curve or surface fails its manifoldness checks."""


# ---------------------------------------------------------------------------
# 1-manifolds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OneManifold:
    """Disjoint union of circles and segments built from abstract arcs.

    ``cycles`` holds the circles (each a cyclic arc sequence, length >= 2),
    ``chains`` the segments-with-boundary (length >= 1).  Every arc id must
    appear exactly once across the whole structure.
    """

    cycles: tuple[tuple[int, ...], ...]
    chains: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        for cyc in self.cycles:
            if len(cyc) < 2:
                raise InvalidManifold(f"cycle {cyc} has fewer than 2 arcs")
            for a in cyc:
                if a in seen:
                    raise InvalidManifold(f"arc {a} appears more than once")
                seen.add(a)
        for ch in self.chains:
            if len(ch) < 1:
                raise InvalidManifold("empty chain")
            for a in ch:
                if a in seen:
                    raise InvalidManifold(f"arc {a} appears more than once")
                seen.add(a)

    @property
    def arcs(self) -> frozenset[int]:
        out = set()
        for cyc in self.cycles:
            out.update(cyc)
        for ch in self.chains:
            out.update(ch)
        return frozenset(out)

    def locate_arc(self, arc: int) -> tuple[str, int, int]:
        """Return ('cycle'|'chain', container index, position) of an arc."""
        for i, cyc in enumerate(self.cycles):
            if arc in cyc:
                return "cycle", i, cyc.index(arc)
        for i, ch in enumerate(self.chains):
            if arc in ch:
                return "chain", i, ch.index(arc)
        raise KeyError(f"arc {arc} not present")


def circle(n: int, start: int = 0) -> OneManifold:
    if n < 2:
        raise InvalidManifold("a circle needs at least 2 arcs")
    return OneManifold(cycles=(tuple(range(start, start + n)),))


def two_circles(n: int, m: int) -> OneManifold:
    if n < 2 or m < 2:
        raise InvalidManifold("each circle needs at least 2 arcs")
    return OneManifold(cycles=(tuple(range(n)), tuple(range(n, n + m))))


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------

Triangle = tuple[int, int, int]


def _edges_of(tri: Triangle) -> tuple[tuple[int, int], ...]:
    a, b, c = tri
    return ((a, b), (b, c), (c, a))


def _ukey(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Surface:
    """Closed triangulated surface: oriented triangles over 0..n_vertices-1.

    Construction checks that every edge lies in exactly two triangles and
    that every vertex link is a single cycle, i.e. the complex really is a
    closed 2-manifold.  Triangle orientations are kept as given; coherence
    is a property computed by :func:`invariants`, not a requirement.
    """

    n_vertices: int
    triangles: tuple[Triangle, ...]

    def __post_init__(self):
        if not self.triangles:
            raise InvalidManifold("surface with no triangles")
        used = set()
        for t in self.triangles:
            a, b, c = t
            if len({a, b, c}) != 3:
                raise InvalidManifold(f"degenerate triangle {t}")
            for v in t:
                if not (0 <= v < self.n_vertices):
                    raise InvalidManifold(f"vertex {v} out of range in {t}")
            used.update(t)
        if used != set(range(self.n_vertices)):
            raise InvalidManifold("unused vertex indices present")

        edge_count: dict[tuple[int, int], int] = {}
        for t in self.triangles:
            for u, v in _edges_of(t):
                k = _ukey(u, v)
                edge_count[k] = edge_count.get(k, 0) + 1
        bad = [e for e, c in edge_count.items() if c != 2]
        if bad:
            raise InvalidManifold(f"edges not shared by exactly 2 triangles: {bad[:4]}")

        # vertex links must each be a single cycle
        around: dict[int, list[tuple[int, int]]] = {v: [] for v in range(self.n_vertices)}
        for t in self.triangles:
            a, b, c = t
            around[a].append((b, c))
            around[b].append((c, a))
            around[c].append((a, b))
        for v, opp in around.items():
            if not _is_single_link_cycle(opp):
                raise InvalidManifold(f"link of vertex {v} is not a single cycle")

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for t in self.triangles:
            for u, v in _edges_of(t):
                out.add(_ukey(u, v))
        return frozenset(out)


def _is_single_link_cycle(opposite_edges: list[tuple[int, int]]) -> bool:
    # The edges opposite to v in its incident triangles must chain into one
    # closed cycle through all of them (each endpoint seen exactly twice).
    if not opposite_edges:
        return False
    deg: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for a, b in opposite_edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(d != 2 for d in deg.values()):
        return False
    # connectivity of the link graph
    start = opposite_edges[0][0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


def compact_surface(n_vertices: int, triangles: Iterable[Triangle]) -> Surface:
    """Renumber vertices to drop unused indices, then validate."""
    tris = [tuple(t) for t in triangles]
    used = sorted({v for t in tris for v in t})
    remap = {v: i for i, v in enumerate(used)}
    return Surface(len(used), tuple((remap[a], remap[b], remap[c]) for a, b, c in tris))


# ---------------------------------------------------------------------------
# Standard models
# ---------------------------------------------------------------------------

def tetra_sphere() -> Surface:
    """Boundary of the tetrahedron, coherently oriented."""
    return Surface(4, ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)))


def moebius_kantor_torus() -> Surface:
    """The 7-vertex minimal triangulation of the torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 3) % 7, (i + 2) % 7))
    return Surface(7, tuple(tris))


def subdivide(s: Surface) -> Surface:
    """1-to-4 midpoint subdivision; preserves topology and orientation."""
    mid: dict[tuple[int, int], int] = {}
    nv = s.n_vertices

    def midpoint(u: int, v: int) -> int:
        nonlocal nv
        k = _ukey(u, v)
        if k not in mid:
            mid[k] = nv
            nv += 1
        return mid[k]

    tris: list[Triangle] = []
    for a, b, c in s.triangles:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        tris.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
    return Surface(nv, tuple(tris))


def globe(n_rings: int = 3, n_seg: int = 6) -> Surface:
    """Sphere triangulated as polar caps plus latitude bands.

    Vertex 0 is the north pole, vertex 1 the south pole; ring ``j`` occupies
    vertices ``2 + j*n_seg .. 2 + (j+1)*n_seg - 1``.  Useful because its
    polar caps are canonical disc sites and its latitude bands canonical
    annulus sites.
    """
    if n_rings < 3 or n_seg < 3:
        raise InvalidManifold("globe needs n_rings >= 3 and n_seg >= 3")
    ring = lambda j, i: 2 + j * n_seg + (i % n_seg)
    tris: list[Triangle] = []
    for i in range(n_seg):  # north cap
        tris.append((0, ring(0, i), ring(0, i + 1)))
    for j in range(n_rings - 1):  # bands
        for i in range(n_seg):
            tris.append((ring(j, i + 1), ring(j, i), ring(j + 1, i)))
            tris.append((ring(j, i + 1), ring(j + 1, i), ring(j + 1, i + 1)))
    for i in range(n_seg):  # south cap
        tris.append((1, ring(n_rings - 1, i + 1), ring(n_rings - 1, i)))
    return Surface(2 + n_rings * n_seg, tuple(tris))


def globe_north_cap(n_seg: int = 6) -> tuple[int, ...]:
    return tuple(range(n_seg))


def globe_south_cap(n_rings: int = 3, n_seg: int = 6) -> tuple[int, ...]:
    total = n_seg + 2 * n_seg * (n_rings - 1) + n_seg
    return tuple(range(total - n_seg, total))


def globe_band(j: int, n_seg: int = 6) -> tuple[int, ...]:
    """Triangle indices of the latitude band between ring j and ring j+1."""
    start = n_seg + 2 * n_seg * j
    return tuple(range(start, start + 2 * n_seg))


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantReport:
    """Topological certificate: component count, Euler characteristic,
    orientability and (when defined) per-component genus."""

    components: int
    euler_characteristic: int
    orientable: bool
    genus: Optional[tuple[int, ...]]

    def matches(self, other: "InvariantReport") -> bool:
        return self == other


def invariants(m: "OneManifold | Surface") -> InvariantReport:
    if isinstance(m, OneManifold):
        comps = len(m.cycles) + len(m.chains)
        chi = len(m.chains)  # cycles contribute 0, chains 1 (= V - E)
        return InvariantReport(comps, chi, True, None)
    return _surface_invariants(m)


def _surface_invariants(s: Surface) -> InvariantReport:
    # components by union-find over vertices
    parent = list(range(s.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a, b, c in s.triangles:
        union(a, b)
        union(b, c)

    comp_of = [find(v) for v in range(s.n_vertices)]
    roots = sorted(set(comp_of))
    comp_index = {r: i for i, r in enumerate(roots)}
    n_comp = len(roots)

    v_per = [0] * n_comp
    for v in range(s.n_vertices):
        v_per[comp_index[comp_of[v]]] += 1
    e_per = [0] * n_comp
    for u, v in s.edges:
        e_per[comp_index[comp_of[u]]] += 1
    f_per = [0] * n_comp
    for t in s.triangles:
        f_per[comp_index[comp_of[t[0]]]] += 1

    chi_per = [v_per[i] - e_per[i] + f_per[i] for i in range(n_comp)]
    orientable = _orientable(s)
    genus: Optional[tuple[int, ...]] = None
    if orientable:
        genus = tuple((2 - chi) // 2 for chi in chi_per)
    return InvariantReport(n_comp, sum(chi_per), orientable, genus)


def _orientable(s: Surface) -> bool:
    """Coherent-orientation propagation across triangle adjacency."""
    # map undirected edge -> incident triangle indices
    inc: dict[tuple[int, int], list[int]] = {}
    for ti, t in enumerate(s.triangles):
        for u, v in _edges_of(t):
            inc.setdefault(_ukey(u, v), []).append(ti)

    flip = [None] * len(s.triangles)  # None = unvisited, False/True = keep/reverse

    def directed_edges(ti: int, flipped: bool):
        a, b, c = s.triangles[ti]
        if flipped:
            a, c = c, a
        return ((a, b), (b, c), (c, a))

    for seed in range(len(s.triangles)):
        if flip[seed] is not None:
            continue
        flip[seed] = False
        stack = [seed]
        while stack:
            ti = stack.pop()
            dirs = set(directed_edges(ti, flip[ti]))
            for u, v in dirs:
                for tj in inc[_ukey(u, v)]:
                    if tj == ti:
                        continue
                    # coherent iff tj traverses the shared edge as (v, u)
                    tj_plain = set(directed_edges(tj, False))
                    needs = (v, u) in tj_plain
                    want_flip = not needs
                    if flip[tj] is None:
                        flip[tj] = want_flip
                        stack.append(tj)
                    elif flip[tj] != want_flip:
                        return False
    return True


# ---------------------------------------------------------------------------
# build_standard
# ---------------------------------------------------------------------------

def build_standard(kind: str, *args: int) -> "OneManifold | Surface":
    """Construct the stock manifolds: ``circle(n)``, ``two_circles(n, m)``,
    ``sphere``, ``torus`` and ``genus_g(g)``.

    ``sphere`` is the tetrahedron boundary and ``torus`` the 7-vertex minimal
    triangulation.  ``genus_g`` surfaces are built handle-by-handle on a
    refined sphere so they always carry valid disc sites for further cutting.
    """
    if kind == "circle":
        (n,) = args
        return circle(n)
    if kind == "two_circles":
        n, m = args
        return two_circles(n, m)
    if kind == "sphere":
        return tetra_sphere()
    if kind == "torus":
        return moebius_kantor_torus()
    if kind == "genus_g":
        (g,) = args
        if g < 0:
            raise InvalidManifold("genus must be >= 0")
        from .surgery import GluingMap, find_disc_pair, surgery_2d_0

        s = subdivide(subdivide(tetra_sphere()))
        for _ in range(g):
            site = find_disc_pair(s)
            s = surgery_2d_0(s, site, GluingMap())
        return s
    raise ValueError(f"unknown kind {kind!r}")
