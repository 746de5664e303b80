"""Parafermionic observable on finite honeycomb trapezoids.

Lattice embedding (unit edge length, one horizontal edge per hexagon
column): "A" vertices sit at (-1/2, 0) + i (3/2, sqrt3/2) + j (3/2, -sqrt3/2)
and have neighbours in directions 0, 2pi/3, 4pi/3; "B" vertices sit one
unit east of an A vertex and have neighbours in directions pi, pi/3, -pi/3.
The start mid-edge ``a`` is the origin, on the horizontal edge whose east
end is B(1/2, 0).

The trapezoid with T hexagon columns and left height L keeps the vertices
with 0 < x < 3T/2 and (sqrt3 |y| - x) / 2 <= 3/4 + 3 (L - 1) / 2.  Its
sides are cut so that every boundary mid-edge leaves the domain heading
west (left side), east (right side), at 2pi/3 (top) or at -2pi/3 (bottom);
the left side carries 2L - 1 mid-edges.  The adsorbing variant gives weight
y to the right-wall vertices, i.e. those with an eastward exit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import BoundaryVertexError, BudgetError

X_C = 1.0 / math.sqrt(2.0 + math.sqrt(2.0))
ALPHA_C = -5.0 * math.pi / 24.0
Y_STAR = 1.0 + math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Exit heading (units of pi/3) of each boundary class.
_CLASS_OF_HEADING = {3: "left", 0: "right", 2: "top", 4: "bottom"}
DEFAULT_MAX_WALKS = 5e9


def _key(z: complex) -> tuple[int, int]:
    # exact key for vertices and mid-edges: x in quarter units, y in units of sqrt3/4
    return round(4 * z.real), round(4 * z.imag / SQRT3)


@dataclass
class HoneycombDomain:
    """Finite trapezoid of the honeycomb lattice.

    ``nbr[v, s]`` is the neighbour of vertex v through slot s (-1 when the
    edge leaves the domain), ``heading[v, s]`` the edge direction in units
    of pi/3 and ``medge[v, s]`` the id of the mid-edge on it.
    """

    T: int
    L: int
    adsorbing: bool
    vertices: np.ndarray            # complex positions
    nbr: np.ndarray
    heading: np.ndarray
    medge: np.ndarray
    midedges: np.ndarray            # complex positions
    boundary_class: dict[int, str]  # mid-edge id -> start/left/right/top/bottom
    wall: np.ndarray                # 1 on weighted right-wall vertices
    start: int                      # mid-edge id of a
    start_vertex: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_midedges(self) -> int:
        return len(self.midedges)

    def boundary(self, kind: str) -> list[int]:
        return [p for p, c in self.boundary_class.items() if c == kind]

    def degree_histogram(self) -> dict[int, int]:
        deg = (self.nbr >= 0).sum(axis=1)
        vals, cnt = np.unique(deg, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, cnt)}

    def n_edges(self) -> int:
        """Edges with both ends in the domain."""
        return int((self.nbr >= 0).sum()) // 2


def _inside(x: float, y: float, T: int, L: int) -> bool:
    return 0 < x < 1.5 * T and (SQRT3 * abs(y) - x) / 2 <= 0.75 + 1.5 * (L - 1) + 1e-9


def build_trapezoid(T: int, L: int, adsorbing: bool = False) -> HoneycombDomain:
    """Vertices, mid-edges and boundary classes of the (T, L) trapezoid."""
    if T < 1 or L < 1:
        raise ValueError("T and L must be at least 1")
    dirs = [cmath.exp(1j * math.pi * h / 3) for h in range(6)]
    a_headings = (0, 2, 4)
    b_headings = (3, 1, 5)
    # enumerate lattice vertices in a generous box
    span = 3 * (T + L) + 4
    pos: list[complex] = []
    kind: list[str] = []
    for i in range(-span, span + 1):
        for j in range(-span, span + 1):
            za = complex(-0.5 + 1.5 * (i + j), SQRT3 / 2 * (i - j))
            for z, kd in ((za, "A"), (za + 1, "B")):
                if _inside(z.real, z.imag, T, L):
                    pos.append(z)
                    kind.append(kd)
    order = sorted(range(len(pos)), key=lambda k: (_key(pos[k])[0], _key(pos[k])[1]))
    pos = [pos[k] for k in order]
    kind = [kind[k] for k in order]
    index = {_key(z): v for v, z in enumerate(pos)}
    n = len(pos)
    nbr = np.full((n, 3), -1, dtype=np.int64)
    heading = np.zeros((n, 3), dtype=np.int64)
    medge = np.zeros((n, 3), dtype=np.int64)
    wall = np.zeros(n, dtype=np.int64)
    mid_index: dict[tuple[int, int], int] = {}
    midpos: list[complex] = []
    bclass: dict[int, str] = {}
    for v, z in enumerate(pos):
        hs = a_headings if kind[v] == "A" else b_headings
        for s, h in enumerate(hs):
            w = z + dirs[h]
            heading[v, s] = h
            u = index.get(_key(w), -1)
            nbr[v, s] = u
            m = (z + w) / 2
            mk = _key(m)
            if mk not in mid_index:
                mid_index[mk] = len(midpos)
                midpos.append(m)
            p = mid_index[mk]
            medge[v, s] = p
            if u < 0:
                if h not in _CLASS_OF_HEADING:
                    raise AssertionError(f"boundary edge with heading {h} at {z}")
                bclass[p] = _CLASS_OF_HEADING[h]
                if h == 0 and adsorbing:
                    wall[v] = 1
    start = mid_index[_key(0j)]
    bclass[start] = "start"
    start_vertex = index[_key(0.5 + 0j)]
    return HoneycombDomain(T, L, adsorbing, np.array(pos), nbr, heading, medge,
                           np.array(midpos), bclass, wall, start, start_vertex)


def walk_counts(domain: HoneycombDomain, max_walks: float = DEFAULT_MAX_WALKS) -> np.ndarray:
    """Exact tallies ``[mid-edge, vertices, turn sum + n_vertices, wall visits]``.

    Includes the empty walk at ``a``.  Cached on the domain.
    """
    if "counts" in domain._cache:
        return domain._cache["counts"]
    nV = domain.n_vertices
    # empirical walk totals grow like ~1.3^(vertices) on trapezoids
    if 1.35 ** nV > max_walks:
        raise BudgetError(f"honeycomb domain with {nV} vertices exceeds the walk budget")
    n_wall = int(domain.wall.sum())
    out = np.zeros((domain.n_midedges, nV + 1, 2 * nV + 1, n_wall + 1), dtype=np.int64)
    out[domain.start, 0, nV, 0] = 1
    _kernels.honeycomb_tail(domain.nbr, domain.heading, domain.wall, domain.medge,
                            domain.start_vertex, 0, nV, out)
    out.setflags(write=False)
    domain._cache["counts"] = out
    return out


@dataclass
class ObservableTable:
    """F(p; x, alpha, y) for every mid-edge p of a domain."""

    domain: HoneycombDomain
    values: np.ndarray
    x: float
    alpha: float
    y: float = 1.0

    def __getitem__(self, p: int) -> complex:
        return complex(self.values[p])


def _weights(domain: HoneycombDomain, x: float, y: float):
    nV = domain.n_vertices
    xv = np.array([x ** k for k in range(nV + 1)])
    yv = np.array([y ** k for k in range(int(domain.wall.sum()) + 1)])
    return xv, yv


def observable(domain: HoneycombDomain, x: float, alpha: float = ALPHA_C, y: float = 1.0) -> ObservableTable:
    """F(p) = sum over walks a -> p of x^(vertices) e^(i alpha turns) y^(wall visits)."""
    counts = walk_counts(domain)
    nV = domain.n_vertices
    xv, yv = _weights(domain, x, y)
    tv = np.exp(1j * alpha * np.arange(-nV, nV + 1))
    if y == 1.0:
        # integer collapse first, so y = 1 reproduces the bulk table bit for bit
        base = counts.sum(axis=3).astype(float)
    else:
        base = np.einsum("pvtw,w->pvt", counts.astype(float), yv)
    values = np.einsum("pvt,v,t->p", base, xv, tv)
    return ObservableTable(domain, values, x, alpha, y)


def _vertex_sum(table: ObservableTable, v: int) -> complex:
    d = table.domain
    z = d.vertices[v]
    return complex(sum((d.midedges[d.medge[v, s]] - z) * table.values[d.medge[v, s]] for s in range(3)))


def local_identity_residual(table: ObservableTable, v: int) -> complex:
    """(p1 - v) F(p1) + (p2 - v) F(p2) + (p3 - v) F(p3) at vertex v."""
    d = table.domain
    if not 0 <= v < d.n_vertices:
        raise BoundaryVertexError(f"vertex {v} is not in the domain")
    return _vertex_sum(table, v)


def max_local_residual(table: ObservableTable) -> float:
    return max(abs(local_identity_residual(table, v)) for v in range(table.domain.n_vertices))


def boundary_sum(table: ObservableTable) -> complex:
    """Sum of (z - v) F(z) over boundary mid-edges z (v the inner end of z)."""
    d = table.domain
    total = 0j
    for v in range(d.n_vertices):
        for s in range(3):
            if d.nbr[v, s] < 0:
                p = d.medge[v, s]
                total += (d.midedges[p] - d.vertices[v]) * table.values[p]
    return total


def boundary_generating_functions(domain: HoneycombDomain, x: float, y: float = 1.0) -> dict[str, float]:
    """Sum of x^(vertices) y^(wall visits) over walks ending on each boundary class.

    Keys: ``left`` (excluding the empty walk at a), ``right``, ``top``,
    ``bottom`` and ``top_bottom``.
    """
    counts = walk_counts(domain)
    xv, yv = _weights(domain, x, y)
    per_edge = np.einsum("pvtw,v,w->p", counts.astype(float), xv, yv)
    out = {k: 0.0 for k in ("left", "right", "top", "bottom")}
    for p, c in domain.boundary_class.items():
        if c in out:
            out[c] += float(per_edge[p])
    out["top_bottom"] = out["top"] + out["bottom"]
    return out


def domain_identity_residual(domain: HoneycombDomain, x: float = X_C) -> float:
    """|cos(3pi/8) L + M / sqrt2 + R - 1| for the bulk trapezoid."""
    g = boundary_generating_functions(domain, x)
    return abs(math.cos(3 * math.pi / 8) * g["left"] + g["top_bottom"] / math.sqrt(2) + g["right"] - 1.0)


def adsorption_coefficient(y: float) -> float:
    """Weight (y* - y) / (y (y* - 1)) of the wall generating function."""
    if y <= 0:
        raise ValueError("y must be positive")
    return (Y_STAR - y) / (y * (Y_STAR - 1.0))


def adsorption_identity_residual(domain: HoneycombDomain, x: float = X_C, y: float = 1.0) -> float:
    """|cos(3pi/8) A + cos(pi/4) E + c(y) B - 1| with wall weight y on the right side."""
    if not domain.adsorbing:
        raise ValueError("domain was built without a weighted wall")
    g = boundary_generating_functions(domain, x, y)
    lhs = (math.cos(3 * math.pi / 8) * g["left"] + math.cos(math.pi / 4) * g["top_bottom"]
           + adsorption_coefficient(y) * g["right"])
    return abs(lhs - 1.0)


@lru_cache(maxsize=16)
def trapezoid(T: int, L: int, adsorbing: bool = False) -> HoneycombDomain:
    """Cached :func:`build_trapezoid`."""
    return build_trapezoid(T, L, adsorbing)


def _slot_to(domain: HoneycombDomain, v: int, u: int) -> int:
    for s in range(3):
        if domain.nbr[v, s] == u:
            return s
    raise ValueError(f"vertices {v} and {u} are not adjacent")


def walk_weight(domain: HoneycombDomain, path: list[int], end: int, x: float,
                alpha: float = ALPHA_C, y: float = 1.0) -> complex:
    """Weight x^(vertices) e^(i alpha turns) y^(wall visits) of one walk from a.

    ``path`` lists the visited vertices starting at the vertex next to a;
    ``end`` is the mid-edge where the walk stops.  A left turn (+pi/3)
    counts +1 and a right turn -1.
    """
    if not path:
        if end != domain.start:
            raise ValueError("the empty walk ends at a")
        return 1.0 + 0j
    if path[0] != domain.start_vertex or len(set(path)) != len(path):
        raise ValueError("path must start next to a and be self-avoiding")
    headings = [0]
    for v, u in zip(path, path[1:]):
        headings.append(int(domain.heading[v, _slot_to(domain, v, u)]))
    last = [s for s in range(3) if domain.medge[path[-1], s] == end]
    if not last:
        raise ValueError("end mid-edge is not incident to the last vertex")
    headings.append(int(domain.heading[path[-1], last[0]]))
    turns = 0
    for h0, h1 in zip(headings, headings[1:]):
        d = (h1 - h0) % 6
        if d not in (1, 5):
            raise ValueError("consecutive headings must differ by one turn")
        turns += 1 if d == 1 else -1
    visits = sum(int(domain.wall[v]) for v in path)
    return x ** len(path) * cmath.exp(1j * alpha * turns) * y ** visits


def walk_from_turns(domain: HoneycombDomain, turns: str) -> tuple[list[int], int]:
    """Vertex path and end mid-edge of the walk from a with the given turn letters.

    ``turns`` has one letter, ``L`` or ``R``, per visited vertex.
    """
    v = domain.start_vertex
    h = 0
    path: list[int] = []
    for k, c in enumerate(turns):
        if c not in "LR":
            raise ValueError("turns are 'L' or 'R'")
        path.append(v)
        h = (h + (1 if c == "L" else -1)) % 6
        slots = [s for s in range(3) if domain.heading[v, s] == h]
        s = slots[0]
        if k == len(turns) - 1:
            return path, int(domain.medge[v, s])
        u = int(domain.nbr[v, s])
        if u < 0 or u in path:
            raise ValueError(f"turn sequence leaves the domain or self-intersects at step {k}")
        v = u
    raise ValueError("empty turn sequence")
