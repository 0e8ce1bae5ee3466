"""Duality for tropical curves: complement faces, dual lattice complex,
polygons, Minkowski sums, and vertex multiplicities.

The dual complex assigns one lattice point per complement face.  Crossing an
edge of weight w from its left face to its right face (left/right relative to
the edge's primitive direction) moves the lattice point by w times the
direction rotated -90 degrees.  This chirality is fixed once and used
everywhere; it makes the 3-ray curve with rays west/south/northeast dual to
the standard unit triangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geom import GeometryError, IntVector, Point, cross, pseudo_angle
from .curve import Item, TropicalCurve, items, local_star, locate


class DualityError(GeometryError):
    """Inconsistent dual propagation: the input was not actually balanced."""


# ---------------------------------------------------------------------------
# Lattice polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon; vertices counterclockwise, lex-min first.

    Degenerate cases: a single vertex (point) or two vertices (segment).
    """

    vertices: tuple[IntVector, ...]

    def area2(self) -> int:
        """Twice the enclosed area (shoelace)."""
        vs = self.vertices
        if len(vs) < 3:
            return 0
        total = 0
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            total += a.x * b.y - b.x * a.y
        return total

    def area(self) -> Fraction:
        return Fraction(self.area2(), 2)

    def translated(self, t: IntVector) -> "LatticePolygon":
        return LatticePolygon(tuple(v + t for v in self.vertices))

    def normalized(self) -> "LatticePolygon":
        m = min(self.vertices, key=lambda v: (v.x, v.y))
        return self.translated(-m)

    def edge_vectors(self) -> list[IntVector]:
        vs = self.vertices
        if len(vs) <= 1:
            return []
        if len(vs) == 2:
            d = vs[1] - vs[0]
            return [d, -d]
        return [vs[(i + 1) % len(vs)] - vs[i] for i in range(len(vs))]


def _canonical_ccw(points: list[IntVector]) -> LatticePolygon:
    start = min(range(len(points)), key=lambda i: (points[i].x, points[i].y))
    return LatticePolygon(tuple(points[start:] + points[:start]))


def convex_hull(points: list[IntVector]) -> LatticePolygon:
    """Monotone chain; keeps extreme points only."""
    pts = sorted(set((p.x, p.y) for p in points))
    if not pts:
        raise GeometryError("hull of empty point set")
    if len(pts) == 1:
        return LatticePolygon((IntVector(*pts[0]),))

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (p[0] - out[-2][0]) * (out[-1][1] - out[-2][1])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    if len(ring) == 1:  # all points collinear -> keep both ends
        ring = [lower[0], lower[-1]]
    if len(ring) == 2 and ring[0] == ring[1]:
        ring = ring[:1]
    return _canonical_ccw([IntVector(x, y) for x, y in ring])


def polygon_from_edge_vectors(
    steps: list[IntVector], start: IntVector = IntVector(0, 0)
) -> LatticePolygon:
    """Close up angle-sorted edge vectors into a convex polygon.

    Equal directions are merged; the steps must sum to zero.
    """
    if not steps:
        return LatticePolygon((start,))
    order = sorted(range(len(steps)), key=lambda i: pseudo_angle(steps[i]))
    merged: list[IntVector] = []
    for i in order:
        if merged and cross(merged[-1], steps[i]) == 0 and (
            merged[-1].x * steps[i].x + merged[-1].y * steps[i].y > 0
        ):
            merged[-1] = merged[-1] + steps[i]
        else:
            merged.append(steps[i])
    total = IntVector(0, 0)
    for s in merged:
        total = total + s
    if total:
        raise GeometryError("edge vectors do not close up")
    if len(merged) == 2:
        verts = [start, start + merged[0]]
    else:
        verts = []
        p = start
        for s in merged:
            verts.append(p)
            p = p + s
    return _canonical_ccw(verts)


def minkowski_sum(p: LatticePolygon, q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum via merged edge-vector sequences."""
    if len(p.vertices) == 1:
        return q.translated(p.vertices[0])
    if len(q.vertices) == 1:
        return p.translated(q.vertices[0])
    steps = p.edge_vectors() + q.edge_vectors()
    poly = polygon_from_edge_vectors(steps)
    anchor = p.vertices[0] + q.vertices[0]
    m = min(poly.vertices, key=lambda v: (v.x, v.y))
    return poly.translated(anchor - m)


# ---------------------------------------------------------------------------
# Complement faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceStructure:
    """Faces of the complement, with edge-side and vertex adjacency.

    side_face[2*k] / side_face[2*k+1] give the face left / right of item k
    (relative to the item's stored direction; items list edges then rays).
    """

    count: int
    side_face: tuple[int, ...]
    bounded: tuple[bool, ...]
    vertex_faces: tuple[tuple[int, ...], ...]
    items: tuple[Item, ...]

    def item_faces(self, item_index: int) -> tuple[int, int]:
        return (
            self.side_face[2 * item_index],
            self.side_face[2 * item_index + 1],
        )

    def bounded_faces(self) -> tuple[int, ...]:
        return tuple(f for f in range(self.count) if self.bounded[f])


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def merge(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def face_structure(c: TropicalCurve) -> FaceStructure:
    """Enumerate the connected components of the plane minus the curve.

    Sides of items are glued around each vertex and around the circle at
    infinity (rays ordered by direction, parallel rays by signed offset).
    Requires a structurally sound embedded curve.
    """
    its = items(c)
    if not its:
        raise GeometryError("empty curve has no face structure")
    uf = _UnionFind(2 * len(its))

    # ends at each vertex: (outgoing primitive direction, left side, right side)
    ends: list[list[tuple]] = [[] for _ in c.vertices]
    for k, it in enumerate(its):
        if it.kind == "edge":
            e = c.edges[it.index]
            ends[e.a].append((it.prim, 2 * k, 2 * k + 1))
            ends[e.b].append((-it.prim, 2 * k + 1, 2 * k))
        else:
            ends[c.rays[it.index].vertex].append((it.prim, 2 * k, 2 * k + 1))

    for v, lst in enumerate(ends):
        lst.sort(key=lambda t: pseudo_angle(t[0]))
        for i in range(len(lst) - 1):
            if pseudo_angle(lst[i][0]) == pseudo_angle(lst[i + 1][0]):
                raise GeometryError(
                    f"two items leave vertex {v} in the same direction"
                )
        for i in range(len(lst)):
            nxt = lst[(i + 1) % len(lst)]
            uf.merge(lst[i][1], nxt[2])

    ray_sides = []
    for k, it in enumerate(its):
        if it.kind == "ray":
            offset = Fraction(cross(it.prim, it.origin))
            ray_sides.append((pseudo_angle(it.prim), offset, 2 * k, 2 * k + 1))
    ray_sides.sort(key=lambda t: (t[0], t[1]))
    for i in range(len(ray_sides)):
        nxt = ray_sides[(i + 1) % len(ray_sides)]
        uf.merge(ray_sides[i][2], nxt[3])

    face_of: dict[int, int] = {}
    side_face = []
    for s in range(2 * len(its)):
        root = uf.find(s)
        if root not in face_of:
            face_of[root] = len(face_of)
        side_face.append(face_of[root])
    count = len(face_of)

    bounded = [True] * count
    for _, _, ls, rs in ray_sides:
        bounded[side_face[ls]] = False
        bounded[side_face[rs]] = False

    vertex_faces = []
    for v, lst in enumerate(ends):
        faces = []
        for i in range(len(lst)):
            faces.append(side_face[lst[i][1]])  # sector CCW after direction i
        vertex_faces.append(tuple(faces))

    return FaceStructure(
        count, tuple(side_face), tuple(bounded), tuple(vertex_faces), its
    )


# ---------------------------------------------------------------------------
# Newton complex and polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonComplex:
    """Dual lattice complex: one lattice point per face, one edge per item."""

    dual_vertices: tuple[IntVector, ...]  # indexed by face id
    dual_edges: tuple[tuple[int, int, str, int], ...]  # (left face, right face, kind, index)
    faces: FaceStructure

    def edge_segments(self) -> frozenset:
        out = set()
        for fi, fj, _, _ in self.dual_edges:
            a, b = self.dual_vertices[fi], self.dual_vertices[fj]
            ka, kb = (a.x, a.y), (b.x, b.y)
            out.add((ka, kb) if ka <= kb else (kb, ka))
        return frozenset(out)

    def vertex_set(self) -> frozenset:
        return frozenset((v.x, v.y) for v in self.dual_vertices)


def newton_complex(c: TropicalCurve, order: str = "bfs") -> NewtonComplex:
    """Propagate dual lattice points across face adjacencies.

    The result is independent of traversal order; an inconsistency during
    propagation means the input was not balanced.
    """
    fs = face_structure(c)
    edges = []
    adj: list[list[tuple[int, IntVector, int]]] = [[] for _ in range(fs.count)]
    for k, it in enumerate(fs.items):
        fl, fr = fs.side_face[2 * k], fs.side_face[2 * k + 1]
        step = it.prim.rot_cw() * it.weight
        edges.append((fl, fr, it.kind, it.index))
        adj[fl].append((fr, step, k))
        adj[fr].append((fl, -step, k))

    w: list[IntVector | None] = [None] * fs.count
    w[0] = IntVector(0, 0)
    frontier = [0]
    while frontier:
        f = frontier.pop(0 if order == "bfs" else -1)
        for g, step, _ in adj[f]:
            cand = w[f] + step
            if w[g] is None:
                w[g] = cand
                frontier.append(g)
            elif w[g] != cand:
                raise DualityError(
                    "dual propagation is inconsistent; curve is not balanced"
                )
    if any(x is None for x in w):
        raise DualityError("face adjacency graph is not connected")
    m = min(w, key=lambda v: (v.x, v.y))
    w = [v - m for v in w]
    return NewtonComplex(tuple(w), tuple(edges), fs)


def newton_polygon(c: TropicalCurve) -> LatticePolygon:
    """Convex hull of the dual complex.

    Cross-checked against the ray-data-only construction (each weighted ray
    direction rotated +90 degrees, sorted by angle, chained into a polygon);
    disagreement raises DualityError.
    """
    nc = newton_complex(c)
    hull = convex_hull(list(nc.dual_vertices)).normalized()
    alt = newton_polygon_from_rays(c)
    if hull != alt:
        raise DualityError("hull of dual complex disagrees with ray construction")
    return hull


def newton_polygon_from_rays(c: TropicalCurve) -> LatticePolygon:
    """Polygon from ray data alone: weighted directions rotated +90 degrees."""
    if not c.rays:
        raise GeometryError("a curve with no rays has no Newton polygon")
    rays = sorted(c.rays, key=lambda r: pseudo_angle(r.direction))
    steps = [r.direction.rot_ccw() * r.weight for r in rays]
    return polygon_from_edge_vectors(steps).normalized()


# ---------------------------------------------------------------------------
# Dual cells and multiplicities
# ---------------------------------------------------------------------------


def star_cell(star: list[IntVector]) -> LatticePolygon:
    """Closed polygon traced by the +90-degree rotations of a star's vectors."""
    steps = [u.rot_ccw() for u in star]
    return polygon_from_edge_vectors(steps).normalized()


def star_multiplicity(star: list[IntVector]) -> int:
    if not star:
        return 0
    a2 = star_cell(star).area2()
    return a2


def dual_cell(c: TropicalCurve, vertex: int) -> LatticePolygon:
    """The lattice polygon dual to a vertex (normalized translation)."""
    if not (0 <= vertex < len(c.vertices)):
        raise GeometryError(f"no vertex {vertex}")
    return star_cell(local_star(c, c.vertices[vertex]))


def dual_cell_from_faces(
    c: TropicalCurve, vertex: int, nc: NewtonComplex
) -> LatticePolygon:
    """Dual cell as the hull of the dual points of the faces at a vertex."""
    faces = nc.faces.vertex_faces[vertex]
    pts = [nc.dual_vertices[f] for f in faces]
    return convex_hull(pts).normalized()


def vertex_multiplicity(c: TropicalCurve, p: Point) -> int:
    """Twice the area of the dual cell at a point; 0 off vertices."""
    return star_multiplicity(local_star(c, p))
