"""Tropical curve data model: balancing validation, loops, overlay, translation.

A curve is a weighted rational-slope 1-complex: vertices at rational points,
finite edges between vertex indices, and rays (one vertex plus a primitive
integer direction).  Weights are positive integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geom import (
    GeometryError,
    IntVector,
    Point,
    cross,
    dot,
    is_primitive,
    moment,
    primitive_decompose,
    primitive_direction,
    pt,
)


class StructureError(GeometryError):
    """Malformed curve data: bad indices, zero weights, coincident vertices."""


class LoopError(GeometryError):
    """A probe loop violates its preconditions (hits a vertex, runs along an edge)."""


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    weight: int = 1


@dataclass(frozen=True)
class Ray:
    vertex: int
    direction: IntVector
    weight: int = 1


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple[Point, ...]
    edges: tuple[Edge, ...]
    rays: tuple[Ray, ...]

    def edge_displacement(self, i: int) -> Point:
        e = self.edges[i]
        return self.vertices[e.b] - self.vertices[e.a]

    def is_reduced(self) -> bool:
        return all(e.weight == 1 for e in self.edges) and all(
            r.weight == 1 for r in self.rays
        )


def curve(
    vertices: Iterable[tuple],
    edges: Iterable[tuple] = (),
    rays: Iterable[tuple] = (),
) -> TropicalCurve:
    """Convenience builder from plain tuples.

    vertices: (x, y) pairs; edges: (a, b[, weight]); rays: (v, (dx, dy)[, weight]).
    """
    vs = tuple(pt(x, y) for x, y in vertices)
    es = tuple(Edge(e[0], e[1], e[2] if len(e) > 2 else 1) for e in edges)
    rs = tuple(
        Ray(r[0], IntVector(r[1][0], r[1][1]), r[2] if len(r) > 2 else 1)
        for r in rays
    )
    return TropicalCurve(vs, es, rs)


@dataclass(frozen=True)
class Item:
    """Uniform geometric view of an edge or ray for intersection work."""

    kind: str  # 'edge' | 'ray'
    index: int
    origin: Point
    vec: Point  # full displacement for edges, primitive direction for rays
    weight: int
    prim: IntVector

    @property
    def bounded(self) -> bool:
        return self.kind == "edge"

    def param_of(self, p: Point) -> Fraction:
        """Coordinate of a point on the item's line, in units of vec."""
        return Fraction(dot(p - self.origin, self.vec)) / dot(self.vec, self.vec)

    def point_at(self, t: Fraction) -> Point:
        return self.origin + self.vec * t

    def contains_param(self, t: Fraction) -> bool:
        if t < 0:
            return False
        return t <= 1 if self.bounded else True


def items(c: TropicalCurve) -> tuple[Item, ...]:
    out = []
    for i, e in enumerate(c.edges):
        d = c.vertices[e.b] - c.vertices[e.a]
        u, _ = primitive_direction(d)
        out.append(Item("edge", i, c.vertices[e.a], d, e.weight, u))
    for i, r in enumerate(c.rays):
        out.append(
            Item(
                "ray",
                i,
                c.vertices[r.vertex],
                r.direction.to_point(),
                r.weight,
                r.direction,
            )
        )
    return tuple(out)


def _item_intersection(a: Item, b: Item):
    """Intersection of two closed items.

    Returns ('none',), ('pt', point) or ('over',) for a collinear overlap of
    more than one point.
    """
    if cross(a.vec, b.vec) != 0:
        den = cross(a.vec, b.vec)
        s = Fraction(cross(b.origin - a.origin, b.vec)) / den
        t = Fraction(cross(b.origin - a.origin, a.vec)) / den
        if a.contains_param(s) and b.contains_param(t):
            return ("pt", a.point_at(s))
        return ("none",)
    # parallel
    if cross(a.vec, b.origin - a.origin) != 0:
        return ("none",)
    # same line: compare parameter intervals in units of a.vec
    lo_b: Fraction | None
    hi_b: Fraction | None
    c0 = a.param_of(b.origin)
    if b.bounded:
        c1 = a.param_of(b.origin + b.vec)
        lo_b, hi_b = (c0, c1) if c0 <= c1 else (c1, c0)
    elif dot(b.vec, a.vec) > 0:
        lo_b, hi_b = c0, None
    else:
        lo_b, hi_b = None, c0
    lo_a, hi_a = Fraction(0), Fraction(1) if a.bounded else None
    lo = lo_a if lo_b is None else (max(lo_a, lo_b))
    if hi_a is None:
        hi = hi_b
    elif hi_b is None:
        hi = hi_a
    else:
        hi = min(hi_a, hi_b)
    if hi is not None and lo > hi:
        return ("none",)
    if hi is not None and lo == hi:
        return ("pt", a.point_at(lo))
    return ("over",)


@dataclass(frozen=True)
class BalanceReport:
    """Per-vertex balancing residuals plus embedding diagnostics."""

    residuals: tuple[IntVector, ...]
    embedding_violations: tuple[str, ...]

    @property
    def balanced(self) -> bool:
        return all(not r for r in self.residuals)

    @property
    def passed(self) -> bool:
        return self.balanced and not self.embedding_violations


def _structural_check(c: TropicalCurve) -> None:
    n = len(c.vertices)
    seen: dict[Point, int] = {}
    for i, v in enumerate(c.vertices):
        if v in seen:
            raise StructureError(f"vertices {seen[v]} and {i} coincide at ({v.x}, {v.y})")
        seen[v] = i
    used = [False] * n
    for i, e in enumerate(c.edges):
        if not (0 <= e.a < n and 0 <= e.b < n):
            raise StructureError(f"edge {i} references vertex out of range")
        if e.a == e.b:
            raise StructureError(f"edge {i} has identical endpoints")
        if not isinstance(e.weight, int) or e.weight < 1:
            raise StructureError(f"edge {i} has non-positive weight")
        used[e.a] = used[e.b] = True
    for i, r in enumerate(c.rays):
        if not (0 <= r.vertex < n):
            raise StructureError(f"ray {i} references vertex out of range")
        if not isinstance(r.weight, int) or r.weight < 1:
            raise StructureError(f"ray {i} has non-positive weight")
        if not r.direction:
            raise StructureError(f"ray {i} has zero direction")
        if not is_primitive(r.direction):
            raise StructureError(f"ray {i} direction is not primitive")
        used[r.vertex] = True
    for i, u in enumerate(used):
        if not u:
            raise StructureError(f"vertex {i} is isolated")


def _incidences(c: TropicalCurve) -> list[list[tuple[str, int]]]:
    inc: list[list[tuple[str, int]]] = [[] for _ in c.vertices]
    for i, e in enumerate(c.edges):
        inc[e.a].append(("edge", i))
        inc[e.b].append(("edge", i))
    for i, r in enumerate(c.rays):
        inc[r.vertex].append(("ray", i))
    return inc


def outgoing_vectors(c: TropicalCurve, vertex: int) -> list[IntVector]:
    """Weighted primitive vectors of all items starting at a vertex."""
    out = []
    for e in c.edges:
        if e.a == vertex or e.b == vertex:
            other = e.b if e.a == vertex else e.a
            u, _ = primitive_direction(c.vertices[other] - c.vertices[vertex])
            out.append(u * e.weight)
    for r in c.rays:
        if r.vertex == vertex:
            out.append(r.direction * r.weight)
    return out


def validate(c: TropicalCurve) -> BalanceReport:
    """Check balancing at every vertex and the embedding invariants.

    Structural defects raise StructureError; imbalance and embedding
    violations are reported, not raised.
    """
    _structural_check(c)
    residuals = []
    for v in range(len(c.vertices)):
        total = IntVector(0, 0)
        for w in outgoing_vectors(c, v):
            total = total + w
        residuals.append(total)
    violations = []
    its = items(c)
    endpoint_indices = []
    for it in its:
        if it.kind == "edge":
            e = c.edges[it.index]
            endpoint_indices.append({e.a, e.b})
        else:
            endpoint_indices.append({c.rays[it.index].vertex})
    for i in range(len(its)):
        for j in range(i + 1, len(its)):
            shared = endpoint_indices[i] & endpoint_indices[j]
            kind = _item_intersection(its[i], its[j])
            if kind[0] == "none":
                continue
            if kind[0] == "over":
                violations.append(
                    f"{its[i].kind} {its[i].index} and {its[j].kind} "
                    f"{its[j].index} overlap along a segment"
                )
                continue
            p = kind[1]
            if not any(c.vertices[s] == p for s in shared):
                violations.append(
                    f"{its[i].kind} {its[i].index} and {its[j].kind} "
                    f"{its[j].index} meet at ({p.x}, {p.y}) which is not a "
                    "shared vertex"
                )
    return BalanceReport(tuple(residuals), tuple(violations))


def translate(c: TropicalCurve, t: Point) -> TropicalCurve:
    return TropicalCurve(
        tuple(v + t for v in c.vertices), c.edges, c.rays
    )


def locate(c: TropicalCurve, p: Point):
    """Where a point sits on the curve.

    Returns ('vertex', i), ('edge', i), ('ray', i) or None; edge/ray hits are
    interior (endpoints report as vertices).
    """
    for i, v in enumerate(c.vertices):
        if v == p:
            return ("vertex", i)
    for it in items(c):
        if cross(it.vec, p - it.origin) != 0:
            continue
        t = it.param_of(p)
        if it.bounded:
            if 0 < t < 1:
                return ("edge", it.index)
        elif t > 0:
            return ("ray", it.index)
    return None


def local_star(c: TropicalCurve, p: Point) -> list[IntVector]:
    """Weighted primitive vectors leaving p along the curve.

    Vertices report their full star, interior points of an edge or ray report
    both directions, points off the curve report an empty star.
    """
    hit = locate(c, p)
    if hit is None:
        return []
    kind, idx = hit
    if kind == "vertex":
        return outgoing_vectors(c, idx)
    if kind == "edge":
        e = c.edges[idx]
        u, _ = primitive_direction(c.vertices[e.b] - c.vertices[e.a])
        return [u * e.weight, -u * e.weight]
    r = c.rays[idx]
    return [r.direction * r.weight, -r.direction * r.weight]


# ---------------------------------------------------------------------------
# Loops: global balancing and moment sums around simple closed polygons.
# ---------------------------------------------------------------------------


def point_in_polygon(p: Point, loop: Sequence[Point]) -> bool:
    """Even-odd test; p must not lie on the boundary."""
    inside = False
    n = len(loop)
    for k in range(n):
        a, b = loop[k], loop[(k + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if xi > p.x:
                inside = not inside
    return inside


def _check_loop(loop: Sequence[Point]) -> None:
    n = len(loop)
    if n < 3:
        raise LoopError("loop needs at least 3 points")
    sides = [(loop[k], loop[(k + 1) % n]) for k in range(n)]
    for a, b in sides:
        if a == b:
            raise LoopError("loop has a zero-length side")
    for i in range(n):
        for j in range(i + 1, n):
            a1, b1 = sides[i]
            a2, b2 = sides[j]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            ia = Item("edge", 0, a1, b1 - a1, 1, IntVector(1, 0))
            ib = Item("edge", 0, a2, b2 - a2, 1, IntVector(1, 0))
            kind = _item_intersection(ia, ib)
            if kind[0] == "none":
                continue
            if kind[0] == "over" or not adjacent:
                raise LoopError("loop is not a simple polygon")
            shared = b1 if j == i + 1 else a1
            if kind[1] != shared:
                raise LoopError("loop is not a simple polygon")


def _loop_crossings(c: TropicalCurve, loop: Sequence[Point]):
    """Transversal crossings of curve items with the loop boundary.

    Yields (item, signed weighted primitive vector pointing out of the loop,
    crossing point).  Raises LoopError on any non-transversal contact.
    """
    _check_loop(loop)
    n = len(loop)
    corners = set(loop)
    out = []
    for it in items(c):
        params = []
        for k in range(n):
            a, b = loop[k], loop[(k + 1) % n]
            side = Item("edge", 0, a, b - a, 1, IntVector(1, 0))
            kind = _item_intersection(it, side)
            if kind[0] == "none":
                continue
            if kind[0] == "over":
                raise LoopError(
                    f"loop runs along {it.kind} {it.index}"
                )
            p = kind[1]
            if p in corners:
                raise LoopError("loop corner touches the curve")
            t = it.param_of(p)
            if t == 0 or (it.bounded and t == 1):
                raise LoopError("loop passes through a curve vertex")
            params.append((t, p))
        if not params:
            continue
        params.sort(key=lambda tp: tp[0])
        inside = point_in_polygon(it.origin, loop)
        w = it.prim * it.weight
        for t, p in params:
            out.append((it, w if inside else -w, p))
            inside = not inside
        if not it.bounded and inside:
            raise LoopError("ray ends inside the loop (inconsistent crossings)")
        if it.bounded:
            far_inside = point_in_polygon(it.origin + it.vec, loop)
            if far_inside != inside:
                raise LoopError("inconsistent crossing parity on an edge")
    return out


def global_balance_sum(c: TropicalCurve, loop: Sequence[Point]) -> IntVector:
    """Sum of weighted primitive vectors of crossed edges, taken outward.

    Zero for every valid curve and admissible loop.
    """
    total = IntVector(0, 0)
    for _, w, _ in _loop_crossings(c, loop):
        total = total + w
    return total


def moment_sum(
    c: TropicalCurve, loop: Sequence[Point], base: Point
) -> Fraction:
    """Sum of moments of outward crossing vectors about a base point."""
    total = Fraction(0)
    for _, w, p in _loop_crossings(c, loop):
        total += moment(w, p, base)
    return total


# ---------------------------------------------------------------------------
# Overlay (union) of two curves.
# ---------------------------------------------------------------------------


def union(c1: TropicalCurve, c2: TropicalCurve) -> TropicalCurve:
    """Overlay of two curves as one simplicial complex.

    Edges split at all crossings and at vertices of the other curve;
    collinear overlapping portions merge with weights added.
    """
    all_items = list(items(c1)) + list(items(c2))
    splits: list[set[Fraction]] = [set() for _ in all_items]

    def add_split(idx: int, p: Point) -> None:
        it = all_items[idx]
        t = it.param_of(p)
        if t <= 0 or (it.bounded and t >= 1):
            return
        splits[idx].add(t)

    for i in range(len(all_items)):
        for j in range(i + 1, len(all_items)):
            a, b = all_items[i], all_items[j]
            kind = _item_intersection(a, b)
            if kind[0] == "pt":
                add_split(i, kind[1])
                add_split(j, kind[1])
            elif kind[0] == "over":
                ends_b = [b.origin] + ([b.origin + b.vec] if b.bounded else [])
                ends_a = [a.origin] + ([a.origin + a.vec] if a.bounded else [])
                for p in ends_b:
                    if a.contains_param(a.param_of(p)):
                        add_split(i, p)
                for p in ends_a:
                    if b.contains_param(b.param_of(p)):
                        add_split(j, p)

    seg_weight: dict[tuple, int] = {}
    tail_weight: dict[tuple, int] = {}

    def key_of(p: Point) -> tuple:
        return (p.x, p.y)

    for idx, it in enumerate(all_items):
        cuts = sorted(splits[idx])
        pts = [it.origin] + [it.point_at(t) for t in cuts]
        if it.bounded:
            pts.append(it.origin + it.vec)
            for a, b in zip(pts, pts[1:]):
                ka, kb = key_of(a), key_of(b)
                key = (ka, kb) if ka <= kb else (kb, ka)
                seg_weight[key] = seg_weight.get(key, 0) + it.weight
        else:
            for a, b in zip(pts, pts[1:]):
                ka, kb = key_of(a), key_of(b)
                key = (ka, kb) if ka <= kb else (kb, ka)
                seg_weight[key] = seg_weight.get(key, 0) + it.weight
            tk = (key_of(pts[-1]), (it.prim.x, it.prim.y))
            tail_weight[tk] = tail_weight.get(tk, 0) + it.weight

    vertex_keys = sorted(
        {k for key in seg_weight for k in key}
        | {origin for origin, _ in tail_weight}
    )
    index = {k: i for i, k in enumerate(vertex_keys)}
    vs = tuple(Point(x, y) for x, y in vertex_keys)
    es = tuple(
        Edge(index[a], index[b], w)
        for (a, b), w in sorted(seg_weight.items())
    )
    rs = tuple(
        Ray(index[origin], IntVector(dx, dy), w)
        for (origin, (dx, dy)), w in sorted(tail_weight.items())
    )
    return TropicalCurve(vs, es, rs)


def normalize(c: TropicalCurve) -> TropicalCurve:
    """Fuse 2-valent vertices whose two collinear items carry equal weight.

    Opposite rays at a vertex are kept (a vertex-free line is not
    representable).  Explicit pass; construction never normalizes implicitly.
    """
    while True:
        inc = _incidences(c)
        fused = False
        for v, incident in enumerate(inc):
            if len(incident) != 2:
                continue
            (k1, i1), (k2, i2) = incident
            if k1 == "ray" and k2 == "ray":
                continue
            vecs = []
            weights = []
            for k, i in ((k1, i1), (k2, i2)):
                if k == "edge":
                    e = c.edges[i]
                    other = e.b if e.a == v else e.a
                    u, _ = primitive_direction(
                        c.vertices[other] - c.vertices[v]
                    )
                    vecs.append(u)
                    weights.append(e.weight)
                else:
                    vecs.append(c.rays[i].direction)
                    weights.append(c.rays[i].weight)
            if vecs[0] != -vecs[1] or weights[0] != weights[1]:
                continue
            c = _fuse_vertex(c, v, (k1, i1), (k2, i2))
            fused = True
            break
        if not fused:
            return c


def _fuse_vertex(c, v, first, second) -> TropicalCurve:
    keep_edges = [e for i, e in enumerate(c.edges)
                  if (first != ("edge", i) and second != ("edge", i))]
    keep_rays = [r for i, r in enumerate(c.rays)
                 if (first != ("ray", i) and second != ("ray", i))]
    ends = []
    for k, i in (first, second):
        if k == "edge":
            e = c.edges[i]
            ends.append(("v", e.b if e.a == v else e.a, e.weight))
        else:
            r = c.rays[i]
            ends.append(("r", r.direction, r.weight))
    w = ends[0][2]
    if ends[0][0] == "v" and ends[1][0] == "v":
        keep_edges.append(Edge(ends[0][1], ends[1][1], w))
    else:
        vert = ends[0] if ends[0][0] == "v" else ends[1]
        ray = ends[1] if ends[0][0] == "v" else ends[0]
        keep_rays.append(Ray(vert[1], ray[1], w))
    # drop vertex v, reindex
    old_to_new = {}
    new_vertices = []
    for i, p in enumerate(c.vertices):
        if i == v:
            continue
        old_to_new[i] = len(new_vertices)
        new_vertices.append(p)
    es = tuple(
        Edge(old_to_new[e.a], old_to_new[e.b], e.weight) for e in keep_edges
    )
    rs = tuple(
        Ray(old_to_new[r.vertex], r.direction, r.weight) for r in keep_rays
    )
    return TropicalCurve(tuple(new_vertices), es, rs)


def canonical_form(c: TropicalCurve) -> tuple:
    """Relabeling-invariant description, for equality up to vertex order."""
    order = sorted(range(len(c.vertices)), key=lambda i: (c.vertices[i].x, c.vertices[i].y))
    rank = {old: new for new, old in enumerate(order)}
    vs = tuple((c.vertices[i].x, c.vertices[i].y) for i in order)
    es = tuple(sorted(
        (min(rank[e.a], rank[e.b]), max(rank[e.a], rank[e.b]), e.weight)
        for e in c.edges
    ))
    rs = tuple(sorted(
        (rank[r.vertex], r.direction.x, r.direction.y, r.weight)
        for r in c.rays
    ))
    return (vs, es, rs)
