"""Lattice-length coordinates on the cycles of a curve.

Each bouquet cycle is parametrized by lattice length, counterclockwise,
starting at its attachment to the bouquet center.  A divisor then gets one
residue per cycle (sum of the parameters of its points, weighted by
multiplicity, modulo the cycle's total lattice length).  Two divisors of a
reduced bouquet curve are linearly equivalent exactly when their degrees and
all residues agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geom import GeometryError, Point, cross, primitive_direction
from .curve import TropicalCurve, locate
from .bunch import (
    BouquetStructure,
    BunchGraph,
    CurveCycle,
    NotABouquet,
    bouquet_structure,
    bunch,
)
from .intersect import Divisor, stable_intersection


class UnsupportedCurveError(GeometryError):
    """The equivalence decision requires a reduced curve with a bouquet bunch."""


@dataclass(frozen=True)
class CycleParametrization:
    """Lattice-length parametrization of one cycle.

    breakpoints[i] is the parameter of vertex_path[i]; the path starts and
    ends at the base vertex, runs counterclockwise, and the total length is
    breakpoints[-1].
    """

    index: int
    vertex_path: tuple[int, ...]
    edge_indices: tuple[int, ...]
    base_vertex: int
    breakpoints: tuple[Fraction, ...]
    total_length: Fraction

    def point_at(self, curve: TropicalCurve, t: Fraction) -> Point:
        t = t % self.total_length
        for i in range(len(self.breakpoints) - 1):
            if self.breakpoints[i] <= t <= self.breakpoints[i + 1]:
                a = curve.vertices[self.vertex_path[i]]
                b = curve.vertices[self.vertex_path[i + 1]]
                u, _ = primitive_direction(b - a)
                return a + u.to_point() * (t - self.breakpoints[i])
        raise GeometryError("parameter out of range")  # unreachable

    def param_of(self, curve: TropicalCurve, p: Point) -> Fraction:
        """Inverse of point_at for points on the cycle."""
        for i in range(len(self.breakpoints) - 1):
            a = curve.vertices[self.vertex_path[i]]
            b = curve.vertices[self.vertex_path[i + 1]]
            d = b - a
            if cross(d, p - a) != 0:
                continue
            u, _ = primitive_direction(d)
            s = (p.x - a.x) / u.x if u.x else (p.y - a.y) / u.y
            seg_len = self.breakpoints[i + 1] - self.breakpoints[i]
            if 0 <= s <= seg_len:
                return (self.breakpoints[i] + s) % self.total_length
        raise GeometryError("point is not on this cycle")


def _cycle_area2(curve: TropicalCurve, cyc: CurveCycle) -> Fraction:
    total = Fraction(0)
    path = cyc.vertex_path
    for i in range(len(path) - 1):
        a, b = curve.vertices[path[i]], curve.vertices[path[i + 1]]
        total += a.x * b.y - b.x * a.y
    return total


def parametrize_cycles(
    curve: TropicalCurve, bq: BouquetStructure
) -> tuple[CycleParametrization, ...]:
    """Counterclockwise lattice-length parametrizations, one per cycle."""
    out = []
    for k, cyc in enumerate(bq.cycles):
        path = list(cyc.vertex_path)
        edges = list(cyc.edge_indices)
        if _cycle_area2(curve, cyc) < 0:
            path.reverse()
            edges.reverse()
        breaks = [Fraction(0)]
        for i in range(len(path) - 1):
            d = curve.vertices[path[i + 1]] - curve.vertices[path[i]]
            _, ll = primitive_direction(d)
            breaks.append(breaks[-1] + ll)
        out.append(
            CycleParametrization(
                k,
                tuple(path),
                tuple(edges),
                cyc.base_vertex,
                tuple(breaks),
                breaks[-1],
            )
        )
    return tuple(out)


@dataclass(frozen=True)
class CycleSystem:
    """A curve together with its bunch, bouquet and cycle parametrizations."""

    curve: TropicalCurve
    graph: BunchGraph
    bouquet: BouquetStructure
    cycles: tuple[CycleParametrization, ...]

    @property
    def genus(self) -> int:
        return self.bouquet.genus

    def moduli(self) -> tuple[Fraction, ...]:
        """Total lattice length of each cycle (the torus circumferences)."""
        return tuple(c.total_length for c in self.cycles)


def cycle_system(curve: TropicalCurve) -> CycleSystem:
    """Build the cycle coordinates; refuses non-bouquet topologies."""
    g = bunch(curve)
    bq = bouquet_structure(curve, g)
    if isinstance(bq, NotABouquet):
        raise UnsupportedCurveError(f"bunch is not a bouquet: {bq.reason}")
    return CycleSystem(curve, g, bq, parametrize_cycles(curve, bq))


def _cycle_of_edge(system: CycleSystem, edge_index: int) -> int | None:
    for cp in system.cycles:
        if edge_index in cp.edge_indices:
            return cp.index
    return None


def project_point(system: CycleSystem, p: Point) -> tuple[int | None, Fraction]:
    """Quotient image of a curve point as (cycle index, residue).

    Points on a cycle keep their parameter; points on tentacles and rays map
    to the cycle point where their contracted blob attaches; the bouquet
    center reports (None, 0).
    """
    c = system.curve
    hit = locate(c, p)
    if hit is None:
        raise GeometryError(f"point ({p.x}, {p.y}) is not on the curve")
    kind, idx = hit
    if kind == "edge":
        k = _cycle_of_edge(system, idx)
        if k is not None:
            return (k, system.cycles[k].param_of(c, p))
        node = system.graph.node_of_vertex[c.edges[idx].a]
    elif kind == "ray":
        node = system.graph.node_of_vertex[c.rays[idx].vertex]
    else:
        node = system.graph.node_of_vertex[idx]
    return _node_image(system, node)


def _node_image(system: CycleSystem, node: int) -> tuple[int | None, Fraction]:
    if node == system.bouquet.center_node:
        return (None, Fraction(0))
    members = set(system.graph.nodes[node])
    for cp in system.cycles:
        for v in cp.vertex_path[:-1]:
            if v in members:
                return (
                    cp.index,
                    cp.param_of(system.curve, system.curve.vertices[v]),
                )
    raise GeometryError("quotient node attaches to no cycle")  # unreachable


@dataclass(frozen=True)
class AbelCoordinate:
    """Divisor degree plus one lattice-length residue per cycle."""

    degree: int
    residues: tuple[Fraction, ...]

    def __sub__(self, other: "AbelCoordinate") -> "AbelCoordinate":
        if len(self.residues) != len(other.residues):
            raise GeometryError("coordinates of different genus")
        return AbelCoordinate(
            self.degree - other.degree,
            tuple(a - b for a, b in zip(self.residues, other.residues)),
        )


def abel_coordinate(system: CycleSystem, d: Divisor) -> AbelCoordinate:
    """Residues of a divisor under the cycle parametrizations."""
    res = [Fraction(0)] * system.genus
    for p, m in d.entries:
        k, t = project_point(system, p)
        if k is not None:
            res[k] += m * t
    res = [
        r % cp.total_length for r, cp in zip(res, system.cycles)
    ]
    return AbelCoordinate(d.degree, tuple(res))


def _require_hypotheses(system: CycleSystem) -> None:
    c = system.curve
    for e in c.edges:
        if e.weight != 1:
            raise UnsupportedCurveError(
                f"curve is not reduced: an edge has weight {e.weight}"
            )
    for r in c.rays:
        if r.weight != 1:
            raise UnsupportedCurveError(
                f"curve is not reduced: a ray has weight {r.weight}"
            )


def linearly_equivalent(system: CycleSystem, d1: Divisor, d2: Divisor) -> bool:
    """Equivalence decision: equal degree and componentwise equal residues.

    Only valid for reduced curves whose bunch is a bouquet; refused otherwise.
    """
    _require_hypotheses(system)
    a = abel_coordinate(system, d1)
    b = abel_coordinate(system, d2)
    return a.degree == b.degree and a.residues == b.residues


def linearly_equivalent_on(
    curve: TropicalCurve, d1: Divisor, d2: Divisor
) -> bool:
    return linearly_equivalent(cycle_system(curve), d1, d2)


def sigma(system: CycleSystem, mobile: TropicalCurve) -> AbelCoordinate:
    """Abel coordinate of the stable intersection with a mobile curve."""
    return abel_coordinate(
        system, stable_intersection(system.curve, mobile)
    )
