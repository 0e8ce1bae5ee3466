"""Exact planar primitives: integer vectors, rational points, angular order.

Everything here is exact. Coordinates are `fractions.Fraction`, lattice data
is plain `int`, and angular comparisons are done with sign tests instead of
floating-point trigonometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Union

#: Exact rational scalar used for all coordinates.
Rational = Fraction

Scalar = Union[int, Fraction]


class GeometryError(Exception):
    """Base class for all domain errors raised by this package."""


@dataclass(frozen=True)
class IntVector:
    """Integer lattice vector."""

    x: int
    y: int

    def __add__(self, other: "IntVector") -> "IntVector":
        return IntVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "IntVector") -> "IntVector":
        return IntVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "IntVector":
        return IntVector(-self.x, -self.y)

    def __mul__(self, k: int) -> "IntVector":
        return IntVector(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def rot_ccw(self) -> "IntVector":
        """Rotate by +90 degrees."""
        return IntVector(-self.y, self.x)

    def rot_cw(self) -> "IntVector":
        """Rotate by -90 degrees."""
        return IntVector(self.y, -self.x)

    def to_point(self) -> "Point":
        return Point(Fraction(self.x), Fraction(self.y))


#: An IntVector with coprime entries; enforced by callers via is_primitive().
PrimitiveVector = IntVector


@dataclass(frozen=True)
class Point:
    """Rational point of the plane.  Doubles as a rational displacement."""

    x: Fraction
    y: Fraction

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def __mul__(self, k: Scalar) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0


def pt(x: Scalar | str, y: Scalar | str) -> Point:
    """Build a Point, coercing ints and 'p/q' strings to Fraction."""
    return Point(Fraction(x), Fraction(y))


def vec(x: int, y: int) -> IntVector:
    return IntVector(x, y)


def cross(u, v) -> Scalar:
    """Exterior product u.x*v.y - v.x*u.y.  Works on IntVector and Point."""
    return u.x * v.y - v.x * u.y


def dot(u, v) -> Scalar:
    """Interior product u.x*v.x + u.y*v.y."""
    return u.x * v.x + u.y * v.y


def is_primitive(v: IntVector) -> bool:
    return bool(v) and gcd(abs(v.x), abs(v.y)) == 1


def primitive_decompose(v: IntVector) -> tuple[IntVector, int]:
    """Write v = m*u with u primitive and m >= 1 (the lattice length of v)."""
    if not v:
        raise GeometryError("zero vector has no primitive decomposition")
    m = gcd(abs(v.x), abs(v.y))
    return IntVector(v.x // m, v.y // m), m


def primitive_direction(v: Point) -> tuple[IntVector, Fraction]:
    """Primitive integer direction of a rational vector and its lattice length.

    Returns (u, m) with v = m*u, u primitive, m a positive rational.
    """
    if not v:
        raise GeometryError("zero vector has no direction")
    k = (v.x.denominator * v.y.denominator) // gcd(
        v.x.denominator, v.y.denominator
    )
    w = IntVector(int(v.x * k), int(v.y * k))
    u, m = primitive_decompose(w)
    return u, Fraction(m, k)


def moment(v, p: Point, base: Point) -> Fraction:
    """Moment of the tangent vector (v, p) about the base point.

    Equals cross(p - base, v); invariant under sliding p along v.
    """
    return Fraction(cross(p - base, v))


@total_ordering
@dataclass(frozen=True)
class PseudoAngle:
    """Exact total order key for nonzero vectors, by counterclockwise angle.

    Two vectors compare equal exactly when they are positive multiples of
    each other.  The key is a half-plane index (angles in [0, pi) before
    those in [pi, 2pi)) refined by a cross-product sign test.
    """

    half: int
    direction: IntVector  # primitive representative, for hashing/equality

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoAngle):
            return NotImplemented
        return self.half == other.half and self.direction == other.direction

    def __lt__(self, other: "PseudoAngle") -> bool:
        if self.half != other.half:
            return self.half < other.half
        return cross(self.direction, other.direction) > 0

    def __hash__(self) -> int:
        return hash((self.half, self.direction))


def pseudo_angle(v: IntVector) -> PseudoAngle:
    if not v:
        raise GeometryError("zero vector has no angle")
    half = 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1
    u, _ = primitive_decompose(v)
    return PseudoAngle(half, u)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when p lies on the closed segment [a, b]."""
    d = b - a
    if cross(d, p - a) != 0:
        return False
    t = dot(p - a, d)
    return 0 <= t <= dot(d, d)


def on_ray(p: Point, origin: Point, direction: IntVector) -> bool:
    """True when p lies on the closed ray from origin along direction."""
    d = direction.to_point()
    return cross(d, p - origin) == 0 and dot(p - origin, d) >= 0


def line_intersection(
    p1: Point, d1: Point, p2: Point, d2: Point
) -> Point | None:
    """Intersection point of two lines given as point + direction.

    Returns None for parallel lines (coincident included).
    """
    den = cross(d1, d2)
    if den == 0:
        return None
    s = Fraction(cross(p2 - p1, d2), den)
    return p1 + d1 * s
