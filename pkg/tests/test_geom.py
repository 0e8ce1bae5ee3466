from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcurve.geom import (
    GeometryError,
    IntVector,
    cross,
    dot,
    moment,
    primitive_decompose,
    primitive_direction,
    pseudo_angle,
    pt,
    vec,
)

ints = st.integers(min_value=-50, max_value=50)


def test_cross_examples():
    assert cross(vec(1, 0), vec(0, 1)) == 1
    assert cross(vec(2, 4), vec(1, 2)) == 0
    assert cross(vec(1, 2), vec(3, 4)) == -2


def test_dot_examples():
    assert dot(vec(1, 0), vec(0, 1)) == 0
    assert dot(vec(1, 1), vec(1, 1)) == 2
    assert dot(vec(2, -3), vec(4, 1)) == 5


@given(ints, ints, ints, ints)
def test_cross_antisymmetric(ux, uy, vx, vy):
    u, v = vec(ux, uy), vec(vx, vy)
    assert cross(u, v) == -cross(v, u)


def test_primitive_decompose_examples():
    assert primitive_decompose(vec(0, 3)) == (vec(0, 1), 3)
    assert primitive_decompose(vec(1, 1)) == (vec(1, 1), 1)
    assert primitive_decompose(vec(-6, 4)) == (vec(-3, 2), 2)
    with pytest.raises(GeometryError):
        primitive_decompose(vec(0, 0))


@given(ints, ints, st.integers(min_value=1, max_value=20))
def test_primitive_decompose_roundtrip(x, y, m):
    v = vec(x, y)
    if not v:
        return
    u, _ = primitive_decompose(v)
    assert primitive_decompose(u * m) == (u, m)


def test_primitive_direction_rational():
    u, m = primitive_direction(pt("3/2", "-3/4"))
    assert u == vec(2, -1)
    assert m == Fraction(3, 4)


def test_moment_examples():
    assert moment(vec(1, 0), pt(4, 5), pt(4, 5)) == 0
    assert moment(vec(0, 1), pt(1, 0), pt(0, 0)) == 1
    assert moment(vec(1, -1), pt(2, 3), pt(1, 1)) == -3


@given(ints, ints, ints, ints, ints, ints,
       st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_moment_invariant_along_direction(vx, vy, px, py, bx, by, t):
    v = vec(vx, vy)
    if not v:
        return
    p, base = pt(px, py), pt(bx, by)
    shifted = p + v.to_point() * t
    assert moment(v, shifted, base) == moment(v, p, base)


def _brute_angle_key(v: IntVector):
    # independent comparator: eight sectors by sign pattern, then cross
    x, y = v.x, v.y
    if x > 0 and y == 0:
        sector = 0
    elif x > 0 and y > 0:
        sector = 1
    elif x == 0 and y > 0:
        sector = 2
    elif x < 0 and y > 0:
        sector = 3
    elif x < 0 and y == 0:
        sector = 4
    elif x < 0 and y < 0:
        sector = 5
    elif x == 0 and y < 0:
        sector = 6
    else:
        sector = 7
    return sector


def _brute_less(u, v):
    su, sv = _brute_angle_key(u), _brute_angle_key(v)
    if su != sv:
        return su < sv
    return cross(u, v) > 0


@given(st.lists(st.tuples(ints, ints), min_size=2, max_size=8))
def test_pseudo_angle_matches_brute_force(pairs):
    vecs = [vec(x, y) for x, y in pairs if (x, y) != (0, 0)]
    # keep pairwise non-parallel vectors only
    kept = []
    for v in vecs:
        if all(cross(v, w) != 0 for w in kept):
            kept.append(v)
    a = sorted(kept, key=pseudo_angle)
    b = list(kept)
    # insertion sort with the brute comparator
    for i in range(1, len(b)):
        j = i
        while j > 0 and _brute_less(b[j], b[j - 1]):
            b[j], b[j - 1] = b[j - 1], b[j]
            j -= 1
    assert a == b


def test_pseudo_angle_equality_iff_positive_multiple():
    assert pseudo_angle(vec(2, 4)) == pseudo_angle(vec(1, 2))
    assert pseudo_angle(vec(-1, -2)) != pseudo_angle(vec(1, 2))
    assert pseudo_angle(vec(1, 0)) < pseudo_angle(vec(0, 1))
    assert pseudo_angle(vec(0, 1)) < pseudo_angle(vec(-1, 0))
    assert pseudo_angle(vec(-1, 0)) < pseudo_angle(vec(0, -1))
    assert pseudo_angle(vec(0, -1)) < pseudo_angle(vec(1, -1))
